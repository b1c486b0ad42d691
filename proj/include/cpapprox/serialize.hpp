#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cpapprox/bounds.hpp"
#include "cpapprox/models.hpp"
#include "cpapprox/pmf.hpp"

namespace cpapprox {

// Declarative model description, the JSON-facing counterpart of the
// WindowModel factories.
struct ModelSpec {
  std::string type;  // "kk_events" | "k_runs" | "cp2" | "custom"

  // kk_events / k_runs / cp2
  int k1 = 1, k2 = 1, k = 1;
  long long n = 0;
  double p = 0.0, pbar = 0.0;

  // custom: explicit alphabet and value table
  std::vector<double> alphabet_probs;
  int window_width = 1;
  std::vector<int> values;
  long long n_terms = 0;
  int block_size = 1;
  int c0 = 0;  // 0 = derive
};

ModelSpec model_spec_from_json(const nlohmann::json& j);
nlohmann::ordered_json model_spec_to_json(const ModelSpec& spec);

// Instantiates the model named by the spec (throws std::domain_error on an
// unknown type or invalid parameters).
WindowModel build_model(const ModelSpec& spec);

// Compound Poisson shape matching a model family: s = 1 for the event and
// runs statistics, s = 2 for the cp2 family; c0 from the model.
int default_s(const ModelSpec& spec);

nlohmann::ordered_json pmf_to_json(const Pmf& f);
nlohmann::ordered_json bound_report_to_json(const BoundReport& r);

// CSV cell with 17 significant digits (round-trip safe).
std::string fmt17(double x);

}  // namespace cpapprox
