#include "cpapprox/serialize.hpp"

#include <cstdio>
#include <stdexcept>

namespace cpapprox {

using nlohmann::json;
using nlohmann::ordered_json;

ModelSpec model_spec_from_json(const json& j) {
  ModelSpec spec;
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw std::domain_error("model spec: expected an object with a type");
  spec.type = j["type"].get<std::string>();

  if (spec.type == "kk_events") {
    spec.k1 = j.at("k1").get<int>();
    spec.k2 = j.at("k2").get<int>();
    spec.n = j.at("n").get<long long>();
    spec.p = j.at("p").get<double>();
  } else if (spec.type == "k_runs") {
    spec.k = j.at("k").get<int>();
    spec.n = j.at("n").get<long long>();
    spec.p = j.at("p").get<double>();
  } else if (spec.type == "cp2") {
    spec.n = j.at("n").get<long long>();
    spec.p = j.at("p").get<double>();
    spec.pbar = j.at("pbar").get<double>();
  } else if (spec.type == "custom") {
    spec.alphabet_probs = j.at("alphabet_probs").get<std::vector<double>>();
    spec.window_width = j.at("window_width").get<int>();
    spec.values = j.at("values").get<std::vector<int>>();
    spec.n_terms = j.at("n_terms").get<long long>();
    spec.block_size = j.at("block_size").get<int>();
    if (j.contains("c0")) spec.c0 = j["c0"].get<int>();
  } else {
    throw std::domain_error("model spec: unknown type '" + spec.type + "'");
  }
  return spec;
}

ordered_json model_spec_to_json(const ModelSpec& spec) {
  ordered_json j;
  j["type"] = spec.type;
  if (spec.type == "kk_events") {
    j["k1"] = spec.k1;
    j["k2"] = spec.k2;
    j["n"] = spec.n;
    j["p"] = spec.p;
  } else if (spec.type == "k_runs") {
    j["k"] = spec.k;
    j["n"] = spec.n;
    j["p"] = spec.p;
  } else if (spec.type == "cp2") {
    j["n"] = spec.n;
    j["p"] = spec.p;
    j["pbar"] = spec.pbar;
  } else if (spec.type == "custom") {
    j["alphabet_probs"] = spec.alphabet_probs;
    j["window_width"] = spec.window_width;
    j["values"] = spec.values;
    j["n_terms"] = spec.n_terms;
    j["block_size"] = spec.block_size;
    if (spec.c0 > 0) j["c0"] = spec.c0;
  } else {
    throw std::domain_error("model spec: unknown type '" + spec.type + "'");
  }
  return j;
}

WindowModel build_model(const ModelSpec& spec) {
  if (spec.type == "kk_events")
    return make_kk_events(spec.k1, spec.k2, spec.n, spec.p);
  if (spec.type == "k_runs") return make_k_runs(spec.k, spec.n, spec.p);
  if (spec.type == "cp2") return make_cp2_model(spec.n, spec.p, spec.pbar);
  if (spec.type == "custom")
    return make_window_model(spec.alphabet_probs, spec.window_width,
                             spec.values, spec.n_terms, spec.block_size,
                             spec.c0);
  throw std::domain_error("model spec: unknown type '" + spec.type + "'");
}

int default_s(const ModelSpec& spec) { return spec.type == "cp2" ? 2 : 1; }

ordered_json pmf_to_json(const Pmf& f) {
  ordered_json j;
  j["probs"] = f.probs;
  j["trunc_defect"] = f.trunc_defect;
  return j;
}

ordered_json bound_report_to_json(const BoundReport& r) {
  ordered_json j;
  j["a"] = r.a;
  j["psi"] = r.psi;
  j["k1"] = r.k1;
  j["k2"] = r.k2;
  j["k3"] = r.k3;
  j["k4"] = r.k4;
  j["term_moment_match"] = r.term_moment_match;
  j["term_nu_s1"] = r.term_nu_s1;
  j["term_nu1_sq"] = r.term_nu1_sq;
  j["term_cov"] = r.term_cov;
  j["total"] = r.total;
  j["precondition_ok"] = r.precondition_ok;
  j["gamma1"] = r.gamma1;
  return j;
}

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace cpapprox
