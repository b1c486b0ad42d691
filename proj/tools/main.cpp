#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cpapprox/bounds.hpp"
#include "cpapprox/calibration.hpp"
#include "cpapprox/heinrich.hpp"
#include "cpapprox/metrics.hpp"
#include "cpapprox/models.hpp"
#include "cpapprox/moments.hpp"
#include "cpapprox/pmf.hpp"
#include "cpapprox/serialize.hpp"

namespace {

using cpapprox::BoundReport;
using cpapprox::CpParams;
using cpapprox::ModelSpec;
using cpapprox::MomentSummary;
using cpapprox::Pmf;
using cpapprox::WindowModel;
using nlohmann::json;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

struct Options {
  std::string command;
  ModelSpec model;
  int s = -1;  // -1 = family default
  std::vector<double> lambdas;
  double h = 0.0;
  int c0 = -1;  // -1 = from the model
  std::vector<long long> grid;
  std::string calibration;  // fixed-lambda | fixed-p
  std::string format = "json";
  std::uint64_t seed = 1;
  long long reps = 100000;
  int panels = 4096;
  int count = 100;
  int max_len = 30;
  std::vector<double> t_grid;
  double tail_tol = cpapprox::kDefaultTailTol;
  std::string target_file;
};

std::vector<long long> parse_grid(const std::string& text) {
  std::vector<long long> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(std::stoll(item));
  return grid;
}

std::vector<double> parse_doubles(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

void load_config(const std::string& path, Options& opt) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("config: malformed JSON: ") +
                            e.what());
  }
  if (j.contains("command")) opt.command = j["command"].get<std::string>();
  if (j.contains("model")) opt.model = cpapprox::model_spec_from_json(j["model"]);
  if (j.contains("cp")) {
    const json& cp = j["cp"];
    if (cp.contains("s")) opt.s = cp["s"].get<int>();
    if (cp.contains("lambdas"))
      opt.lambdas = cp["lambdas"].get<std::vector<double>>();
    if (cp.contains("h")) opt.h = cp["h"].get<double>();
    if (cp.contains("c0")) opt.c0 = cp["c0"].get<int>();
  }
  if (j.contains("grid")) opt.grid = j["grid"].get<std::vector<long long>>();
  if (j.contains("calibration"))
    opt.calibration = j["calibration"].get<std::string>();
  if (j.contains("format")) opt.format = j["format"].get<std::string>();
  if (j.contains("seed")) opt.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("reps")) opt.reps = j["reps"].get<long long>();
  if (j.contains("panels")) opt.panels = j["panels"].get<int>();
  if (j.contains("count")) opt.count = j["count"].get<int>();
  if (j.contains("max_len")) opt.max_len = j["max_len"].get<int>();
  if (j.contains("t_grid"))
    opt.t_grid = j["t_grid"].get<std::vector<double>>();
  if (j.contains("tail_tol")) opt.tail_tol = j["tail_tol"].get<double>();
  if (j.contains("target_file"))
    opt.target_file = j["target_file"].get<std::string>();
}

int thread_cap() {
  if (const char* env = std::getenv("CPAPPROX_THREADS")) {
    const int t = std::atoi(env);
    if (t >= 1) return t;
  }
  return 1;
}

// Moment-matched compound Poisson rates when the caller gave none:
// s = 1 matches Gamma1; s = 2 matches Gamma1 and the second-order aggregate.
std::vector<double> matched_lambdas(const MomentSummary& sum, int s) {
  if (s == 1) return {sum.gamma1};
  if (s == 2) {
    const double l2 = std::max(0.0, 0.5 * sum.nu_sum(2));
    return {std::max(0.0, sum.gamma1 - 2.0 * l2), l2};
  }
  throw std::domain_error(
      "cp rates: pass --lambdas explicitly for s > 2 targets");
}

CpParams finish_params(const Options& opt, const WindowModel& model,
                       const MomentSummary& sum, int s) {
  CpParams params;
  params.s = s;
  params.lambdas =
      opt.lambdas.empty() ? matched_lambdas(sum, params.s) : opt.lambdas;
  params.h = opt.h;
  params.c0 = opt.c0 >= 0 ? opt.c0 : model.c0;
  params.validate();
  return params;
}

ModelSpec spec_for_n(const Options& opt, long long n) {
  ModelSpec spec = opt.model;
  const bool fixed_lambda =
      opt.calibration.empty() ? !opt.lambdas.empty()
                              : opt.calibration == "fixed-lambda";
  if (spec.type == "custom") {
    if (fixed_lambda)
      throw std::domain_error(
          "converge: fixed-lambda calibration is not defined for custom "
          "models");
    spec.n_terms = n;
    return spec;
  }
  spec.n = n;
  if (!fixed_lambda) return spec;

  if (opt.lambdas.empty())
    throw std::domain_error("converge: fixed-lambda requires --lambda(s)");
  if (spec.type == "kk_events") {
    spec.p = cpapprox::calibrate_kk_events(spec.k1, spec.k2, n,
                                           opt.lambdas.at(0));
  } else if (spec.type == "k_runs") {
    spec.p = cpapprox::calibrate_k_runs(spec.k, n, opt.lambdas.at(0));
  } else if (spec.type == "cp2") {
    if (opt.lambdas.size() != 2)
      throw std::domain_error("converge: cp2 calibration needs two lambdas");
    const auto cal = cpapprox::calibrate_cp2(n, opt.lambdas[0], opt.lambdas[1]);
    spec.p = cal.p;
    spec.pbar = cal.pbar;
  }
  return spec;
}

struct ConvergeRow {
  long long n = 0;
  double p = 0.0, pbar = 0.0;
  bool has_pbar = false;
  MomentSummary summary;
  BoundReport bound;
  double dist_wtv = 0.0, dist_wass = 0.0;
  std::vector<double> cond4;
  double cond5 = 0.0, cond6 = 0.0;
};

ConvergeRow converge_point(const Options& opt, long long n) {
  ConvergeRow row;
  row.n = n;
  const ModelSpec spec = spec_for_n(opt, n);
  row.p = spec.type == "custom" ? 0.0 : spec.p;
  row.pbar = spec.pbar;
  row.has_pbar = spec.type == "cp2";

  const WindowModel model = cpapprox::build_model(spec);
  const int s = opt.s >= 0 ? opt.s : cpapprox::default_s(spec);
  row.summary = cpapprox::summarize(model, s);
  const CpParams pre_params = finish_params(opt, model, row.summary, s);
  row.bound = cpapprox::theorem2_bound(row.summary, pre_params);

  const Pmf exact = cpapprox::exact_sum_law(model);
  const Pmf target = cpapprox::compound_poisson_pmf(pre_params, opt.tail_tol);
  row.dist_wtv = cpapprox::total_variation_norm(
      cpapprox::weighted_difference(exact, target, pre_params.h));
  row.dist_wass = cpapprox::wasserstein_norm(
      cpapprox::difference(exact, target), pre_params.h);

  row.cond4.resize(std::size_t(pre_params.s));
  double factorial = 1.0;
  for (int m = 1; m <= pre_params.s; ++m) {
    factorial *= double(m);
    row.cond4[std::size_t(m - 1)] =
        std::abs(row.summary.nu_sum(m) / factorial -
                 cpapprox::condition_target(pre_params, m));
  }
  row.cond5 = row.summary.nu_sum(pre_params.s + 1);
  row.cond6 = row.summary.cov_abs_sum();
  return row;
}

ordered_json row_to_json(const ConvergeRow& row) {
  ordered_json j;
  j["n"] = row.n;
  j["p"] = row.p;
  if (row.has_pbar) j["pbar"] = row.pbar;
  j["gamma1"] = row.summary.gamma1;
  j["gamma2"] = row.summary.gamma2;
  j["nu1_max"] = row.summary.nu1_max;
  j["dist_wtv"] = row.dist_wtv;
  j["dist_wass"] = row.dist_wass;
  j["bound_total"] = row.bound.total;
  j["term_moment_match"] = row.bound.term_moment_match;
  j["term_nu_s1"] = row.bound.term_nu_s1;
  j["term_nu1_sq"] = row.bound.term_nu1_sq;
  j["term_cov"] = row.bound.term_cov;
  j["precondition_ok"] = row.bound.precondition_ok;
  j["cond3"] = row.summary.nu1_max;
  j["cond4"] = row.cond4;
  j["cond5"] = row.cond5;
  j["cond6"] = row.cond6;
  return j;
}

int run_converge(const Options& opt) {
  if (opt.grid.empty()) throw std::domain_error("converge: empty grid");
  for (std::size_t i = 1; i < opt.grid.size(); ++i)
    if (opt.grid[i] <= opt.grid[i - 1])
      throw std::domain_error("converge: grid must be strictly increasing");

  std::vector<ConvergeRow> rows(opt.grid.size());
  const int threads =
      std::min<int>(thread_cap(), int(opt.grid.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < opt.grid.size(); ++i)
      rows[i] = converge_point(opt, opt.grid[i]);
  } else {
    std::vector<std::future<ConvergeRow>> futures(opt.grid.size());
    std::size_t next = 0;
    while (next < opt.grid.size()) {
      const std::size_t batch =
          std::min<std::size_t>(std::size_t(threads), opt.grid.size() - next);
      for (std::size_t i = 0; i < batch; ++i) {
        const long long n = opt.grid[next + i];
        futures[next + i] = std::async(std::launch::async,
                                       [&opt, n] { return converge_point(opt, n); });
      }
      for (std::size_t i = 0; i < batch; ++i)
        rows[next + i] = futures[next + i].get();
      next += batch;
    }
  }

  if (opt.format == "csv") {
    int s = 0;
    for (const auto& row : rows) s = std::max(s, int(row.cond4.size()));
    std::string header =
        "n,p,gamma1,gamma2,nu1_max,dist_wtv,dist_wass,bound_total,"
        "term_moment_match,term_nu_s1,term_nu1_sq,term_cov,precondition_ok,"
        "cond3";
    for (int m = 1; m <= s; ++m) header += ",cond4_m" + std::to_string(m);
    header += ",cond5,cond6";
    std::cout << header << "\n";
    for (const auto& row : rows) {
      using cpapprox::fmt17;
      std::cout << row.n << ',' << fmt17(row.p) << ','
                << fmt17(row.summary.gamma1) << ','
                << fmt17(row.summary.gamma2) << ','
                << fmt17(row.summary.nu1_max) << ',' << fmt17(row.dist_wtv)
                << ',' << fmt17(row.dist_wass) << ','
                << fmt17(row.bound.total) << ','
                << fmt17(row.bound.term_moment_match) << ','
                << fmt17(row.bound.term_nu_s1) << ','
                << fmt17(row.bound.term_nu1_sq) << ','
                << fmt17(row.bound.term_cov) << ','
                << (row.bound.precondition_ok ? 1 : 0) << ','
                << fmt17(row.summary.nu1_max);
      for (std::size_t m = 0; m < std::size_t(s); ++m)
        std::cout << ','
                  << (m < row.cond4.size() ? cpapprox::fmt17(row.cond4[m])
                                           : std::string());
      std::cout << ',' << fmt17(row.cond5) << ',' << fmt17(row.cond6) << "\n";
    }
    return kExitOk;
  }

  ordered_json out;
  out["command"] = "converge";
  out["model"] = cpapprox::model_spec_to_json(opt.model);
  out["h"] = opt.h;
  if (!opt.lambdas.empty()) out["lambdas"] = opt.lambdas;
  out["calibration"] = opt.calibration.empty()
                           ? (opt.lambdas.empty() ? "fixed-p" : "fixed-lambda")
                           : opt.calibration;
  out["rows"] = ordered_json::array();
  for (const auto& row : rows) out["rows"].push_back(row_to_json(row));
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_pmf(const Options& opt) {
  const WindowModel model = cpapprox::build_model(opt.model);
  const Pmf law = cpapprox::exact_sum_law(model);
  if (opt.format == "csv") {
    std::cout << "k,prob\n";
    for (std::size_t k = 0; k < law.probs.size(); ++k)
      std::cout << k << ',' << cpapprox::fmt17(law.probs[k]) << "\n";
    return kExitOk;
  }
  std::cout << cpapprox::pmf_to_json(law).dump(2) << "\n";
  return kExitOk;
}

Pmf load_target_pmf(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("target: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::domain_error(std::string("target: malformed JSON: ") +
                            e.what());
  }
  Pmf f;
  f.probs = j.at("probs").get<std::vector<double>>();
  if (j.contains("trunc_defect")) f.trunc_defect = j["trunc_defect"].get<double>();
  return f;
}

int run_distance(const Options& opt) {
  const WindowModel model = cpapprox::build_model(opt.model);
  const int s = opt.s >= 0 ? opt.s : cpapprox::default_s(opt.model);
  const MomentSummary sum = cpapprox::summarize(model, s);
  const CpParams params = finish_params(opt, model, sum, s);
  const Pmf exact = cpapprox::exact_sum_law(model);
  const Pmf target = opt.target_file.empty()
                         ? cpapprox::compound_poisson_pmf(params, opt.tail_tol)
                         : load_target_pmf(opt.target_file);

  ordered_json out;
  out["command"] = "distance";
  out["h"] = params.h;
  out["dist_wtv"] = cpapprox::total_variation_norm(
      cpapprox::weighted_difference(exact, target, params.h));
  out["dist_wass"] = cpapprox::wasserstein_norm(
      cpapprox::difference(exact, target), params.h);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_bound(const Options& opt) {
  const WindowModel model = cpapprox::build_model(opt.model);
  const int s = opt.s >= 0 ? opt.s : cpapprox::default_s(opt.model);
  const MomentSummary sum = cpapprox::summarize(model, s);
  const CpParams params = finish_params(opt, model, sum, s);
  const BoundReport report = (params.s == 1 || params.s == 2)
                                 ? cpapprox::corollary_bound(sum, params)
                                 : cpapprox::theorem2_bound(sum, params);

  ordered_json out = cpapprox::bound_report_to_json(report);
  out["h"] = params.h;
  out["s"] = params.s;
  out["lambdas"] = params.lambdas;
  if (params.s == 2) {
    // corollary form states the second term as |sum nu_2 - 2 lambda_2|,
    // twice the theorem's m = 2 mismatch
    out["corollary_nu2_mismatch"] =
        std::abs(sum.nu_sum(2) - 2.0 * params.lambdas[1]);
  }
  if (params.h > 0.0)
    out["wasserstein_bound"] = cpapprox::wasserstein_bound(report, params.h);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_simulate(const Options& opt) {
  const WindowModel model = cpapprox::build_model(opt.model);
  const Pmf emp = cpapprox::sample_sum(model, opt.seed, opt.reps);
  const Pmf exact = cpapprox::exact_sum_law(model);

  ordered_json out;
  out["command"] = "simulate";
  out["algorithm"] = cpapprox::kSamplerAlgorithm;
  out["seed"] = opt.seed;
  out["reps"] = opt.reps;
  out["probs"] = emp.probs;
  out["tv_to_exact"] = 0.5 * cpapprox::total_variation_norm(
                                 cpapprox::weighted_difference(emp, exact, 0.0));
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_heinrich(const Options& opt) {
  const WindowModel model = cpapprox::build_model(opt.model);
  const int blocks = int(model.num_blocks());
  const cpapprox::JointLaw law = cpapprox::joint_law(model, blocks);
  const Pmf exact = cpapprox::exact_sum_law(model);
  const int s = opt.s >= 0 ? opt.s : cpapprox::default_s(opt.model);
  const MomentSummary sum = cpapprox::summarize(model, s);
  const CpParams params = finish_params(opt, model, sum, s);

  const double a = std::exp(params.h * params.c0) * (2.0 + params.h) *
                   std::sqrt(double(params.c0));
  const bool precondition_ok = a * a * sum.nu1_max <= 0.01;

  std::vector<double> ts = opt.t_grid;
  if (ts.empty()) ts = {-3.141592653589793, -1.5707963267948966, 0.0,
                        1.5707963267948966, 3.141592653589793};

  ordered_json out;
  out["command"] = "heinrich-check";
  out["h"] = params.h;
  out["n_blocks"] = blocks;
  out["precondition_ok"] = precondition_ok;
  out["points"] = ordered_json::array();
  bool all_hold = precondition_ok;
  for (double t : ts) {
    const cpapprox::EvalPoint point(t, params.h);
    const cpapprox::RegionReport region = cpapprox::region_check(model, point);
    ordered_json row;
    row["t"] = t;
    row["w"] = region.w;
    row["in_region"] = region.in_region;
    if (region.in_region) {
      const auto phis = cpapprox::phi_sequence(law, point);
      std::complex<double> prod(1.0, 0.0);
      for (const auto& phi : phis) prod *= phi;
      std::complex<double> direct(0.0, 0.0);
      for (std::size_t k = 0; k < exact.probs.size(); ++k)
        direct += exact.probs[k] *
                  std::exp(point.u() * double(k));
      row["product_rel_err"] = std::abs(prod - direct) / std::abs(direct);
      if (precondition_ok) {
        const cpapprox::LemmaReport rep =
            cpapprox::lemma_checks(model, point, params);
        row["lemmas_hold"] = rep.all_hold;
        all_hold = all_hold && rep.all_hold;
      }
    } else {
      all_hold = false;
    }
    out["points"].push_back(row);
  }
  out["all_hold"] = all_hold;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_presman(const Options& opt) {
  if (opt.count < 1) throw std::domain_error("presman-check: count must be >= 1");
  if (opt.max_len < 1)
    throw std::domain_error("presman-check: max_len must be >= 1");

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, opt.max_len);

  ordered_json rows = ordered_json::array();
  double max_violation = -1e300;
  double doubling_delta = 0.0;
  bool all_hold = true;
  for (int trial = 0; trial < opt.count; ++trial) {
    cpapprox::SignedMeasure m;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) m.values.push_back(u(rng));
    const auto rep = cpapprox::presman_bound(m, opt.panels);
    const auto rep2 = cpapprox::presman_bound(m, 2 * opt.panels);
    max_violation = std::max(max_violation, rep.lhs - rep.rhs);
    doubling_delta = std::max(doubling_delta, std::abs(rep.rhs - rep2.rhs));
    all_hold = all_hold && rep.lhs <= rep.rhs + 1e-8;
    ordered_json row;
    row["lhs"] = rep.lhs;
    row["rhs"] = rep.rhs;
    rows.push_back(row);
  }

  ordered_json out;
  out["command"] = "presman-check";
  out["algorithm"] = cpapprox::kSamplerAlgorithm;
  out["seed"] = opt.seed;
  out["panels"] = opt.panels;
  out["count"] = opt.count;
  out["max_violation"] = max_violation;
  out["doubling_max_delta"] = doubling_delta;
  out["all_hold"] = all_hold;
  out["rows"] = rows;
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int dispatch(const Options& opt) {
  if (opt.command == "pmf") return run_pmf(opt);
  if (opt.command == "distance") return run_distance(opt);
  if (opt.command == "bound") return run_bound(opt);
  if (opt.command == "converge") return run_converge(opt);
  if (opt.command == "heinrich-check") return run_heinrich(opt);
  if (opt.command == "presman-check") return run_presman(opt);
  if (opt.command == "simulate") return run_simulate(opt);
  throw std::domain_error("unknown command '" + opt.command + "'");
}

void add_model_options(CLI::App* sub, Options& opt, std::string& model_json) {
  sub->add_option("--model", opt.model.type,
                  "model family: kk_events | k_runs | cp2 | custom");
  sub->add_option("--k1", opt.model.k1, "failure run length (kk_events)");
  sub->add_option("--k2", opt.model.k2, "success run length (kk_events)");
  sub->add_option("--k", opt.model.k, "run length (k_runs)");
  sub->add_option("--n", opt.model.n, "number of trials / terms");
  sub->add_option("--p", opt.model.p, "driver success probability");
  sub->add_option("--pbar", opt.model.pbar, "second Bernoulli rate (cp2)");
  sub->add_option("--model-json", model_json,
                  "full model spec as inline JSON (custom models)");
}

void add_cp_options(CLI::App* sub, Options& opt, std::string& lambdas_text) {
  sub->add_option("--s", opt.s, "compound Poisson order");
  sub->add_option("--lambda,--lambdas", lambdas_text,
                  "target rate(s), comma separated");
  sub->add_option("--h", opt.h, "exponential weight exponent");
  sub->add_option("--c0", opt.c0, "uniform block value bound");
  sub->add_option("--tail-tol", opt.tail_tol,
                  "weighted tail tolerance for pmf truncation");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "compound Poisson approximation toolkit: exact laws of 1-dependent "
      "window statistics, weighted distances, and explicit error bounds"};
  app.require_subcommand(0, 1);
  app.set_help_flag("--help", "print help");  // leave --h for the weight

  Options opt;
  std::string config_path, model_json, lambdas_text, grid_text, t_text;

  app.add_option("--config", config_path,
                 "JSON run configuration (overrides other flags)");

  auto* pmf = app.add_subcommand("pmf", "exact law of the window sum");
  auto* distance =
      app.add_subcommand("distance", "weighted distances to a target law");
  auto* bound =
      app.add_subcommand("bound", "explicit error bound report");
  auto* converge = app.add_subcommand(
      "converge", "distance/bound/diagnostic rows over a grid of n");
  auto* heinrich = app.add_subcommand(
      "heinrich-check", "product representation and lemma verification");
  auto* presman = app.add_subcommand(
      "presman-check", "inversion inequality on random signed measures");
  auto* simulate =
      app.add_subcommand("simulate", "seeded Monte Carlo of the window sum");

  for (CLI::App* sub :
       {pmf, distance, bound, converge, heinrich, presman, simulate})
    sub->set_help_flag("--help", "print help");
  for (CLI::App* sub :
       {pmf, distance, bound, converge, heinrich, simulate}) {
    add_model_options(sub, opt, model_json);
    sub->add_option("--format", opt.format, "json | csv");
  }
  for (CLI::App* sub : {distance, bound, converge, heinrich})
    add_cp_options(sub, opt, lambdas_text);

  converge->add_option("--grid", grid_text, "comma separated n values");
  converge->add_option("--calibration", opt.calibration,
                       "fixed-lambda | fixed-p");
  distance->add_option("--target-file", opt.target_file,
                       "JSON pmf to compare against instead of CP(s,lambda)");
  heinrich->add_option("--t", t_text, "comma separated t values in [-pi, pi]");
  simulate->add_option("--seed", opt.seed, "PRNG seed");
  simulate->add_option("--reps", opt.reps, "sample count");
  presman->add_option("--seed", opt.seed, "PRNG seed");
  presman->add_option("--count", opt.count, "number of random measures");
  presman->add_option("--max-len", opt.max_len, "maximum support length");
  presman->add_option("--panels", opt.panels, "Simpson panels (even)");
  presman->add_option("--format", opt.format, "json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!model_json.empty()) {
      try {
        opt.model = cpapprox::model_spec_from_json(json::parse(model_json));
      } catch (const json::exception& e) {
        throw std::domain_error(std::string("model: malformed JSON: ") +
                                e.what());
      }
    }
    if (!lambdas_text.empty()) opt.lambdas = parse_doubles(lambdas_text);
    if (!grid_text.empty()) opt.grid = parse_grid(grid_text);
    if (!t_text.empty()) opt.t_grid = parse_doubles(t_text);

    for (CLI::App* sub :
         {pmf, distance, bound, converge, heinrich, presman, simulate}) {
      if (sub->parsed()) opt.command = sub->get_name();
    }
    if (!config_path.empty()) load_config(config_path, opt);
    if (opt.command.empty())
      throw std::domain_error("no command given (subcommand or --config)");
    return dispatch(opt);
  } catch (const cpapprox::resource_error& e) {
    std::cerr << "resource error: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
}
