// Acceptance suite: one pass/fail line per criterion, exit code 0 only if
// every criterion passes. argv[1] names the CLI binary (used by the
// determinism criterion).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cpapprox/bounds.hpp"
#include "cpapprox/calibration.hpp"
#include "cpapprox/heinrich.hpp"
#include "cpapprox/metrics.hpp"
#include "cpapprox/models.hpp"
#include "cpapprox/moments.hpp"
#include "cpapprox/pmf.hpp"
#include "test_support.hpp"

using namespace cpapprox;
using cpapprox::testing::random_model;
using cpapprox::testing::RandomModelOptions;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s — %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++failures;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// criterion 1: CP(2, 0.5, 0.3) vs the brute-force double series, < 1 ms

void criterion_1() {
  CpParams params;
  params.s = 2;
  params.lambdas = {0.5, 0.3};

  double best_ms = 1e300;
  Pmf f;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = std::chrono::steady_clock::now();
    f = compound_poisson_pmf(params, 1e-12);
    best_ms = std::min(best_ms, elapsed_ms(start));
  }

  // sum over j + 2m = k of e^{-0.8} 0.5^j 0.3^m / (j! m!)
  double worst = 0.0;
  for (int k = 0; k <= 10; ++k) {
    long double sum = 0.0L;
    long double mfact = 1.0L;
    for (int m = 0; 2 * m <= k; ++m) {
      if (m > 0) mfact *= m;
      const int j = k - 2 * m;
      long double jfact = 1.0L;
      for (int i = 2; i <= j; ++i) jfact *= i;
      sum += std::exp(-0.8L) * std::pow(0.5L, j) * std::pow(0.3L, m) /
             (jfact * mfact);
    }
    worst = std::max(worst, std::abs(f.at(std::size_t(k)) - double(sum)));
  }

  report(1, worst <= 1e-12 && best_ms < 1.0,
         "max |cp - series| = " + fmt(worst) + ", build " + fmt(best_ms) +
             " ms");
}

// ---------------------------------------------------------------------------
// criterion 2: exact law == brute force on 50 random models, < 30 s

void criterion_2() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240809);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const WindowModel model = random_model(rng);
    const Pmf fast = exact_sum_law(model);
    const Pmf slow = brute_force_law(model);
    worst = std::max(worst, cpapprox::testing::max_abs_diff(fast, slow));
  }
  const double ms = elapsed_ms(start);
  report(2, worst <= 1e-12 && ms < 30000.0,
         "max entrywise gap = " + fmt(worst) + " over 50 models, " +
             fmt(ms / 1000.0) + " s");
}

// ---------------------------------------------------------------------------
// criterion 3: closed forms of the (k1,k2)-event example

void criterion_3() {
  double worst = 0.0;
  for (const auto& [k1, k2] :
       std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    for (double p : {0.02, 0.05}) {
      for (long long n : {50, 200}) {
        const int m = k1 + k2;
        const double a = std::pow(1.0 - p, k1) * std::pow(p, k2);
        const WindowModel model = make_kk_events(k1, k2, n, p);
        const MomentSummary sum = summarize(model, 1);
        const long long blocks = model.num_blocks();

        // nu_1(j) = m a(p) on full blocks, (delta m) a(p) on the short one
        for (long long j = 1; j <= blocks; ++j) {
          const double expected = double(model.block_len(j)) * a;
          worst = std::max(worst,
                           std::abs(sum.nu[std::size_t(j - 1)][0] - expected));
        }
        // interior adjacent covariance (pair (1,2) is always full here)
        worst = std::max(worst, std::abs(sum.cov_adjacent[0] +
                                         m * (m - 1) * a * a / 2.0));
        // E(X_1 X_2) = a^2 m (m+1) / 2
        const JointPair joint = block_pair_joint(model, 2);
        double exy = 0.0;
        for (std::size_t x = 0; x < joint.p.size(); ++x)
          for (std::size_t y = 0; y < joint.p[x].size(); ++y)
            exy += double(x * y) * joint.p[x][y];
        worst = std::max(worst, std::abs(exy - a * a * m * (m + 1) / 2.0));
        worst = std::max(worst, std::abs(sum.gamma1 - double(n - m + 1) * a));
      }
    }
  }
  report(3, worst <= 1e-12, "max closed-form gap = " + fmt(worst));
}

// ---------------------------------------------------------------------------
// criteria 4 and 8 share a grid of (exact law, target) pairs

struct GridPoint {
  std::string name;
  Pmf exact;
  MomentSummary summary;
  int s = 1;
  std::vector<double> lambdas;
  int c0 = 1;
};

std::vector<GridPoint> build_grid() {
  std::vector<GridPoint> grid;

  auto add = [&grid](std::string name, const WindowModel& model, int s,
                     std::vector<double> lambdas) {
    GridPoint pt;
    pt.name = std::move(name);
    pt.exact = exact_sum_law(model);
    pt.summary = summarize(model, s);
    pt.s = s;
    pt.lambdas = std::move(lambdas);
    pt.c0 = model.c0;
    grid.push_back(std::move(pt));
  };

  // example 1 family: fixed p (moment-matched target) and calibrated
  for (const auto& [k1, k2] :
       std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}}) {
    for (double p : {0.02, 0.05}) {
      for (long long n : {50, 200}) {
        const WindowModel model = make_kk_events(k1, k2, n, p);
        const MomentSummary sum = summarize(model, 1);
        add("kk(" + std::to_string(k1) + "," + std::to_string(k2) +
                ") p=" + fmt(p) + " n=" + std::to_string(n),
            model, 1, {sum.gamma1});
      }
    }
  }
  for (long long n : {100, 400, 1600, 6400}) {
    const double p = calibrate_kk_events(1, 1, n, 2.0);
    add("kk(1,1) lam=2 n=" + std::to_string(n), make_kk_events(1, 1, n, p), 1,
        {2.0});
  }

  // example 2 family
  for (double p : {0.02, 0.05}) {
    for (long long n : {50, 200}) {
      const WindowModel model = make_k_runs(2, n, p);
      const MomentSummary sum = summarize(model, 1);
      add("runs(2) p=" + fmt(p) + " n=" + std::to_string(n), model, 1,
          {sum.gamma1});
    }
  }
  for (long long n : {100, 400, 1600, 6400}) {
    const double p = calibrate_k_runs(2, n, 1.0);
    add("runs(2) lam=1 n=" + std::to_string(n), make_k_runs(2, n, p), 1,
        {1.0});
  }

  // example 3 family
  for (long long n : {100, 400, 1600, 6400}) {
    const auto cal = calibrate_cp2(n, 1.0, 0.5);
    add("cp2 n=" + std::to_string(n), make_cp2_model(n, cal.p, cal.pbar), 2,
        {1.0, 0.5});
  }
  return grid;
}

void criterion_4(const std::vector<GridPoint>& grid) {
  int checked = 0, skipped = 0;
  double worst_slack = -1e300;
  bool ok = true;
  for (const GridPoint& pt : grid) {
    for (double h : {0.0, 0.25}) {
      CpParams params;
      params.s = pt.s;
      params.lambdas = pt.lambdas;
      params.h = h;
      params.c0 = pt.c0;
      const BoundReport r = theorem2_bound(pt.summary, params);
      if (!r.precondition_ok) {
        ++skipped;
        continue;
      }
      const Pmf target = compound_poisson_pmf(params, 1e-12);
      const double dist =
          total_variation_norm(weighted_difference(pt.exact, target, h));
      worst_slack = std::max(worst_slack, dist - r.total);
      ok = ok && dist <= r.total + 1e-9;
      ++checked;
    }
  }
  ok = ok && checked > 0;
  report(4, ok,
         "domination on " + std::to_string(checked) + " points (" +
             std::to_string(skipped) +
             " below precondition skipped), max dist - bound = " +
             fmt(worst_slack));
}

void criterion_8(const std::vector<GridPoint>& grid) {
  bool ok = true;
  int checked = 0;
  for (const GridPoint& pt : grid) {
    for (double h : {0.25, 0.5, 1.0}) {
      CpParams params;
      params.s = pt.s;
      params.lambdas = pt.lambdas;
      params.h = h;
      params.c0 = pt.c0;
      const Pmf target = compound_poisson_pmf(params, 1e-12);
      const WassersteinCheck check =
          check_wasserstein_inequality(pt.exact, target, h);
      ok = ok && check.holds;
      ++checked;
    }
  }
  report(8, ok,
         "weighted Wasserstein <= weighted TV / (e^h - 1) on " +
             std::to_string(checked) + " pairs");
}

// ---------------------------------------------------------------------------
// criterion 5: calibrated convergence runs

void criterion_5() {
  struct Run {
    std::string name;
    std::vector<double> dists;
    double seconds = 0.0;
    bool needs_rate = false;
  };
  std::vector<Run> runs;
  const double h = 0.25;

  auto push_run = [&runs, h](std::string name, bool needs_rate,
                             auto make_model, int s,
                             std::vector<double> lambdas, int c0) {
    Run run{std::move(name), {}, 0.0, needs_rate};
    const auto start = std::chrono::steady_clock::now();
    for (long long n : {100, 400, 1600}) {
      const WindowModel model = make_model(n);
      CpParams params;
      params.s = s;
      params.lambdas = lambdas;
      params.h = h;
      params.c0 = c0;
      run.dists.push_back(total_variation_norm(weighted_difference(
          exact_sum_law(model), compound_poisson_pmf(params, 1e-12), h)));
    }
    run.seconds = elapsed_ms(start) / 1000.0;
    runs.push_back(std::move(run));
  };

  push_run(
      "kk(1,1) lam=2", true,
      [](long long n) {
        return make_kk_events(1, 1, n, calibrate_kk_events(1, 1, n, 2.0));
      },
      1, {2.0}, 1);
  push_run(
      "runs(2) lam=1", true,
      [](long long n) {
        return make_k_runs(2, n, calibrate_k_runs(2, n, 1.0));
      },
      1, {1.0}, 2);
  push_run(
      "cp2 lam=(1,0.5)", false,
      [](long long n) {
        const auto cal = calibrate_cp2(n, 1.0, 0.5);
        return make_cp2_model(n, cal.p, cal.pbar);
      },
      2, {1.0, 0.5}, 2);

  bool ok = true;
  std::string detail;
  for (const Run& run : runs) {
    const bool decreasing =
        run.dists[1] < run.dists[0] && run.dists[2] < run.dists[1];
    const bool rate = !run.needs_rate || run.dists[2] <= run.dists[0] / 8.0;
    const bool timed = run.seconds < 60.0;
    ok = ok && decreasing && rate && timed;
    detail += run.name + " dists=(" + fmt(run.dists[0]) + ", " +
              fmt(run.dists[1]) + ", " + fmt(run.dists[2]) + ")" +
              (run.needs_rate
                   ? " ratio=" + fmt(run.dists[2] / run.dists[0])
                   : std::string()) +
              (decreasing && rate && timed ? "" : " [violated]") + "; ";
  }
  report(5, ok, detail);
}

// ---------------------------------------------------------------------------
// criterion 6: product identity and lemma bounds on random small models

void criterion_6() {
  std::mt19937_64 rng(606);
  RandomModelOptions opt;
  opt.max_value = 1;
  opt.max_block = 2;
  opt.max_terms = 10;
  opt.max_driver = 12;
  opt.rare_symbol_prob = 1e-5;

  const double ts[] = {-3.141592653589793, -1.5707963267948966, -0.6, 1.1,
                       3.141592653589793};
  const double hs[] = {0.0, 0.1, 0.25};

  double worst_rel = 0.0;
  bool lemmas_ok = true;
  bool coverage_ok = true;
  for (int trial = 0; trial < 20; ++trial) {
    WindowModel model = random_model(rng, opt);
    while (model.num_blocks() > 10) model = random_model(rng, opt);
    const JointLaw law = joint_law(model, int(model.num_blocks()));
    const Pmf exact = exact_sum_law(model);

    for (double t : ts) {
      for (double h : hs) {
        const EvalPoint point(t, h);
        if (!region_check(model, point).in_region) {
          coverage_ok = false;  // the rare-event grid must stay inside
          continue;
        }
        const auto phis = phi_sequence(law, point);
        std::complex<double> prod(1.0, 0.0);
        for (const auto& phi : phis) prod *= phi;
        std::complex<double> direct(0.0, 0.0);
        for (std::size_t k = 0; k < exact.probs.size(); ++k)
          direct += exact.probs[k] * std::exp(point.u() * double(k));
        worst_rel =
            std::max(worst_rel, std::abs(prod - direct) / std::abs(direct));

        CpParams params;
        params.s = 1;
        params.lambdas = {0.0};
        params.h = h;
        params.c0 = model.c0;
        const LemmaReport rep = lemma_checks(model, point, params);
        lemmas_ok = lemmas_ok && rep.all_hold;
      }
    }
  }
  report(6, worst_rel <= 1e-10 && lemmas_ok && coverage_ok,
         "max product identity rel err = " + fmt(worst_rel) +
             " over 20 models x 15 points, lemma bounds " +
             (lemmas_ok ? "hold" : "violated"));
}

// ---------------------------------------------------------------------------
// criterion 7: Presman inversion inequality on random signed measures

void criterion_7() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> len(1, 30);
  double max_violation = -1e300;
  double max_delta = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    SignedMeasure m;
    const int n = len(rng);
    for (int k = 0; k < n; ++k) m.values.push_back(u(rng));
    const PresmanReport a = presman_bound(m, 4096);
    const PresmanReport b = presman_bound(m, 8192);
    max_violation = std::max(max_violation, a.lhs - a.rhs);
    max_delta = std::max(max_delta, std::abs(a.rhs - b.rhs));
  }
  report(7, max_violation <= 1e-8 && max_delta < 1e-9,
         "max lhs - rhs = " + fmt(max_violation) +
             ", panel-doubling shift = " + fmt(max_delta));
}

// ---------------------------------------------------------------------------
// criterion 9: Bergstrom identity sweep

void criterion_9() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(-0.7, 0.7);
  std::uniform_int_distribution<int> nd(0, 12);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::complex<double> alpha(u(rng), u(rng));
    const std::complex<double> beta(u(rng), u(rng));
    const int n = nd(rng);
    for (int s = 0; s <= n; ++s)
      worst = std::max(worst, bergstrom_check(alpha, beta, n, s).abs_err);
  }
  report(9, worst <= 1e-10, "max |lhs - rhs| = " + fmt(worst));
}

// ---------------------------------------------------------------------------
// criterion 10: converge is byte-deterministic through the CLI

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion_10(const char* cli_path) {
  if (cli_path == nullptr) {
    report(10, false, "no CLI path given (pass it as argv[1])");
    return;
  }
  const std::string config = "/tmp/cpapprox_acceptance_config.json";
  {
    std::ofstream out(config);
    out << R"({"command":"converge",)"
        << R"("model":{"type":"k_runs","k":2,"n":0,"p":0},)"
        << R"("cp":{"s":1,"lambdas":[1.0],"h":0.25,"c0":2},)"
        << R"("grid":[100,400,1600],"calibration":"fixed-lambda",)"
        << R"("format":"json"})";
  }
  const std::string out_a = "/tmp/cpapprox_acceptance_a.json";
  const std::string out_b = "/tmp/cpapprox_acceptance_b.json";
  const std::string base = std::string(cli_path) + " --config " + config;
  const int rc_a = std::system((base + " > " + out_a).c_str());
  const int rc_b = std::system((base + " > " + out_b).c_str());
  const std::string a = slurp(out_a), b = slurp(out_b);
  const bool ok = rc_a == 0 && rc_b == 0 && !a.empty() && a == b;
  report(10, ok,
         ok ? "two runs produced byte-identical JSON (" +
                  std::to_string(a.size()) + " bytes)"
            : "outputs differ or the CLI failed");
}

}  // namespace

int main(int argc, char** argv) {
  criterion_1();
  criterion_2();
  criterion_3();
  const std::vector<GridPoint> grid = build_grid();
  criterion_4(grid);
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8(grid);
  criterion_9();
  criterion_10(argc > 1 ? argv[1] : nullptr);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
