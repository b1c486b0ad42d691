#include <cmath>
#include <numbers>

#include <doctest.h>

#include "cpapprox/bounds.hpp"
#include "cpapprox/calibration.hpp"
#include "cpapprox/metrics.hpp"
#include "test_support.hpp"

using namespace cpapprox;

TEST_CASE("constants: a at h = 0, C0 = 1, and the quoted hand evaluation") {
  CpParams params;
  params.s = 1;
  params.lambdas = {0.001};
  params.h = 0.0;
  params.c0 = 1;
  const BoundConstants c = constants(params, 0.001);
  CHECK(c.a == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.psi == doctest::Approx(std::exp(0.016)).epsilon(1e-14));
  CHECK(c.k3 ==
        doctest::Approx(16.0 * std::exp(0.016) * 16.0 *
                        std::sqrt(std::numbers::pi + 1.0) * (5.0 + 0.024))
            .epsilon(1e-13));
}

TEST_CASE("constants: double-entry re-evaluation at h=0.5, C0=2, s=2") {
  CpParams params;
  params.s = 2;
  params.lambdas = {0.4, 0.1};
  params.h = 0.5;
  params.c0 = 2;
  const double gamma1 = 0.6;
  const BoundConstants c = constants(params, gamma1);

  // independent spreadsheet-style arithmetic
  const double a = std::exp(0.5 * 2.0) * 2.5 * std::sqrt(2.0);
  const double a2g = a * a * gamma1;
  const double rates =
      0.4 * (std::exp(0.5) + 1.0) + 0.1 * (std::exp(1.0) + 1.0);
  const double psi = std::exp(std::max(4.0 * a2g, rates));
  const double root = std::sqrt(std::numbers::pi + 1.0);
  const double eh1 = std::exp(0.5) + 1.0;

  CHECK(c.a == doctest::Approx(a).epsilon(1e-14));
  CHECK(c.psi == doctest::Approx(psi).epsilon(1e-12));
  CHECK(c.k1 ==
        doctest::Approx(psi * root * eh1 * eh1 * (3.0 + 4.0 * a2g))
            .epsilon(1e-12));
  CHECK(c.k2 == doctest::Approx(psi * root * (3.0 + 4.0 * a2g) *
                                std::exp(1.0) * eh1 * eh1 * eh1 / 6.0)
                    .epsilon(1e-12));
  CHECK(c.k3 == doctest::Approx(16.0 * psi * a * a * a * a * root *
                                (5.0 + 6.0 * a2g))
                    .epsilon(1e-12));
  CHECK(c.k4 ==
        doctest::Approx(4.0 * psi * a * a * a * root * (1.1 + a2g))
            .epsilon(1e-12));
  CHECK(c.a >= 2.0);
}

TEST_CASE("theorem bound vanishes for the all-zero model") {
  const WindowModel model = make_window_model({0.5, 0.5}, 1, {0, 0}, 8, 1);
  const MomentSummary sum = summarize(model, 1);
  CpParams params;
  params.s = 1;
  params.lambdas = {0.0};
  const BoundReport r = theorem2_bound(sum, params);
  CHECK(r.total == 0.0);
  CHECK(r.precondition_ok);

  const Pmf exact = exact_sum_law(model);
  const Pmf target = compound_poisson_pmf(params);
  CHECK(total_variation_norm(weighted_difference(exact, target, 0.0)) == 0.0);
}

TEST_CASE("single Bernoulli block: total = K3 q^2 and dominates the distance") {
  const double q = 0.002;
  const WindowModel model = make_window_model({1.0 - q, q}, 1, {0, 1}, 1, 1);
  const MomentSummary sum = summarize(model, 1);
  CpParams params;
  params.s = 1;
  params.lambdas = {q};
  const BoundReport r = theorem2_bound(sum, params);
  CHECK(r.precondition_ok);
  CHECK(r.term_moment_match <= 1e-18);
  CHECK(r.term_nu_s1 == 0.0);
  CHECK(r.term_cov == 0.0);
  CHECK(r.total == doctest::Approx(r.k3 * q * q).epsilon(1e-13));

  const double dist = total_variation_norm(
      weighted_difference(exact_sum_law(model), compound_poisson_pmf(params),
                          0.0));
  CHECK(dist <= r.total + 1e-9);
}

TEST_CASE("term recomposition is linear in the aggregates") {
  const WindowModel model = make_k_runs(2, 40, 0.05);
  const MomentSummary sum = summarize(model, 1);
  CpParams params;
  params.s = 1;
  params.lambdas = {sum.gamma1};
  params.c0 = 2;
  const BoundReport r = theorem2_bound(sum, params);
  CHECK(r.term_nu_s1 == doctest::Approx(r.k2 * sum.nu_sum(2)).epsilon(1e-14));
  CHECK(r.term_nu1_sq ==
        doctest::Approx(r.k3 * sum.nu1_sq_sum()).epsilon(1e-14));
  CHECK(r.term_cov ==
        doctest::Approx(r.k4 * sum.cov_abs_sum()).epsilon(1e-14));
  CHECK(r.total == r.term_moment_match + r.term_nu_s1 + r.term_nu1_sq +
                       r.term_cov);
}

TEST_CASE("precondition failures are flagged, not fatal") {
  const WindowModel model = make_k_runs(2, 20, 0.4);
  const MomentSummary sum = summarize(model, 1);
  CpParams params;
  params.s = 1;
  params.lambdas = {sum.gamma1};
  params.c0 = 2;
  const BoundReport r = theorem2_bound(sum, params);
  CHECK_FALSE(r.precondition_ok);
  CHECK(r.total > 0.0);
}

TEST_CASE("corollary forms coincide with the theorem bound") {
  const WindowModel model = make_cp2_model(60, 0.05, 0.01);
  const MomentSummary sum = summarize(model, 2);
  CpParams params;
  params.s = 2;
  params.lambdas = {60 * 0.05 * 0.05, 60 * 0.01};
  params.c0 = 2;
  const BoundReport a = theorem2_bound(sum, params);
  const BoundReport b = corollary_bound(sum, params);
  CHECK(a.total == b.total);
  CHECK(a.term_moment_match == b.term_moment_match);

  CpParams bad = params;
  bad.s = 3;
  bad.lambdas = {0.1, 0.1, 0.1};
  CHECK_THROWS_AS(corollary_bound(sum, bad), std::domain_error);
}

TEST_CASE("corollary s=1 moment term is K1 |Gamma1 - lambda|") {
  const WindowModel model = make_kk_events(1, 1, 40, 0.01);
  const MomentSummary sum = summarize(model, 1);
  CpParams params;
  params.s = 1;
  params.lambdas = {sum.gamma1 + 0.003};
  const BoundReport r = corollary_bound(sum, params);
  CHECK(r.term_moment_match ==
        doctest::Approx(r.k1 * 0.003).epsilon(1e-10));
}

TEST_CASE("kk_events calibrated point: bound dominates the weighted distance") {
  const long long n = 400;
  const double lambda = 0.1;  // small target so the precondition holds
  for (double h : {0.0, 0.25}) {
    const double p = calibrate_kk_events(1, 1, n, lambda);
    const WindowModel model = make_kk_events(1, 1, n, p);
    const MomentSummary sum = summarize(model, 1);
    CpParams params;
    params.s = 1;
    params.lambdas = {lambda};
    params.h = h;
    params.c0 = 1;
    const BoundReport r = theorem2_bound(sum, params);
    REQUIRE(r.precondition_ok);
    const double dist = total_variation_norm(weighted_difference(
        exact_sum_law(model), compound_poisson_pmf(params, 1e-12), h));
    CHECK(dist <= r.total + 1e-9);

    if (h > 0.0) {
      const double wdist =
          wasserstein_norm(difference(exact_sum_law(model),
                                      compound_poisson_pmf(params, 1e-12)),
                           h);
      CHECK(wdist <= wasserstein_bound(r, h) + 1e-10);
    }
  }
}

TEST_CASE("bound totals vanish at the O(1/n) rate on calibrated grids") {
  auto total_at = [](const WindowModel& model, int s,
                     std::vector<double> lambdas, int c0) {
    CpParams params;
    params.s = s;
    params.lambdas = std::move(lambdas);
    params.h = 0.25;
    params.c0 = c0;
    return theorem2_bound(summarize(model, s), params).total;
  };

  const double kk100 = total_at(
      make_kk_events(1, 1, 100, calibrate_kk_events(1, 1, 100, 2.0)), 1,
      {2.0}, 1);
  const double kk1600 = total_at(
      make_kk_events(1, 1, 1600, calibrate_kk_events(1, 1, 1600, 2.0)), 1,
      {2.0}, 1);
  CHECK(kk1600 < kk100 / 8.0);

  const double runs100 =
      total_at(make_k_runs(2, 100, calibrate_k_runs(2, 100, 1.0)), 1, {1.0},
               2);
  const double runs1600 =
      total_at(make_k_runs(2, 1600, calibrate_k_runs(2, 1600, 1.0)), 1,
               {1.0}, 2);
  CHECK(runs1600 < runs100 / 8.0);
}

TEST_CASE("wasserstein_bound specializations") {
  BoundReport r;
  r.total = 0.0;
  CHECK(wasserstein_bound(r, 0.7) == 0.0);
  r.total = 3.25;
  CHECK(wasserstein_bound(r, std::log(2.0)) ==
        doctest::Approx(3.25).epsilon(1e-14));
  CHECK_THROWS_AS(wasserstein_bound(r, 0.0), std::domain_error);
}
