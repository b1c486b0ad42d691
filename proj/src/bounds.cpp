#include "cpapprox/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpapprox {

BoundConstants constants(const CpParams& params, double gamma1) {
  params.validate();
  if (!(gamma1 >= 0.0))
    throw std::domain_error("constants: gamma1 must be nonnegative");

  const double h = params.h;
  const double c0 = double(params.c0);
  const double root_pi1 = std::sqrt(std::numbers::pi + 1.0);

  BoundConstants c;
  c.a = std::exp(h * c0) * (2.0 + h) * std::sqrt(c0);
  const double a2g = c.a * c.a * gamma1;

  double weighted_rates = 0.0;
  for (int m = 1; m <= params.s; ++m)
    weighted_rates += params.lambdas[std::size_t(m - 1)] *
                      (std::exp(h * double(m)) + 1.0);
  c.psi = std::exp(std::max(4.0 * a2g, weighted_rates));

  const double eh1 = std::exp(h) + 1.0;
  double pow_eh1_s = 1.0;
  double fact_s1 = 1.0;  // (s+1)!
  for (int i = 1; i <= params.s; ++i) {
    pow_eh1_s *= eh1;
    fact_s1 *= double(i);
  }
  fact_s1 *= double(params.s + 1);

  c.k1 = c.psi * root_pi1 * pow_eh1_s * (double(params.s) + 1.0 + 4.0 * a2g);
  c.k2 = c.psi * root_pi1 * (double(params.s) + 1.0 + 4.0 * a2g) *
         std::exp(h * c0) * pow_eh1_s * eh1 / fact_s1;
  c.k3 = 16.0 * c.psi * std::pow(c.a, 4.0) * root_pi1 * (5.0 + 6.0 * a2g);
  c.k4 = 4.0 * c.psi * std::pow(c.a, 3.0) * root_pi1 * (1.1 + a2g);
  return c;
}

BoundReport theorem2_bound(const MomentSummary& summary,
                           const CpParams& params) {
  params.validate();
  if (!summary.nu.empty() &&
      summary.nu.front().size() < std::size_t(params.s + 1))
    throw std::domain_error(
        "theorem2_bound: summary lacks moment orders 1..s+1");

  BoundReport r;
  r.gamma1 = summary.gamma1;
  const BoundConstants c = constants(params, summary.gamma1);
  r.a = c.a;
  r.psi = c.psi;
  r.k1 = c.k1;
  r.k2 = c.k2;
  r.k3 = c.k3;
  r.k4 = c.k4;

  double mismatch = 0.0;
  double factorial = 1.0;
  for (int m = 1; m <= params.s; ++m) {
    factorial *= double(m);
    mismatch +=
        std::abs(summary.nu_sum(m) / factorial - condition_target(params, m));
  }
  r.term_moment_match = c.k1 * mismatch;
  r.term_nu_s1 = c.k2 * summary.nu_sum(params.s + 1);
  r.term_nu1_sq = c.k3 * summary.nu1_sq_sum();
  r.term_cov = c.k4 * summary.cov_abs_sum();
  r.total = r.term_moment_match + r.term_nu_s1 + r.term_nu1_sq + r.term_cov;
  r.precondition_ok = c.a * c.a * summary.nu1_max <= 0.01;
  return r;
}

BoundReport corollary_bound(const MomentSummary& summary,
                            const CpParams& params) {
  if (params.s != 1 && params.s != 2)
    throw std::domain_error("corollary_bound: s must be 1 or 2");
  return theorem2_bound(summary, params);
}

double wasserstein_bound(const BoundReport& report, double h) {
  if (!(h > 0.0))
    throw std::domain_error("wasserstein_bound: requires h > 0");
  return report.total / std::expm1(h);
}

}  // namespace cpapprox
