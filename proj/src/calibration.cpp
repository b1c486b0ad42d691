#include "cpapprox/calibration.hpp"

#include <cmath>
#include <stdexcept>

namespace cpapprox {

double calibrate_kk_events(int k1, int k2, long long n, double lambda) {
  if (k1 < 1 || k2 < 1 || n < k1 + k2)
    throw std::domain_error("calibrate_kk_events: invalid k1, k2, n");
  if (!(lambda > 0.0))
    throw std::domain_error("calibrate_kk_events: lambda must be positive");

  const double scale = double(n - k1 - k2 + 1);
  const double target = lambda / scale;
  auto a = [k1, k2](double p) {
    return std::pow(1.0 - p, k1) * std::pow(p, k2);
  };
  // a(p) increases on (0, p*) with p* = k2/(k1+k2); take the smaller root
  const double p_star = double(k2) / double(k1 + k2);
  if (target > a(p_star))
    throw std::domain_error(
        "calibrate_kk_events: target exceeds the maximum of (1-p)^k1 p^k2");

  double lo = 0.0, hi = p_star;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (a(mid) < target)
      lo = mid;
    else
      hi = mid;
    if (std::abs(scale * a(mid) - lambda) <= 1e-12) return mid;
  }
  const double p = 0.5 * (lo + hi);
  if (std::abs(scale * a(p) - lambda) > 1e-12)
    throw std::runtime_error("calibrate_kk_events: bisection stalled");
  return p;
}

double calibrate_k_runs(int k, long long n, double lambda) {
  if (k < 1 || n < 1) throw std::domain_error("calibrate_k_runs: invalid k, n");
  if (!(lambda > 0.0))
    throw std::domain_error("calibrate_k_runs: lambda must be positive");
  const double p = std::pow(lambda / double(n), 1.0 / double(k));
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("calibrate_k_runs: no solution p in (0,1)");
  return p;
}

Cp2Calibration calibrate_cp2(long long n, double lambda1, double lambda2) {
  if (n < 1) throw std::domain_error("calibrate_cp2: n must be >= 1");
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
    throw std::domain_error("calibrate_cp2: lambdas must be positive");
  Cp2Calibration c;
  c.p = std::sqrt(lambda1 / double(n));
  c.pbar = lambda2 / double(n);
  if (!(c.p > 0.0 && c.p < 1.0) || !(c.pbar > 0.0 && c.pbar < 1.0))
    throw std::domain_error("calibrate_cp2: no solution in (0,1)");
  return c;
}

}  // namespace cpapprox
