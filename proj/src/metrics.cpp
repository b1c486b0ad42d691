#include "cpapprox/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace cpapprox {

namespace {

// Compensated (Kahan) accumulator for the quadrature sums.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace

SignedMeasure weighted_difference(const Pmf& f, const Pmf& g, double h) {
  if (!(h >= 0.0))
    throw std::domain_error("weighted_difference: h must be nonnegative");
  const std::size_t len = std::max(f.probs.size(), g.probs.size());
  SignedMeasure m;
  m.values.assign(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    const double d = f.at(k) - g.at(k);
    if (d == 0.0) continue;
    const double hk = h * double(k);
    if (hk > 700.0)
      throw std::domain_error("weighted_difference: weight e^{hk} overflows");
    m.values[k] = std::exp(hk) * d;
  }
  return m;
}

SignedMeasure difference(const Pmf& f, const Pmf& g) {
  return weighted_difference(f, g, 0.0);
}

double total_variation_norm(const SignedMeasure& m) {
  double s = 0.0;
  for (double v : m.values) {
    if (!std::isfinite(v))
      throw std::domain_error("total_variation_norm: non-finite entry");
    s += std::abs(v);
  }
  return s;
}

double wasserstein_norm(const SignedMeasure& m, double h) {
  if (!(h >= 0.0))
    throw std::domain_error("wasserstein_norm: h must be nonnegative");
  const std::size_t len = m.values.size();
  if (len == 0) return 0.0;

  double abs_total = 0.0;
  for (double v : m.values) {
    if (!std::isfinite(v))
      throw std::domain_error("wasserstein_norm: non-finite entry");
    abs_total += std::abs(v);
  }

  // suffix[k] = sum_{j >= k} values[j]; cumulative M([0,k]) = suffix[0] -
  // suffix[k+1]. Suffix sums keep relative accuracy where the entries are
  // tiny, which the forward prefix sums lose entirely.
  std::vector<double> suffix(len + 1, 0.0);
  for (std::size_t k = len; k-- > 0;) suffix[k] = suffix[k + 1] + m.values[k];

  const double floor = 1e-13 * std::max(1.0, abs_total);
  std::size_t stop = 0;
  bool any = false;
  for (std::size_t k = 0; k < len; ++k) {
    if (std::abs(suffix[0] - suffix[k + 1]) > floor) {
      stop = k;
      any = true;
    }
  }
  if (!any) return 0.0;

  double out = 0.0;
  for (std::size_t k = 0; k <= stop; ++k)
    out += std::exp(h * double(k)) * std::abs(suffix[0] - suffix[k + 1]);
  return out;
}

WassersteinCheck check_wasserstein_inequality(const Pmf& f, const Pmf& g,
                                              double h) {
  if (!(h > 0.0))
    throw std::domain_error(
        "check_wasserstein_inequality: inequality requires h > 0");
  WassersteinCheck r;
  r.lhs = wasserstein_norm(difference(f, g), h);
  r.rhs = total_variation_norm(weighted_difference(f, g, h)) / std::expm1(h);
  r.holds = r.lhs <= r.rhs + 1e-10;
  return r;
}

PresmanReport presman_bound(const SignedMeasure& m, int quadrature_panels) {
  if (quadrature_panels < 2 || quadrature_panels % 2 != 0)
    throw std::invalid_argument(
        "presman_bound: quadrature_panels must be even and >= 2");

  PresmanReport r;
  r.lhs = total_variation_norm(m);

  const double pi = std::numbers::pi;
  const double step = 2.0 * pi / double(quadrature_panels);
  KahanSum integral;
  for (int j = 0; j <= quadrature_panels; ++j) {
    const double t = -pi + step * double(j);
    std::complex<double> mhat(0.0, 0.0);
    std::complex<double> mhat_deriv(0.0, 0.0);
    for (std::size_t k = 0; k < m.values.size(); ++k) {
      if (m.values[k] == 0.0) continue;
      const std::complex<double> e =
          std::polar(m.values[k], t * double(k));
      mhat += e;
      mhat_deriv += std::complex<double>(0.0, double(k)) * e;
    }
    const double f = std::norm(mhat) + std::norm(mhat_deriv);
    const double weight =
        (j == 0 || j == quadrature_panels) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    integral.add(weight * f);
  }
  const double value = integral.sum * step / 3.0;
  r.rhs = std::sqrt((0.5 + 1.0 / (2.0 * pi)) * std::max(0.0, value));
  return r;
}

}  // namespace cpapprox
