#pragma once

#include <vector>

#include "cpapprox/pmf.hpp"

namespace cpapprox {

// Finite signed measure on {0, 1, ...}: values[k] is the signed mass at k.
struct SignedMeasure {
  std::vector<double> values;
};

// Entry k = exp(h*k) * (f(k) - g(k)) over the joint support.
SignedMeasure weighted_difference(const Pmf& f, const Pmf& g, double h);

// Unweighted difference f - g (the h = 0 specialization).
SignedMeasure difference(const Pmf& f, const Pmf& g);

// Total variation norm sum_k |values(k)|.
double total_variation_norm(const SignedMeasure& m);

// Exponentially weighted Wasserstein norm sum_k exp(h*k) |M([0,k])|.
//
// Cumulative sums are evaluated from the tail (M([0,k]) = total - suffix),
// which keeps the large-k plateau accurate when the total mass cancels.
// Terms whose cumulative sum is below the accumulation noise floor
// (1e-13, scaled by the measure's total variation) count as vanished, so the
// weighted sum stops once only round-off remains.
double wasserstein_norm(const SignedMeasure& m, double h);

struct WassersteinCheck {
  double lhs = 0.0;  // weighted Wasserstein norm of f - g
  double rhs = 0.0;  // weighted TV norm of the difference, / (e^h - 1)
  bool holds = false;
};

// Checks the weighted Wasserstein-vs-TV inequality for h > 0:
//   sum e^{hk} |F(k) - G(k)|  <=  sum e^{hk} |f(k) - g(k)| / (e^h - 1).
// f and g must be (near-)probability measures so total masses cancel.
WassersteinCheck check_wasserstein_inequality(const Pmf& f, const Pmf& g,
                                              double h);

struct PresmanReport {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Presman's inversion inequality for a lattice signed measure:
//   sum_k |M{k}| <= sqrt(1/2 + 1/(2pi)) *
//                   (int_{-pi}^{pi} |Mhat(it)|^2 + |Mhat'(it)|^2 dt)^{1/2}
// with Mhat(it) = sum_k M{k} e^{itk}. The integral uses composite Simpson
// on quadrature_panels panels (even, >= 2); the integrand is a trigonometric
// polynomial, so the rule is exact once panels exceed the support length.
PresmanReport presman_bound(const SignedMeasure& m, int quadrature_panels);

}  // namespace cpapprox
