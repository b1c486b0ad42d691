#pragma once

#include <cstddef>
#include <vector>

namespace cpapprox {

// Default tolerance for the exp(h*k)-weighted tail mass discarded when an
// infinite-support law is truncated. Weighted distances built from such pmfs
// inherit at most ~2x this truncation error.
inline constexpr double kDefaultTailTol = 1e-12;

// Finite-support probability mass function on {0, 1, ..., K}.
//
// probs[k] is the mass at integer k. trunc_defect is the (unweighted) mass
// discarded by truncation, so sum(probs) + trunc_defect stays within 1e-12
// of one. Trailing zero entries are trimmed after every construction; the
// trailing entry may be zero only for the degenerate support {0}.
struct Pmf {
  std::vector<double> probs{1.0};
  double trunc_defect = 0.0;

  std::size_t support_size() const { return probs.size(); }

  // Mass at k, zero beyond the stored support.
  double at(std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }

  double total_mass() const;
  double mean() const;
  double variance() const;

  static Pmf point_mass(std::size_t k);
};

// Target compound Poisson law CP(s, lambda_1..lambda_s) together with the
// weight exponent h and the uniform summand bound c0 used by the error
// bound. c0 >= 1 is required; integer summands below 1 are identically zero.
struct CpParams {
  int s = 1;
  std::vector<double> lambdas;
  double h = 0.0;
  int c0 = 1;

  // Throws std::domain_error on an invalid combination.
  void validate() const;
};

// True when entries are nonnegative, finite, canonically trimmed and
// sum + trunc_defect is within tol of one.
bool is_valid_pmf(const Pmf& f, double tol = 1e-12);

// Poisson(lambda) truncated at the smallest K whose exp(h*k)-weighted tail
// is below weighted_tail_tol (ratio-test bound on the remainder).
Pmf poisson_pmf(double lambda, double weighted_tail_tol = kDefaultTailTol,
                double h = 0.0);

// Law of N_1 + 2*N_2 + ... + s*N_s with independent N_m ~ Poisson(lambda_m),
// built by convolving the support-scaled Poisson components. The weighted
// tail discarded over all components stays below weighted_tail_tol.
Pmf compound_poisson_pmf(const CpParams& params,
                         double weighted_tail_tol = kDefaultTailTol);

// Law of the sum of two independent variables.
Pmf convolve(const Pmf& f, const Pmf& g);

// Law of m*X when X ~ f: mass f(k) moves to m*k.
Pmf scale_support(const Pmf& f, int m);

}  // namespace cpapprox
