#pragma once

#include <complex>
#include <string>
#include <vector>

#include "cpapprox/models.hpp"
#include "cpapprox/pmf.hpp"

namespace cpapprox {

// Complex evaluation argument u = h + i t of the tilted characteristic
// function E exp(u S). |t| <= pi (the inversion range); h >= 0.
struct EvalPoint {
  double t = 0.0;
  double h = 0.0;

  EvalPoint(double t_, double h_);
  std::complex<double> u() const { return {h, t}; }
};

// Exact joint law of the first n_blocks block values (X_1, ..., X_n),
// stored densely over base-arity tuple indices with block 1 as the least
// significant digit.
struct JointLaw {
  int n_blocks = 0;
  int arity = 1;  // c0 + 1
  std::vector<double> probs;

  // Marginal law of block i (1-based).
  Pmf marginal(int i) const;
  int value_at(std::size_t tuple_index, int i) const;  // digit of block i
};

// Joint law by dynamic programming over the driver. This is a verification
// instrument: the tuple support is capped at 2^20 entries and n_blocks at 12.
JointLaw joint_law(const WindowModel& model, int n_blocks);

// Centered mixed expectation wE(Y_j, ..., Y_k) of Y_i = exp(u X_i) - 1,
// defined recursively by
//   wE(U_1) = E U_1,
//   wE(U_1..U_k) = E(U_1...U_k) - sum_{i<k} wE(U_1..U_i) E(U_{i+1}...U_k).
// Blocks are 1-based, 1 <= j <= k <= n_blocks.
std::complex<double> centered_expectation(const JointLaw& law,
                                          const EvalPoint& point, int j,
                                          int k);

struct RegionReport {
  double w = 0.0;  // max_k sqrt(E |exp(u X_k) - 1|^2)
  bool in_region = false;  // w <= 1/6
};

// Membership of u in the region where the product representation holds.
RegionReport region_check(const WindowModel& model, const EvalPoint& point);

// The factors phi_1..phi_n of the product representation
//   E exp(u S_n) = phi_1(u) ... phi_n(u),
// phi_1 = E exp(u X_1) and
//   phi_k = 1 + E(exp(u X_k) - 1)
//             + sum_{j<k} wE(Y_j, ..., Y_k) / (phi_j ... phi_{k-1}).
// Throws std::domain_error outside the region and std::runtime_error when a
// factor degenerates (|phi_j| < 1e-6).
std::vector<std::complex<double>> phi_sequence(const JointLaw& law,
                                               const EvalPoint& point);

// A(u) = sum_k log phi_k(u), principal branch. Requires |phi_k - 1| < 1.
std::complex<double> log_sum_A(
    const std::vector<std::complex<double>>& phis);

struct LemmaCheck {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool holds = false;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_hold = false;
};

// Numeric verification, at one evaluation point, of
//   - the centered-expectation product bound
//       |wE(Y_j..Y_k)| <= 2^{k-j} prod_m sqrt(E |Y_m|^2)
//     for all windows of length <= 4,
//   - the factor bounds |phi_k - 1| <= (a^2/6)(10 nu_1(k-1) + 13 nu_1(k))
//     and |phi_k - 1| <= 1/25,
//   - |A| <= 4 a^2 Gamma1, and the same for |A'| with A' taken by a central
//     difference in t (step 1e-5, tolerance 1e-4).
// Requires the small-moment precondition a^2 max_j nu_1(j) <= 1/100.
LemmaReport lemma_checks(const WindowModel& model, const EvalPoint& point,
                         const CpParams& params);

struct BergstromReport {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_err = 0.0;
};

// Finite binomial-type expansion of alpha^N around beta with explicit
// remainder:
//   alpha^N = sum_{m=0}^{s} C(N,m) beta^{N-m} (alpha-beta)^m
//           + sum_{m=s+1}^{N} C(m-1,s) alpha^{N-m} (alpha-beta)^{s+1}
//                             beta^{m-s-1}.
BergstromReport bergstrom_check(std::complex<double> alpha,
                                std::complex<double> beta, int cap_n, int s);

}  // namespace cpapprox
