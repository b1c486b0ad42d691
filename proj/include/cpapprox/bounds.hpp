#pragma once

#include "cpapprox/moments.hpp"
#include "cpapprox/pmf.hpp"

namespace cpapprox {

// Explicit constants of the weighted compound Poisson error bound:
//   a   = e^{h C0} (2 + h) sqrt(C0)
//   psi = exp(max(4 a^2 Gamma1, sum_m lambda_m (e^{hm} + 1)))
//   K1  = psi sqrt(pi+1) (e^h+1)^s (s + 1 + 4 a^2 Gamma1)
//   K2  = psi sqrt(pi+1) (s + 1 + 4 a^2 Gamma1) e^{h C0} (e^h+1)^{s+1}/(s+1)!
//   K3  = 16 psi a^4 sqrt(pi+1) (5 + 6 a^2 Gamma1)
//   K4  = 4 psi a^3 sqrt(pi+1) (1.1 + a^2 Gamma1)
struct BoundConstants {
  double a = 0.0;
  double psi = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
};

BoundConstants constants(const CpParams& params, double gamma1);

// The four summands of the bound on sum_k e^{hk} |F_n{k} - CP(s,lambda){k}|
// together with the constants and the small-moment precondition
// a^2 max_j nu_1(j) <= 1/100. The report is produced even when the
// precondition fails, flagged by precondition_ok; the bound certifies the
// distance only when the flag holds.
struct BoundReport {
  double a = 0.0;
  double psi = 0.0;
  double k1 = 0.0, k2 = 0.0, k3 = 0.0, k4 = 0.0;
  double term_moment_match = 0.0;  // K1 sum_m |sum_j nu_m(j)/m! - target_m|
  double term_nu_s1 = 0.0;         // K2 sum_j nu_{s+1}(j)
  double term_nu1_sq = 0.0;        // K3 sum_j nu_1(j)^2
  double term_cov = 0.0;           // K4 sum_j |Cov(X_{j-1}, X_j)|
  double total = 0.0;
  bool precondition_ok = false;
  double gamma1 = 0.0;
};

BoundReport theorem2_bound(const MomentSummary& summary,
                           const CpParams& params);

// The same bound specialized to the Poisson (s = 1) and CP(2, .) (s = 2)
// corollary forms. Identical totals; the corollary's literature form scales
// the second moment-match term by 2 (|sum nu_2 - 2 lambda_2| versus the
// theorem's |sum nu_2 / 2 - lambda_2|), which the explicit constants absorb.
BoundReport corollary_bound(const MomentSummary& summary,
                            const CpParams& params);

// Transfers a weighted total variation bound to the weighted Wasserstein
// norm: total / (e^h - 1), valid for h > 0.
double wasserstein_bound(const BoundReport& report, double h);

}  // namespace cpapprox
