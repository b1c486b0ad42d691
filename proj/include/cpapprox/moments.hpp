#pragma once

#include <vector>

#include "cpapprox/models.hpp"
#include "cpapprox/pmf.hpp"

namespace cpapprox {

// m-th factorial moment E X(X-1)...(X-m+1) of a pmf; exactly zero when m
// exceeds the largest support point.
double factorial_moment(const Pmf& f, int m);

// Cov(X, Y) from the exact joint law of the pair.
double covariance(const JointPair& joint);

// nu[j][m-1] = m-th factorial moment of block j (0-based blocks, m = 1..s+1),
// adjacent-block covariances, and the aggregates entering the error bound.
struct MomentSummary {
  std::vector<std::vector<double>> nu;
  std::vector<double> cov_adjacent;  // [i] = Cov(X_{i+1}, X_{i+2}), 1-based
  double gamma1 = 0.0;               // E S_n = sum_j nu_1(j)
  double gamma2 = 0.0;  // (1/2) sum_j (nu_2(j) - nu_1(j)^2) + sum cov
  double nu1_max = 0.0;
  long long n_blocks = 0;

  double nu_sum(int m) const;        // sum_j nu_m(j)
  double nu1_sq_sum() const;         // sum_j nu_1(j)^2
  double cov_abs_sum() const;        // sum_j |Cov(X_{j-1}, X_j)|
};

// Exact block moments/covariances of a model, with factorial moment orders
// 1..s+1. Interior blocks share one computation.
MomentSummary summarize(const WindowModel& model, int s);

// Per-n values of the four compound Poisson convergence diagnostics:
//   cond3 = max_j nu_1(j)
//   cond4[m-1] = |sum_j nu_m(j)/m! - sum_{l=m}^s C(l,m) lambda_l|, m = 1..s
//   cond5 = sum_j nu_{s+1}(j)
//   cond6 = sum_j |Cov(X_{j-1}, X_j)|
struct ConditionRow {
  double cond3 = 0.0;
  std::vector<double> cond4;
  double cond5 = 0.0;
  double cond6 = 0.0;
};

struct ConvergenceReport {
  std::vector<ConditionRow> rows;
  // strict decrease across all consecutive rows
  bool trend3 = false;
  bool trend4 = false;
  bool trend5 = false;
  bool trend6 = false;
};

// Diagnoses the convergence conditions along a sequence of summaries over
// growing n. Requires at least two summaries.
ConvergenceReport check_convergence_conditions(
    const std::vector<MomentSummary>& summaries, const CpParams& params);

// Target sum_{l=m}^{s} C(l,m) lambda_l of the m-th diagnostic.
double condition_target(const CpParams& params, int m);

}  // namespace cpapprox
