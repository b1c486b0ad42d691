#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpapprox/pmf.hpp"

namespace cpapprox {

// Thrown when a requested exact computation exceeds its memory budget.
struct resource_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Window statistic over an i.i.d. driver sequence.
//
// The driver eta_1..eta_L (L = n_terms + window_width - 1) draws symbols
// from a finite alphabet. Each term Z_j = value(eta_j, ..., eta_{j+w-1})
// reads a width-w window; consecutive terms are grouped into blocks of
// block_size (the last block may be shorter):
//   X_i = Z_{(i-1)m+1} + ... + Z_{min(im, n_terms)}.
// With w <= block_size + 1 the blocks form a 1-dependent sequence.
struct WindowModel {
  std::vector<double> alphabet_probs;
  int window_width = 1;
  // value of Z for each window, indexed with the oldest symbol as the most
  // significant base-|alphabet| digit; size alphabet^window_width
  std::vector<int> window_values;
  long long n_terms = 1;
  int block_size = 1;
  int c0 = 1;  // bound on block values

  int alphabet_size() const { return int(alphabet_probs.size()); }
  long long driver_length() const { return n_terms + window_width - 1; }
  long long num_blocks() const {
    return (n_terms + block_size - 1) / block_size;
  }
  // Number of Z terms in block j (1-based); all blocks have block_size terms
  // except possibly the last.
  long long block_len(long long j) const;
  int max_window_value() const;
};

// Validates fields, derives/verifies the block value bound c0 (pass c0 = 0 to
// derive it from block reachability), and returns the finished model.
WindowModel make_window_model(std::vector<double> alphabet_probs,
                              int window_width, std::vector<int> window_values,
                              long long n_terms, int block_size, int c0 = 0);

// Number of k1-failures-then-k2-successes events in n Bernoulli(p) trials,
// grouped into blocks of m = k1 + k2 terms. Block values are 0/1: two
// events within m consecutive positions conflict.
WindowModel make_kk_events(int k1, int k2, long long n, double p);

// k-runs statistic: Z_j = eta_j * ... * eta_{j+k-1} over n terms, grouped
// into blocks of k.
WindowModel make_k_runs(int k, long long n, double p);

// 1-dependent sequence with a compound Poisson CP(2, .) limit:
//   X_j = eta_j eta_{j+1} + 2 xi_j (1 - eta_j eta_{j+1})
// with independent eta ~ Be(p), xi ~ Be(pbar). Symbols are the pairs
// (eta, xi); block_size = 1, c0 = 2.
WindowModel make_cp2_model(long long n, double p, double pbar);

// Exact law of S = Z_1 + ... + Z_{n_terms}, by dynamic programming over the
// driver with state = last (w-1) symbols. Budget: 1e7 state x sum cells.
Pmf exact_sum_law(const WindowModel& model);

// Exact law of S by full enumeration of driver strings (test oracle).
// Budget: alphabet^driver_length <= 2^22.
Pmf brute_force_law(const WindowModel& model);

// Exact law of block X_j (1-based). Interior blocks share one law because the
// driver is i.i.d.
Pmf block_marginal(const WindowModel& model, long long j);

// Exact joint law of an adjacent block pair (X_{j-1}, X_j), 2 <= j <= blocks.
struct JointPair {
  // p[x][y] = P(X_{j-1} = x, X_j = y)
  std::vector<std::vector<double>> p;

  double marginal_x_mean() const;
  double marginal_y_mean() const;
  double total_mass() const;
};

JointPair block_pair_joint(const WindowModel& model, long long j);

// Empirical law of S from `reps` simulated driver strings. Deterministic for
// a fixed seed: mt19937_64 with 53-bit uniforms and inverse-CDF symbol draws.
Pmf sample_sum(const WindowModel& model, std::uint64_t seed, long long reps);

// Name of the generator used by sample_sum, for report output.
inline constexpr const char* kSamplerAlgorithm = "mt19937_64";

}  // namespace cpapprox
