#include "cpapprox/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cpapprox {

namespace {

constexpr long long kDpCellBudget = 10'000'000;       // state x sum cells
constexpr long long kBruteForceBudget = 1LL << 22;    // driver strings

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void trim_trailing_zeros(std::vector<double>& v) {
  while (v.size() > 1 && v.back() == 0.0) v.pop_back();
}

// The exact laws sum to one; divide out the round-off the accumulation
// drifted by (entries keep their relative accuracy).
void normalize_mass(std::vector<double>& v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (total > 0.0 && total != 1.0)
    for (double& x : v) x /= total;
}

// Largest block sum reachable in `terms` consecutive windows, by set-valued
// DP over (state, partial sum).
int max_block_sum(const WindowModel& m, long long terms) {
  const int a = m.alphabet_size();
  const long long states = ipow(a, m.window_width - 1);
  const int max_z = m.max_window_value();
  const long long cap = terms * max_z + 1;
  if (states * cap > kDpCellBudget)
    throw resource_error(
        "window model: block bound check exceeds 1e7 state x sum cells");

  std::vector<char> reach(std::size_t(states * cap), 0);
  std::vector<char> next(reach.size(), 0);
  for (long long st = 0; st < states; ++st) reach[std::size_t(st * cap)] = 1;
  int best = 0;
  for (long long j = 0; j < terms; ++j) {
    std::fill(next.begin(), next.end(), 0);
    for (long long st = 0; st < states; ++st) {
      for (long long sum = 0; sum < cap; ++sum) {
        if (!reach[std::size_t(st * cap + sum)]) continue;
        for (int sym = 0; sym < a; ++sym) {
          const long long window = st * a + sym;
          const long long ns = window % states;
          const long long nsum = sum + m.window_values[std::size_t(window)];
          next[std::size_t(ns * cap + nsum)] = 1;
          if (j + 1 == terms) best = std::max(best, int(nsum));
        }
      }
    }
    reach.swap(next);
  }
  return best;
}

// Initial distribution over the (w-1)-symbol state.
std::vector<double> initial_state_probs(const WindowModel& m,
                                        long long states) {
  const int a = m.alphabet_size();
  std::vector<double> init(std::size_t(states), 0.0);
  init[0] = 1.0;
  for (int pos = 0; pos < m.window_width - 1; ++pos) {
    std::vector<double> next(init.size(), 0.0);
    const long long prefix_states = ipow(a, pos);
    for (long long st = 0; st < prefix_states; ++st) {
      if (init[std::size_t(st)] == 0.0) continue;
      for (int sym = 0; sym < a; ++sym)
        next[std::size_t(st * a + sym)] +=
            init[std::size_t(st)] * m.alphabet_probs[std::size_t(sym)];
    }
    init.swap(next);
  }
  return init;
}

}  // namespace

long long WindowModel::block_len(long long j) const {
  const long long blocks = num_blocks();
  if (j < 1 || j > blocks)
    throw std::out_of_range("WindowModel::block_len: block index out of range");
  if (j < blocks) return block_size;
  return n_terms - (blocks - 1) * block_size;
}

int WindowModel::max_window_value() const {
  int mx = 0;
  for (int v : window_values) mx = std::max(mx, v);
  return mx;
}

WindowModel make_window_model(std::vector<double> alphabet_probs,
                              int window_width, std::vector<int> window_values,
                              long long n_terms, int block_size, int c0) {
  WindowModel m;
  m.alphabet_probs = std::move(alphabet_probs);
  m.window_width = window_width;
  m.window_values = std::move(window_values);
  m.n_terms = n_terms;
  m.block_size = block_size;

  if (m.alphabet_probs.size() < 1)
    throw std::domain_error("window model: empty alphabet");
  double total = 0.0;
  for (double p : m.alphabet_probs) {
    if (!(p > 0.0) || !std::isfinite(p))
      throw std::domain_error("window model: alphabet probs must be positive");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("window model: alphabet probs must sum to 1");
  if (m.window_width < 1)
    throw std::domain_error("window model: window_width must be >= 1");
  if (m.n_terms < 1)
    throw std::domain_error("window model: n_terms must be >= 1");
  if (m.block_size < 1)
    throw std::domain_error("window model: block_size must be >= 1");
  const long long table = ipow(m.alphabet_size(), m.window_width);
  if (table > kBruteForceBudget)
    throw resource_error("window model: value table exceeds 2^22 entries");
  if (static_cast<long long>(m.window_values.size()) != table)
    throw std::domain_error(
        "window model: value table must have alphabet^window_width entries");
  for (int v : m.window_values) {
    if (v < 0)
      throw std::domain_error("window model: window values must be >= 0");
  }

  const int derived =
      max_block_sum(m, std::min<long long>(m.block_size, m.n_terms));
  if (c0 == 0) {
    m.c0 = std::max(1, derived);
  } else {
    if (derived > c0)
      throw std::domain_error("window model: block values exceed declared c0");
    m.c0 = c0;
  }
  return m;
}

WindowModel make_kk_events(int k1, int k2, long long n, double p) {
  if (k1 < 1 || k2 < 1)
    throw std::domain_error("kk_events: k1 and k2 must be >= 1");
  const int m = k1 + k2;
  if (n < m) throw std::domain_error("kk_events: n must be >= k1 + k2");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("kk_events: p must be in (0,1)");

  // symbol 0 = failure, 1 = success; pattern = k1 failures then k2 successes,
  // i.e. window bit value (2^{k2} - 1) with the oldest symbol most significant
  std::vector<int> values(std::size_t(1) << m, 0);
  values[std::size_t((1 << k2) - 1)] = 1;
  return make_window_model({1.0 - p, p}, m, std::move(values), n - m + 1, m,
                           /*c0=*/1);
}

WindowModel make_k_runs(int k, long long n, double p) {
  if (k < 1) throw std::domain_error("k_runs: k must be >= 1");
  if (n < 1) throw std::domain_error("k_runs: n must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("k_runs: p must be in (0,1)");

  std::vector<int> values(std::size_t(1) << k, 0);
  values[(std::size_t(1) << k) - 1] = 1;  // all-ones window
  return make_window_model({1.0 - p, p}, k, std::move(values), n, k,
                           /*c0=*/int(std::min<long long>(k, n)));
}

WindowModel make_cp2_model(long long n, double p, double pbar) {
  if (n < 1) throw std::domain_error("cp2: n must be >= 1");
  if (!(p > 0.0 && p < 1.0) || !(pbar > 0.0 && pbar < 1.0))
    throw std::domain_error("cp2: p and pbar must be in (0,1)");

  // symbol id = eta + 2*xi
  std::vector<double> probs = {
      (1.0 - p) * (1.0 - pbar), p * (1.0 - pbar), (1.0 - p) * pbar, p * pbar};
  // window (s_j, s_{j+1}): X = eta_j eta_{j+1} + 2 xi_j (1 - eta_j eta_{j+1})
  std::vector<int> values(16, 0);
  for (int left = 0; left < 4; ++left) {
    for (int right = 0; right < 4; ++right) {
      const int eta_l = left & 1, xi_l = left >> 1, eta_r = right & 1;
      const int run = eta_l * eta_r;
      values[std::size_t(left * 4 + right)] = run + 2 * xi_l * (1 - run);
    }
  }
  return make_window_model(std::move(probs), 2, std::move(values), n, 1,
                           /*c0=*/2);
}

Pmf exact_sum_law(const WindowModel& model) {
  const int a = model.alphabet_size();
  const long long states = ipow(a, model.window_width - 1);
  const long long max_sum = model.n_terms * model.max_window_value();
  const long long cap = max_sum + 1;
  if (states * cap > kDpCellBudget)
    throw resource_error(
        "exact_sum_law: state x sum cells exceed the 1e7 budget");

  std::vector<double> init = initial_state_probs(model, states);
  std::vector<double> dp(std::size_t(states * cap), 0.0);
  std::vector<double> next(dp.size(), 0.0);
  for (long long st = 0; st < states; ++st)
    dp[std::size_t(st * cap)] = init[std::size_t(st)];

  long long cur_max = 0;
  const int max_z = model.max_window_value();
  for (long long j = 0; j < model.n_terms; ++j) {
    const long long reach = cur_max + max_z;
    for (long long st = 0; st < states; ++st)
      std::fill(next.begin() + st * cap, next.begin() + st * cap + reach + 1,
                0.0);
    for (long long st = 0; st < states; ++st) {
      const long long base = st * cap;
      for (long long sum = 0; sum <= cur_max; ++sum) {
        const double mass = dp[std::size_t(base + sum)];
        if (mass == 0.0) continue;
        for (int sym = 0; sym < a; ++sym) {
          const long long window = st * a + sym;
          const long long ns = window % states;
          const int z = model.window_values[std::size_t(window)];
          next[std::size_t(ns * cap + sum + z)] +=
              mass * model.alphabet_probs[std::size_t(sym)];
        }
      }
    }
    dp.swap(next);
    cur_max = reach;
  }

  Pmf out;
  out.probs.assign(std::size_t(cap), 0.0);
  for (long long st = 0; st < states; ++st)
    for (long long sum = 0; sum < cap; ++sum)
      out.probs[std::size_t(sum)] += dp[std::size_t(st * cap + sum)];
  out.trunc_defect = 0.0;
  normalize_mass(out.probs);
  trim_trailing_zeros(out.probs);
  return out;
}

Pmf brute_force_law(const WindowModel& model) {
  const int a = model.alphabet_size();
  const long long len = model.driver_length();
  double log_count = double(len) * std::log(double(a));
  if (log_count > std::log(double(kBruteForceBudget)) + 1e-9)
    throw resource_error(
        "brute_force_law: alphabet^driver_length exceeds 2^22");
  const long long count = ipow(a, int(len));

  const long long states = ipow(a, model.window_width - 1);
  std::vector<int> sym(std::size_t(len), 0);
  std::vector<double> probs(
      std::size_t(model.n_terms * model.max_window_value() + 1), 0.0);
  for (long long idx = 0; idx < count; ++idx) {
    double prob = 1.0;
    long long state = 0;
    long long total = 0;
    for (long long pos = 0; pos < len; ++pos) {
      const int s = sym[std::size_t(pos)];
      prob *= model.alphabet_probs[std::size_t(s)];
      const long long window = state * a + s;
      state = window % states;
      if (pos >= model.window_width - 1)
        total += model.window_values[std::size_t(window)];
    }
    probs[std::size_t(total)] += prob;
    // odometer increment
    for (long long pos = len - 1; pos >= 0; --pos) {
      if (++sym[std::size_t(pos)] < a) break;
      sym[std::size_t(pos)] = 0;
    }
  }

  Pmf out;
  out.probs = std::move(probs);
  out.trunc_defect = 0.0;
  normalize_mass(out.probs);
  trim_trailing_zeros(out.probs);
  return out;
}

Pmf block_marginal(const WindowModel& model, long long j) {
  WindowModel sub = model;
  sub.n_terms = model.block_len(j);  // throws on bad index
  return exact_sum_law(sub);
}

double JointPair::marginal_x_mean() const {
  double s = 0.0;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (double v : p[x]) s += double(x) * v;
  return s;
}

double JointPair::marginal_y_mean() const {
  double s = 0.0;
  for (const auto& row : p)
    for (std::size_t y = 0; y < row.size(); ++y) s += double(y) * row[y];
  return s;
}

double JointPair::total_mass() const {
  double s = 0.0;
  for (const auto& row : p)
    for (double v : row) s += v;
  return s;
}

JointPair block_pair_joint(const WindowModel& model, long long j) {
  if (j < 2 || j > model.num_blocks())
    throw std::out_of_range("block_pair_joint: block index out of range");
  const long long b1 = model.block_len(j - 1);
  const long long b2 = model.block_len(j);

  const int a = model.alphabet_size();
  const long long states = ipow(a, model.window_width - 1);
  const long long cap = model.c0 + 1;
  if (states * cap * cap > kDpCellBudget)
    throw resource_error("block_pair_joint: state cells exceed the budget");

  std::vector<double> init = initial_state_probs(model, states);
  // dp[state][s1][s2]
  std::vector<double> dp(std::size_t(states * cap * cap), 0.0);
  std::vector<double> next(dp.size(), 0.0);
  for (long long st = 0; st < states; ++st)
    dp[std::size_t(st * cap * cap)] = init[std::size_t(st)];

  for (long long t = 0; t < b1 + b2; ++t) {
    const bool first_block = t < b1;
    std::fill(next.begin(), next.end(), 0.0);
    for (long long st = 0; st < states; ++st) {
      for (long long s1 = 0; s1 < cap; ++s1) {
        for (long long s2 = 0; s2 < cap; ++s2) {
          const double mass = dp[std::size_t((st * cap + s1) * cap + s2)];
          if (mass == 0.0) continue;
          for (int sym = 0; sym < a; ++sym) {
            const long long window = st * a + sym;
            const long long ns = window % states;
            const int z = model.window_values[std::size_t(window)];
            const long long n1 = first_block ? s1 + z : s1;
            const long long n2 = first_block ? s2 : s2 + z;
            next[std::size_t((ns * cap + n1) * cap + n2)] +=
                mass * model.alphabet_probs[std::size_t(sym)];
          }
        }
      }
    }
    dp.swap(next);
  }

  JointPair out;
  out.p.assign(std::size_t(cap), std::vector<double>(std::size_t(cap), 0.0));
  for (long long st = 0; st < states; ++st)
    for (long long s1 = 0; s1 < cap; ++s1)
      for (long long s2 = 0; s2 < cap; ++s2)
        out.p[std::size_t(s1)][std::size_t(s2)] +=
            dp[std::size_t((st * cap + s1) * cap + s2)];

  // trim all-zero trailing rows/columns
  auto row_zero = [](const std::vector<double>& r) {
    for (double v : r)
      if (v != 0.0) return false;
    return true;
  };
  while (out.p.size() > 1 && row_zero(out.p.back())) out.p.pop_back();
  std::size_t cols = 1;
  for (const auto& row : out.p)
    for (std::size_t y = row.size(); y-- > 1;)
      if (row[y] != 0.0) {
        cols = std::max(cols, y + 1);
        break;
      }
  for (auto& row : out.p) row.resize(cols);
  return out;
}

Pmf sample_sum(const WindowModel& model, std::uint64_t seed, long long reps) {
  if (reps < 1) throw std::domain_error("sample_sum: reps must be >= 1");

  std::mt19937_64 rng(seed);
  auto uniform = [&rng]() {
    return double(rng() >> 11) * 0x1.0p-53;  // 53-bit uniform in [0,1)
  };

  const int a = model.alphabet_size();
  std::vector<double> cdf(std::size_t(a), 0.0);
  double acc = 0.0;
  for (int s = 0; s < a; ++s) {
    acc += model.alphabet_probs[std::size_t(s)];
    cdf[std::size_t(s)] = acc;
  }

  const long long states = ipow(a, model.window_width - 1);
  const long long len = model.driver_length();
  std::vector<long long> counts(
      std::size_t(model.n_terms * model.max_window_value() + 1), 0);
  for (long long r = 0; r < reps; ++r) {
    long long state = 0, total = 0;
    for (long long pos = 0; pos < len; ++pos) {
      const double u = uniform();
      int s = 0;
      while (s + 1 < a && u >= cdf[std::size_t(s)]) ++s;
      const long long window = state * a + s;
      state = window % states;
      if (pos >= model.window_width - 1)
        total += model.window_values[std::size_t(window)];
    }
    ++counts[std::size_t(total)];
  }

  Pmf out;
  out.probs.resize(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k)
    out.probs[k] = double(counts[k]) / double(reps);
  out.trunc_defect = 0.0;
  trim_trailing_zeros(out.probs);
  return out;
}

}  // namespace cpapprox
