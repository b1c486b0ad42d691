#include "cpapprox/heinrich.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cpapprox {

namespace {

constexpr long long kTupleBudget = 1LL << 20;
constexpr int kMaxJointBlocks = 12;
constexpr long long kDpCellBudget = 10'000'000;

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

using cplx = std::complex<double>;

// Per-point tables over a joint law: window moments M[a][b] = E(Y_a...Y_b),
// the centered expectations wE[a][b], and E|Y_i|^2 per block (0-based a, b).
struct HeinrichTables {
  int n = 0;
  std::vector<cplx> moment;    // index a*n + b, a <= b
  std::vector<cplx> centered;  // same layout
  std::vector<double> y_sq;    // E |Y_i|^2

  cplx m(int a, int b) const { return moment[std::size_t(a * n + b)]; }
  cplx we(int a, int b) const { return centered[std::size_t(a * n + b)]; }
};

HeinrichTables build_tables(const JointLaw& law, double t, double h) {
  HeinrichTables tab;
  const int n = law.n_blocks;
  tab.n = n;
  tab.moment.assign(std::size_t(n) * std::size_t(n), cplx(0.0, 0.0));
  tab.centered.assign(tab.moment.size(), cplx(0.0, 0.0));
  tab.y_sq.assign(std::size_t(n), 0.0);

  // y_by_value[v] = exp(u v) - 1; exactly zero at v = 0
  std::vector<cplx> y_by_value(std::size_t(law.arity));
  for (int v = 0; v < law.arity; ++v) {
    if (v == 0) {
      y_by_value[0] = cplx(0.0, 0.0);
    } else {
      y_by_value[std::size_t(v)] =
          std::polar(std::exp(h * v), t * v) - cplx(1.0, 0.0);
    }
  }

  std::vector<int> digits(std::size_t(n), 0);
  for (std::size_t idx = 0; idx < law.probs.size(); ++idx) {
    const double p = law.probs[idx];
    if (p == 0.0) continue;
    std::size_t rest = idx;
    for (int i = 0; i < n; ++i) {
      digits[std::size_t(i)] = int(rest % std::size_t(law.arity));
      rest /= std::size_t(law.arity);
    }
    for (int i = 0; i < n; ++i)
      tab.y_sq[std::size_t(i)] +=
          p * std::norm(y_by_value[std::size_t(digits[std::size_t(i)])]);
    for (int a = 0; a < n; ++a) {
      cplx prod(1.0, 0.0);
      for (int b = a; b < n; ++b) {
        const cplx y = y_by_value[std::size_t(digits[std::size_t(b)])];
        if (y == cplx(0.0, 0.0)) break;  // all longer windows vanish too
        prod *= y;
        tab.moment[std::size_t(a * n + b)] += p * prod;
      }
    }
  }

  for (int a = n - 1; a >= 0; --a) {
    tab.centered[std::size_t(a * n + a)] = tab.m(a, a);
    for (int b = a + 1; b < n; ++b) {
      cplx v = tab.m(a, b);
      for (int i = a; i < b; ++i) v -= tab.we(a, i) * tab.m(i + 1, b);
      tab.centered[std::size_t(a * n + b)] = v;
    }
  }
  return tab;
}

double region_w(const HeinrichTables& tab) {
  double w2 = 0.0;
  for (double v : tab.y_sq) w2 = std::max(w2, v);
  return std::sqrt(w2);
}

std::vector<cplx> phi_from_tables(const HeinrichTables& tab) {
  const int n = tab.n;
  std::vector<cplx> phi(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    cplx v = cplx(1.0, 0.0) + tab.m(k, k);
    for (int j = k - 1; j >= 0; --j) {
      cplx denom(1.0, 0.0);
      for (int i = j; i < k; ++i) denom *= phi[std::size_t(i)];
      v += tab.we(j, k) / denom;
    }
    if (std::abs(v) < 1e-6)
      throw std::runtime_error("phi_sequence: degenerate factor |phi| < 1e-6");
    phi[std::size_t(k)] = v;
  }
  return phi;
}

cplx log_sum(const std::vector<cplx>& phis) {
  cplx a(0.0, 0.0);
  for (const cplx& phi : phis) {
    if (std::abs(phi - cplx(1.0, 0.0)) >= 1.0)
      throw std::domain_error("log_sum_A: |phi - 1| >= 1");
    a += std::log(phi);
  }
  return a;
}

cplx a_at(const JointLaw& law, double t, double h) {
  const HeinrichTables tab = build_tables(law, t, h);
  if (region_w(tab) > 1.0 / 6.0)
    throw std::domain_error("lemma_checks: point left the region");
  return log_sum(phi_from_tables(tab));
}

}  // namespace

EvalPoint::EvalPoint(double t_, double h_) : t(t_), h(h_) {
  if (!(std::abs(t) <= std::numbers::pi))
    throw std::domain_error("EvalPoint: |t| must be <= pi");
  if (!(h >= 0.0)) throw std::domain_error("EvalPoint: h must be >= 0");
}

Pmf JointLaw::marginal(int i) const {
  if (i < 1 || i > n_blocks)
    throw std::out_of_range("JointLaw::marginal: block index out of range");
  Pmf out;
  out.probs.assign(std::size_t(arity), 0.0);
  for (std::size_t idx = 0; idx < probs.size(); ++idx)
    out.probs[std::size_t(value_at(idx, i))] += probs[idx];
  while (out.probs.size() > 1 && out.probs.back() == 0.0) out.probs.pop_back();
  return out;
}

int JointLaw::value_at(std::size_t tuple_index, int i) const {
  std::size_t rest = tuple_index;
  for (int b = 1; b < i; ++b) rest /= std::size_t(arity);
  return int(rest % std::size_t(arity));
}

JointLaw joint_law(const WindowModel& model, int n_blocks) {
  if (n_blocks < 1 || n_blocks > model.num_blocks())
    throw std::out_of_range("joint_law: n_blocks out of range");
  if (n_blocks > kMaxJointBlocks)
    throw resource_error("joint_law: n_blocks capped at 12");

  JointLaw law;
  law.n_blocks = n_blocks;
  law.arity = model.c0 + 1;
  const long long tuples = ipow(law.arity, n_blocks);
  if (tuples > kTupleBudget)
    throw resource_error("joint_law: tuple support exceeds 2^20");

  const int a = model.alphabet_size();
  const long long states = ipow(a, model.window_width - 1);
  if (states * tuples > kDpCellBudget)
    throw resource_error("joint_law: state x tuple cells exceed the budget");

  const long long terms =
      std::min<long long>(model.n_terms, 1LL * n_blocks * model.block_size);

  std::vector<double> init(std::size_t(states), 0.0);
  {
    init[0] = 1.0;
    for (int pos = 0; pos < model.window_width - 1; ++pos) {
      std::vector<double> nxt(init.size(), 0.0);
      const long long prefix = ipow(a, pos);
      for (long long st = 0; st < prefix; ++st) {
        if (init[std::size_t(st)] == 0.0) continue;
        for (int sym = 0; sym < a; ++sym)
          nxt[std::size_t(st * a + sym)] +=
              init[std::size_t(st)] * model.alphabet_probs[std::size_t(sym)];
      }
      init.swap(nxt);
    }
  }

  std::vector<double> dp(std::size_t(states * tuples), 0.0);
  std::vector<double> next(dp.size(), 0.0);
  for (long long st = 0; st < states; ++st)
    dp[std::size_t(st * tuples)] = init[std::size_t(st)];

  for (long long term = 0; term < terms; ++term) {
    const long long block = term / model.block_size;  // 0-based
    const long long scale = ipow(law.arity, int(block));
    std::fill(next.begin(), next.end(), 0.0);
    for (long long st = 0; st < states; ++st) {
      const long long base = st * tuples;
      for (long long idx = 0; idx < tuples; ++idx) {
        const double mass = dp[std::size_t(base + idx)];
        if (mass == 0.0) continue;
        for (int sym = 0; sym < a; ++sym) {
          const long long window = st * a + sym;
          const long long ns = window % states;
          const int z = model.window_values[std::size_t(window)];
          next[std::size_t(ns * tuples + idx + z * scale)] +=
              mass * model.alphabet_probs[std::size_t(sym)];
        }
      }
    }
    dp.swap(next);
  }

  law.probs.assign(std::size_t(tuples), 0.0);
  for (long long st = 0; st < states; ++st)
    for (long long idx = 0; idx < tuples; ++idx)
      law.probs[std::size_t(idx)] += dp[std::size_t(st * tuples + idx)];
  return law;
}

std::complex<double> centered_expectation(const JointLaw& law,
                                          const EvalPoint& point, int j,
                                          int k) {
  if (j < 1 || k < j || k > law.n_blocks)
    throw std::out_of_range("centered_expectation: bad window");
  const HeinrichTables tab = build_tables(law, point.t, point.h);
  return tab.we(j - 1, k - 1);
}

RegionReport region_check(const WindowModel& model, const EvalPoint& point) {
  RegionReport rep;
  double w2 = 0.0;
  // block laws depend only on the block length; check the distinct ones
  const long long blocks = model.num_blocks();
  std::vector<long long> distinct = {1};
  if (blocks > 1 && model.block_len(blocks) != model.block_len(1))
    distinct.push_back(blocks);
  for (long long j : distinct) {
    const Pmf law = block_marginal(model, j);
    double e = 0.0;
    for (std::size_t x = 1; x < law.probs.size(); ++x) {
      const std::complex<double> y =
          std::polar(std::exp(point.h * double(x)), point.t * double(x)) -
          std::complex<double>(1.0, 0.0);
      e += law.probs[x] * std::norm(y);
    }
    w2 = std::max(w2, e);
  }
  rep.w = std::sqrt(w2);
  rep.in_region = rep.w <= 1.0 / 6.0;
  return rep;
}

std::vector<std::complex<double>> phi_sequence(const JointLaw& law,
                                               const EvalPoint& point) {
  const HeinrichTables tab = build_tables(law, point.t, point.h);
  if (region_w(tab) > 1.0 / 6.0)
    throw std::domain_error("phi_sequence: point outside the region w <= 1/6");
  return phi_from_tables(tab);
}

std::complex<double> log_sum_A(
    const std::vector<std::complex<double>>& phis) {
  return log_sum(phis);
}

LemmaReport lemma_checks(const WindowModel& model, const EvalPoint& point,
                         const CpParams& params) {
  params.validate();
  if (model.c0 > params.c0)
    throw std::domain_error("lemma_checks: model exceeds the declared c0");

  const int n = int(model.num_blocks());
  const JointLaw law = joint_law(model, n);
  const HeinrichTables tab = build_tables(law, point.t, point.h);

  std::vector<double> nu1(std::size_t(n), 0.0);
  double gamma1 = 0.0, nu1_max = 0.0;
  for (int i = 1; i <= n; ++i) {
    nu1[std::size_t(i - 1)] = law.marginal(i).mean();
    gamma1 += nu1[std::size_t(i - 1)];
    nu1_max = std::max(nu1_max, nu1[std::size_t(i - 1)]);
  }

  const double a = std::exp(point.h * params.c0) * (2.0 + point.h) *
                   std::sqrt(double(params.c0));
  if (a * a * nu1_max > 0.01)
    throw std::domain_error(
        "lemma_checks: precondition a^2 max nu_1 <= 1/100 fails");

  LemmaReport rep;
  auto push = [&rep](std::string name, double value, double bound,
                     double tol) {
    rep.checks.push_back(
        {std::move(name), value, bound, value <= bound + tol});
  };

  // centered-expectation product bound, windows of length <= 4
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < std::min(n, j + 4); ++k) {
      double bound = std::pow(2.0, double(k - j));
      for (int m = j; m <= k; ++m) bound *= std::sqrt(tab.y_sq[std::size_t(m)]);
      push("wE(" + std::to_string(j + 1) + ".." + std::to_string(k + 1) + ")",
           std::abs(tab.we(j, k)), bound, 1e-12);
    }
  }

  const std::vector<cplx> phis = phi_from_tables(tab);
  for (int k = 0; k < n; ++k) {
    const double dist = std::abs(phis[std::size_t(k)] - cplx(1.0, 0.0));
    const double prev = k > 0 ? nu1[std::size_t(k - 1)] : 0.0;
    push("|phi_" + std::to_string(k + 1) + " - 1| moment bound", dist,
         a * a / 6.0 * (10.0 * prev + 13.0 * nu1[std::size_t(k)]), 1e-12);
    push("|phi_" + std::to_string(k + 1) + " - 1| <= 1/25", dist, 0.04, 1e-12);
  }

  const cplx a_val = log_sum(phis);
  push("|A|", std::abs(a_val), 4.0 * a * a * gamma1, 1e-10);

  // |A'| by central difference in t
  const double step = 1e-5;
  const cplx a_deriv =
      (a_at(law, point.t + step, point.h) - a_at(law, point.t - step, point.h)) /
      cplx(2.0 * step, 0.0);
  push("|A'| (finite difference)", std::abs(a_deriv), 4.0 * a * a * gamma1,
       1e-4);

  rep.all_hold = true;
  for (const auto& c : rep.checks) rep.all_hold = rep.all_hold && c.holds;
  return rep;
}

BergstromReport bergstrom_check(std::complex<double> alpha,
                                std::complex<double> beta, int cap_n, int s) {
  if (cap_n < 0)
    throw std::domain_error("bergstrom_check: cap_n must be >= 0");
  if (s < 0 || s > cap_n)
    throw std::domain_error("bergstrom_check: s must lie in [0, cap_n]");

  auto power = [](cplx base, int e) {
    cplx r(1.0, 0.0);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
  };

  BergstromReport rep;
  rep.lhs = power(alpha, cap_n);

  const cplx diff = alpha - beta;
  cplx first(0.0, 0.0);
  double binom = 1.0;  // C(N, m)
  for (int m = 0; m <= s; ++m) {
    first += binom * power(beta, cap_n - m) * power(diff, m);
    binom = binom * double(cap_n - m) / double(m + 1);
  }
  cplx second(0.0, 0.0);
  double binom2 = 1.0;  // C(m-1, s) at m = s+1
  for (int m = s + 1; m <= cap_n; ++m) {
    second += binom2 * power(alpha, cap_n - m) * power(diff, s + 1) *
              power(beta, m - s - 1);
    binom2 = binom2 * double(m) / double(m - s);
  }
  rep.rhs = first + second;
  rep.abs_err = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace cpapprox
