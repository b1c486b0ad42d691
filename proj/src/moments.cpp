#include "cpapprox/moments.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace cpapprox {

double factorial_moment(const Pmf& f, int m) {
  if (m < 1) throw std::domain_error("factorial_moment: m must be >= 1");
  double s = 0.0;
  for (std::size_t x = m; x < f.probs.size(); ++x) {
    double ff = 1.0;
    for (int i = 0; i < m; ++i) ff *= double(x - std::size_t(i));
    s += ff * f.probs[x];
  }
  return s;
}

double covariance(const JointPair& joint) {
  double total = 0.0;
  for (const auto& row : joint.p) {
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::domain_error("covariance: joint entries must be >= 0");
      total += v;
    }
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::domain_error("covariance: joint law must sum to 1");

  double exy = 0.0;
  for (std::size_t x = 0; x < joint.p.size(); ++x)
    for (std::size_t y = 0; y < joint.p[x].size(); ++y)
      exy += double(x) * double(y) * joint.p[x][y];
  return exy - joint.marginal_x_mean() * joint.marginal_y_mean();
}

double MomentSummary::nu_sum(int m) const {
  double s = 0.0;
  for (const auto& row : nu) s += row[std::size_t(m - 1)];
  return s;
}

double MomentSummary::nu1_sq_sum() const {
  double s = 0.0;
  for (const auto& row : nu) s += row[0] * row[0];
  return s;
}

double MomentSummary::cov_abs_sum() const {
  double s = 0.0;
  for (double c : cov_adjacent) s += std::abs(c);
  return s;
}

MomentSummary summarize(const WindowModel& model, int s) {
  if (s < 1) throw std::domain_error("summarize: s must be >= 1");
  const long long blocks = model.num_blocks();

  MomentSummary out;
  out.n_blocks = blocks;
  out.nu.resize(std::size_t(blocks));

  // i.i.d. drivers: block laws depend only on the block length
  std::map<long long, Pmf> marginal_by_len;
  for (long long j = 1; j <= blocks; ++j) {
    const long long len = model.block_len(j);
    auto it = marginal_by_len.find(len);
    if (it == marginal_by_len.end())
      it = marginal_by_len.emplace(len, block_marginal(model, j)).first;
    const Pmf& law = it->second;
    auto& row = out.nu[std::size_t(j - 1)];
    row.resize(std::size_t(s + 1));
    for (int m = 1; m <= s + 1; ++m)
      row[std::size_t(m - 1)] = factorial_moment(law, m);
  }

  std::map<long long, double> cov_by_len;
  out.cov_adjacent.resize(std::size_t(std::max<long long>(blocks - 1, 0)));
  for (long long j = 2; j <= blocks; ++j) {
    const long long len = model.block_len(j);
    auto it = cov_by_len.find(len);
    if (it == cov_by_len.end())
      it = cov_by_len.emplace(len, covariance(block_pair_joint(model, j)))
               .first;
    out.cov_adjacent[std::size_t(j - 2)] = it->second;
  }

  for (const auto& row : out.nu) {
    out.gamma1 += row[0];
    out.nu1_max = std::max(out.nu1_max, row[0]);
    out.gamma2 += 0.5 * (row[1] - row[0] * row[0]);
  }
  for (double c : out.cov_adjacent) out.gamma2 += c;
  return out;
}

double condition_target(const CpParams& params, int m) {
  // sum_{l=m}^{s} C(l,m) lambda_l, binomials by running product
  double target = 0.0;
  double binom = 1.0;  // C(l, m) starting at l = m
  for (int l = m; l <= params.s; ++l) {
    target += binom * params.lambdas[std::size_t(l - 1)];
    binom = binom * double(l + 1) / double(l + 1 - m);
  }
  return target;
}

ConvergenceReport check_convergence_conditions(
    const std::vector<MomentSummary>& summaries, const CpParams& params) {
  params.validate();
  if (summaries.size() < 2)
    throw std::invalid_argument(
        "check_convergence_conditions: need at least two summaries");

  ConvergenceReport rep;
  std::vector<double> targets(std::size_t(params.s));
  double factorial = 1.0;
  for (int m = 1; m <= params.s; ++m)
    targets[std::size_t(m - 1)] = condition_target(params, m);

  for (const auto& sum : summaries) {
    if (!sum.nu.empty() &&
        sum.nu.front().size() < std::size_t(params.s + 1))
      throw std::domain_error(
          "check_convergence_conditions: summaries lack moment orders");
    ConditionRow row;
    row.cond3 = sum.nu1_max;
    row.cond4.resize(std::size_t(params.s));
    factorial = 1.0;
    for (int m = 1; m <= params.s; ++m) {
      factorial *= double(m);
      row.cond4[std::size_t(m - 1)] =
          std::abs(sum.nu_sum(m) / factorial - targets[std::size_t(m - 1)]);
    }
    row.cond5 = sum.nu_sum(params.s + 1);
    row.cond6 = sum.cov_abs_sum();
    rep.rows.push_back(std::move(row));
  }

  auto decreasing = [](auto&& get, const std::vector<ConditionRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(get(rows[i]) < get(rows[i - 1]))) return false;
    return true;
  };
  rep.trend3 = decreasing([](const ConditionRow& r) { return r.cond3; },
                          rep.rows);
  rep.trend5 = decreasing([](const ConditionRow& r) { return r.cond5; },
                          rep.rows);
  rep.trend6 = decreasing([](const ConditionRow& r) { return r.cond6; },
                          rep.rows);
  rep.trend4 = true;
  for (int m = 0; m < params.s; ++m) {
    if (!decreasing(
            [m](const ConditionRow& r) { return r.cond4[std::size_t(m)]; },
            rep.rows))
      rep.trend4 = false;
  }
  return rep;
}

}  // namespace cpapprox
