#include "cpapprox/pmf.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpapprox {

namespace {

void trim_trailing_zeros(std::vector<double>& v) {
  while (v.size() > 1 && v.back() == 0.0) v.pop_back();
}

}  // namespace

double Pmf::total_mass() const {
  double s = 0.0;
  for (double p : probs) s += p;
  return s;
}

double Pmf::mean() const {
  double s = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) s += double(k) * probs[k];
  return s;
}

double Pmf::variance() const {
  const double m = mean();
  double s = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double d = double(k) - m;
    s += d * d * probs[k];
  }
  return s;
}

Pmf Pmf::point_mass(std::size_t k) {
  Pmf f;
  f.probs.assign(k + 1, 0.0);
  f.probs[k] = 1.0;
  return f;
}

void CpParams::validate() const {
  if (s < 1) throw std::domain_error("CpParams: s must be >= 1");
  if (s > 20) throw std::domain_error("CpParams: s > 20 not supported");
  if (static_cast<int>(lambdas.size()) != s)
    throw std::domain_error("CpParams: lambdas must have length s");
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l))
      throw std::domain_error("CpParams: lambda_m must be nonnegative");
  }
  if (!(h >= 0.0) || !std::isfinite(h))
    throw std::domain_error("CpParams: h must be nonnegative");
  if (c0 < 1) throw std::domain_error("CpParams: c0 must be >= 1");
}

bool is_valid_pmf(const Pmf& f, double tol) {
  if (f.probs.empty()) return false;
  for (double p : f.probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) return false;
  }
  if (!(f.trunc_defect >= 0.0)) return false;
  if (f.probs.size() > 1 && f.probs.back() == 0.0) return false;
  const double total = f.total_mass() + f.trunc_defect;
  return std::abs(total - 1.0) <= tol;
}

Pmf poisson_pmf(double lambda, double weighted_tail_tol, double h) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::domain_error("poisson_pmf: lambda must be nonnegative");
  if (!(weighted_tail_tol > 0.0))
    throw std::domain_error("poisson_pmf: weighted_tail_tol must be positive");
  if (!(h >= 0.0))
    throw std::domain_error("poisson_pmf: h must be nonnegative");

  Pmf out;
  if (lambda == 0.0) return out;  // point mass at 0

  const double weight_step = std::exp(h);
  std::vector<double> probs;
  double term = std::exp(-lambda);  // e^{-lambda} lambda^k / k!
  double sum = 0.0;
  for (std::size_t k = 0;; ++k) {
    probs.push_back(term);
    sum += term;
    const double next = term * lambda / double(k + 1);
    // Terms beyond k+1 shrink at least by ratio e^h*lambda/(k+2), so once
    // that ratio is < 1 the weighted tail is a geometric series.
    const double ratio = weight_step * lambda / double(k + 2);
    if (ratio < 1.0) {
      const double tail_bound =
          std::exp(h * double(k + 1)) * next / (1.0 - ratio);
      if (tail_bound < weighted_tail_tol) break;
    }
    term = next;
    if (k > 1000000)
      throw std::runtime_error("poisson_pmf: truncation did not converge");
  }
  trim_trailing_zeros(probs);
  out.probs = std::move(probs);
  out.trunc_defect = std::max(0.0, 1.0 - sum);
  return out;
}

Pmf convolve(const Pmf& f, const Pmf& g) {
  Pmf out;
  out.probs.assign(f.probs.size() + g.probs.size() - 1, 0.0);
  for (std::size_t i = 0; i < f.probs.size(); ++i) {
    if (f.probs[i] == 0.0) continue;
    for (std::size_t j = 0; j < g.probs.size(); ++j)
      out.probs[i + j] += f.probs[i] * g.probs[j];
  }
  out.trunc_defect = f.trunc_defect + g.trunc_defect;
  for (double& v : out.probs) {
    if (v < 0.0) {
      if (v < -1e-15)
        throw std::logic_error("convolve: negative mass beyond round-off");
      out.trunc_defect += -v;
      v = 0.0;
    }
  }
  trim_trailing_zeros(out.probs);
  return out;
}

Pmf scale_support(const Pmf& f, int m) {
  if (m < 1) throw std::domain_error("scale_support: m must be >= 1");
  if (m == 1) return f;
  Pmf out;
  out.probs.assign((f.probs.size() - 1) * std::size_t(m) + 1, 0.0);
  for (std::size_t k = 0; k < f.probs.size(); ++k)
    out.probs[k * std::size_t(m)] = f.probs[k];
  out.trunc_defect = f.trunc_defect;
  trim_trailing_zeros(out.probs);
  return out;
}

Pmf compound_poisson_pmf(const CpParams& params, double weighted_tail_tol) {
  params.validate();
  if (!(weighted_tail_tol > 0.0))
    throw std::domain_error(
        "compound_poisson_pmf: weighted_tail_tol must be positive");

  // Split the weighted tail budget across components. A component's discarded
  // weighted mass gets multiplied by at most the full weighted mass of the
  // remaining convolution, exp(sum_l lambda_l (e^{h l} - 1)).
  double weighted_log_mass = 0.0;
  for (int m = 1; m <= params.s; ++m)
    weighted_log_mass +=
        params.lambdas[m - 1] * (std::exp(params.h * m) - 1.0);
  const double weighted_mass = std::exp(weighted_log_mass);
  if (!std::isfinite(weighted_mass))
    throw std::domain_error(
        "compound_poisson_pmf: weighted total mass overflows");
  const double comp_tol =
      weighted_tail_tol / (double(params.s) * weighted_mass);

  Pmf out = Pmf::point_mass(0);
  for (int m = 1; m <= params.s; ++m) {
    if (params.lambdas[m - 1] == 0.0) continue;
    Pmf comp = poisson_pmf(params.lambdas[m - 1], comp_tol, params.h * m);
    out = convolve(out, scale_support(comp, m));
  }
  return out;
}

}  // namespace cpapprox
