#pragma once

namespace cpapprox {

// Driver parameters solving the limit-target equations of the three example
// families, so the compound Poisson target is held while n grows.

// Solves (n - k1 - k2 + 1) (1-p)^{k1} p^{k2} = lambda for the smaller root
// (the p -> 0 branch) by bisection, residual <= 1e-12.
double calibrate_kk_events(int k1, int k2, long long n, double lambda);

// Solves n p^k = lambda: p = (lambda/n)^{1/k}.
double calibrate_k_runs(int k, long long n, double lambda);

struct Cp2Calibration {
  double p = 0.0;
  double pbar = 0.0;
};

// Solves n p^2 = lambda1 and n pbar = lambda2.
Cp2Calibration calibrate_cp2(long long n, double lambda1, double lambda2);

}  // namespace cpapprox
