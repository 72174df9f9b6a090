#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lrd {

struct Periodogram {
  std::vector<double> freqs;      // 2 pi j / N, j = 1..floor((N-1)/2)
  std::vector<double> ordinates;  // |sum_t X_t exp(-i t l_j)|^2 / (2 pi N)
};

Periodogram periodogram(std::span<const double> x);

struct LocalWhittleResult {
  double d = 0.0;
  std::size_t m = 0;
};

// Robinson's local Whittle estimator over the first m Fourier frequencies,
// minimised over d in (-0.5, 1). m = 0 selects floor(N / 30).
LocalWhittleResult local_whittle(std::span<const double> x, std::size_t m = 0);
double local_whittle_objective(std::span<const double> ordinates, std::size_t m, double d);
double local_whittle_fit(std::span<const double> ordinates, std::size_t m);

struct FexpResult {
  double d = 0.0;
  int order = 0;  // number of cosine terms kept
  std::vector<double> criterion;
};

// Global log-periodogram regression of log I_j + gamma_E on
// (1, -2 log|2 sin(l_j/2)|, cos(l_j), ..., cos(p l_j)), p chosen by
// RSS / n + kappa (p + 1) (pi^2 / 6) / n over p = 0..max_order.
FexpResult fexp_estimate(std::span<const double> x, double kappa = 2.0, int max_order = -1);
FexpResult fexp_fit(const Periodogram& pg, double kappa = 2.0, int max_order = -1);

}  // namespace lrd
