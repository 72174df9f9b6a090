#pragma once

#include <algorithm>
#include <cmath>

#include "lrd/errors.hpp"
#include "lrd/fft.hpp"

namespace lrd {

template <class AutocovFn>
std::vector<double> circulant_sample(AutocovFn&& autocov, std::size_t n, rng::Engine& engine) {
  if (n == 0) return {};
  std::size_t half = fft::next_fast_size(std::max<std::size_t>(n - 1, 1));
  for (int attempt = 0; attempt < 4; ++attempt, half = fft::next_fast_size(2 * half)) {
    const std::vector<double> gamma = autocov(half);
    std::vector<double> eig = embedding_eigenvalues(gamma, half);
    double total = 0.0;
    double negative = 0.0;
    for (double v : eig) {
      total += std::abs(v);
      if (v < 0.0) negative -= v;
    }
    if (negative > 1e-6 * total) continue;
    for (double& v : eig) v = std::max(v, 0.0);
    return circulant_draw(eig, n, engine);
  }
  throw NumericError("circulant embedding: negative eigenvalues persist after enlarging the embedding");
}

}  // namespace lrd
