#pragma once

// Brute-force reference computations shared by the test suites. Nothing here
// calls into the library's fast paths.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "lrd/quadrature.hpp"

namespace oracle {

inline double psi_poly(double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  return x * x * x * std::pow(1.0 - x, 3) * (x * x * x - 1.5 * x * x + 15.0 / 22.0 * x - 1.0 / 11.0);
}

// int_0^1 psi(t) e^{-iut} dt by composite Gauss-Legendre.
inline std::complex<double> psi_hat(double u, int panels = 0) {
  static const lrd::quad::GaussLegendre gl(40);
  if (panels == 0) panels = 4 + static_cast<int>(std::abs(u) / 2.0);
  double re = 0.0;
  double im = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels;
    const double b = static_cast<double>(p + 1) / panels;
    re += gl.integrate([&](double t) { return psi_poly(t) * std::cos(u * t); }, a, b);
    im -= gl.integrate([&](double t) { return psi_poly(t) * std::sin(u * t); }, a, b);
  }
  return {re, im};
}

// e(a, b) = a^{-1/2} sum_{t=1}^{N} X_t psi((t - b)/a), b = 1..N-a (double loop).
inline std::vector<double> wavelet_coeffs(std::span<const double> x, std::size_t a) {
  const std::size_t n = x.size();
  std::vector<double> e;
  for (std::size_t b = 1; b + a <= n; ++b) {
    double s = 0.0;
    for (std::size_t t = 1; t <= n; ++t) {
      s += x[t - 1] * psi_poly((static_cast<double>(t) - static_cast<double>(b)) / static_cast<double>(a));
    }
    e.push_back(s / std::sqrt(static_cast<double>(a)));
  }
  return e;
}

inline double variogram_point(std::span<const double> x, std::size_t a) {
  auto e = wavelet_coeffs(x, a);
  double s = 0.0;
  for (double v : e) s += v * v;
  return s / static_cast<double>(e.size());
}

// Simple least-squares line via closed-form normal equations.
struct Line {
  double intercept;
  double slope;
};
inline Line ls_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {(sy - slope * sx) / n, slope};
}

inline double sample_autocorr(std::span<const double> x, std::size_t lag) {
  const std::size_t n = x.size();
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double c0 = 0.0, ck = 0.0;
  for (std::size_t t = 0; t < n; ++t) c0 += (x[t] - mean) * (x[t] - mean);
  for (std::size_t t = 0; t + lag < n; ++t) ck += (x[t] - mean) * (x[t + lag] - mean);
  return ck / c0;
}

inline double mean(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x) {
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

}  // namespace oracle
