#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "lrd/quadrature.hpp"

namespace lrd {

// The analyzing function
//   psi(x) = x^3 (1-x)^3 (x^3 - 3/2 x^2 + 15/22 x - 1/11)   on [0, 1], 0 elsewhere,
// a degree-9 polynomial that is C^2 on R, has zero mean and two further
// vanishing moments (int t psi = int t^2 psi = 0), and is antisymmetric
// about 1/2.
class WaveletSpec {
 public:
  static constexpr int kDegree = 9;
  static constexpr int kRegularity = 2;
  // Below this |u| the Fourier transform is summed as a power series; above
  // it the integration-by-parts closed form is used.
  static constexpr double kSeriesSwitch = 8.0;

  static const WaveletSpec& standard();

  double operator()(double x) const;
  // psi_hat(u) = int_0^1 psi(t) exp(-i u t) dt
  std::complex<double> hat(double u) const;
  double hat_sq(double u) const;

  // The two branches of hat(), exposed for continuity checks.
  std::complex<double> hat_series(double u) const;
  std::complex<double> hat_closed(double u) const;

  // Ascending-power coefficients of the polynomial piece.
  std::span<const double> poly_coeffs() const { return coeffs_; }
  // int_0^1 t^n psi(t) dt
  double moment(int n) const;
  // int_0^1 psi(t)^2 dt
  double l2_norm_sq() const { return l2_norm_sq_; }
  double support_lo() const { return 0.0; }
  double support_hi() const { return 1.0; }

 private:
  WaveletSpec();

  static constexpr int kSeriesTerms = 64;
  std::array<double, kDegree + 1> coeffs_{};
  std::array<double, kDegree + 1> deriv_at_0_{};
  std::array<double, kDegree + 1> deriv_at_1_{};
  std::array<double, kSeriesTerms> moments_{};
  std::array<double, kSeriesTerms / 2> series_even_{};  // (-1)^k M_{2k} / (2k)!
  std::array<double, kSeriesTerms / 2> series_odd_{};   // sign * M_{2k+1} / (2k+1)!
  double l2_norm_sq_ = 0.0;
};

double psi_eval(double x);
std::complex<double> psi_hat(double u);

// K(alpha) = int_R |psi_hat(u)|^2 |u|^(-alpha) du, defined for alpha < 1.
double k_integral(double alpha);

// Asymptotic covariance of the log-variogram vector at scales r_i * a:
//   gamma_ij = 4 pi (r_i r_j)^(1-2d) / K(2d)^2 * int_R |psi_hat(r_i l)|^2 |psi_hat(r_j l)|^2 |l|^(-4d) dl
struct CovarianceModel {
  double d = 0.0;
  std::vector<double> ratios;
  Eigen::MatrixXd gamma;
  double k_2d = 0.0;

  int ell() const { return static_cast<int>(ratios.size()); }
};

struct GammaOptions {
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
};

CovarianceModel gamma_matrix(double d, std::span<const double> ratios, const GammaOptions& opt = {});
// Ratios fixed to 1, 2, ..., ell.
CovarianceModel gamma_matrix(double d, int ell, const GammaOptions& opt = {});

// Cholesky factor of a covariance matrix. When the plain factorisation fails
// or is numerically meaningless, 1e-10 * trace / ell is added to the diagonal
// and the factorisation retried once.
class CovarianceFactor {
 public:
  explicit CovarianceFactor(const Eigen::MatrixXd& gamma);

  // L^{-1} m, so that (L^{-1} m)'(L^{-1} m) = m' Gamma^{-1} m.
  Eigen::MatrixXd whiten(const Eigen::MatrixXd& m) const;
  double jitter() const { return jitter_; }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  double jitter_ = 0.0;
};

// Design matrix with rows (1, log x_i).
Eigen::MatrixXd log_design(std::span<const double> x);

// sigma^2_d(ell) = (0 1/2) (Z' Gamma^{-1} Z)^{-1} (0 1/2)', Z rows (1, log r_i).
double sigma2_d(const CovarianceModel& cov);

}  // namespace lrd
