#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "lrd/fft.hpp"
#include "lrd/wavelet.hpp"

namespace lrd {

// e(a, b) = a^(-1/2) sum_t X_t psi((t - b) / a) for b = 1..N-a. Requires 2 <= a <= N/2.
std::vector<double> wavelet_coeffs(std::span<const double> x, std::size_t a);

struct Variogram {
  std::vector<std::size_t> scales;
  std::vector<double> t_values;  // T_N(a_i) = mean of e(a_i, b)^2 over b
  std::size_t n = 0;

  std::size_t size() const { return scales.size(); }
  std::vector<double> log_scales() const;
  std::vector<double> log_t() const;
};

// Computes T_N(a) for one series, caching the transform of the series and
// every scale already evaluated. Not thread-safe; use one engine per series.
class VariogramEngine {
 public:
  // Scales up to this size are summed directly, larger ones through the FFT.
  static constexpr std::size_t kDirectMaxScale = 48;

  explicit VariogramEngine(std::span<const double> x);

  std::size_t n() const { return x_.size(); }
  double t_value(std::size_t a);
  Variogram variogram(std::span<const std::size_t> scales);

 private:
  double direct(std::size_t a) const;
  double via_fft(std::size_t a);

  std::vector<double> x_;
  std::size_t fft_size_ = 0;
  std::vector<fft::cplx> x_hat_;
  std::map<std::size_t, double> cache_;
  double degenerate_floor_ = 0.0;
};

Variogram variogram(std::span<const double> x, std::span<const std::size_t> scales);

struct LineFit {
  double c = 0.0;    // intercept
  double d = 0.0;    // slope / 2
  double rss = 0.0;  // residual sum of squares
};

// Least squares line through (log a_i, log T(a_i)).
LineFit ols_fit(const Variogram& vg);
LineFit ols_fit(std::span<const double> log_x, std::span<const double> log_y);

struct GlsFit {
  double c = 0.0;
  double d = 0.0;
  double quad_form = 0.0;  // r' Gamma^{-1} r with r the fitted residuals
  double sigma2 = 0.0;     // (0 1/2) (Z' Gamma^{-1} Z)^{-1} (0 1/2)'
  double jitter = 0.0;
};

// Generalised least squares of log_y on (1, log_x) with covariance gamma.
GlsFit gls_fit(std::span<const double> log_x, std::span<const double> log_y, const Eigen::MatrixXd& gamma);

// Smallest admissible first scale. Below it the a - 1 samples of psi(k/a) do
// not resolve the wavelet: at a = 2 every coefficient vanishes (psi(1/2) = 0),
// and for a < 8 the white-noise variogram is far from flat.
inline constexpr std::size_t kMinScale = 8;

// Integer scales round(i x) for i = 1..ell, deduplicated. Empty when
// round(x) < kMinScale, fewer than 3 distinct scales remain, or the largest
// exceeds n/2.
std::vector<std::size_t> scale_grid(double x, int ell, std::size_t n);

struct ScaleSelection {
  std::vector<double> alpha_grid;
  std::vector<double> q_values;
  double alpha_hat = 0.0;
  double alpha_tilde = 0.0;
  int ell_stage1 = 0;
  std::vector<std::size_t> scales;  // stage-1 scales at alpha_hat
  LineFit fit;                      // OLS fit at alpha_hat
};

// Default first-stage number of scales, floor(2 log N).
int default_ell1(std::size_t n);
// Grid {i/c : i >= 2, i/c <= log(floor(N/ell))/log N}, c = floor(10 log N).
std::vector<double> alpha_grid(std::size_t n, int ell);
double alpha_correction(double alpha_hat, int ell, std::size_t n);

ScaleSelection select_scale(VariogramEngine& engine, int ell_stage1);

struct EstimateOptions {
  int ell1 = 0;                   // 0: floor(2 log N)
  std::optional<int> ell2_cap;    // none: ell2 = max(3, floor(N^(1 - alpha_tilde) / log N))
  double level = 0.95;            // confidence level of ci95 and of the test
  double d_clamp = 0.49;          // |d_hat_hat| bound before evaluating Gamma
  bool identity_gamma = false;    // replace Gamma by I (reduces PGLS to OLS)
  // Gamma + ridge * diag(Gamma). The asymptotic Gamma is nearly singular and
  // understates finite-N noise along its smallest eigen-directions.
  double gamma_ridge = 1e-4;
  GammaOptions gamma;
};

struct EstimateReport {
  double d_tilde = 0.0;
  double c_tilde = 0.0;
  double d_hat_hat = 0.0;
  ScaleSelection selection;
  int ell2 = 0;
  double x_tilde = 0.0;  // N^alpha_tilde
  std::vector<std::size_t> scales;
  std::vector<double> log_t_values;
  CovarianceModel gamma_hat;
  double jitter = 0.0;
  double sigma2 = 0.0;
  std::array<double, 2> ci95{};
  double gof_stat = 0.0;
  double gof_pvalue = 1.0;
  int gof_dof = 1;
};

struct GofResult {
  double stat = 0.0;
  double pvalue = 1.0;
  int dof = 1;
};

// T = (N / x_tilde) r' Gamma^{-1} r, compared with chi2(ell - 2).
GofResult gof_test(double quad_form, std::size_t n, double x_tilde, int ell);

EstimateReport pgls_fit(VariogramEngine& engine, const ScaleSelection& selection, const EstimateOptions& opt = {});

// Full two-stage pipeline.
EstimateReport estimate(std::span<const double> x, const EstimateOptions& opt = {});

}  // namespace lrd
