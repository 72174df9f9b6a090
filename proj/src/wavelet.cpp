#include "lrd/wavelet.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "lrd/errors.hpp"

namespace lrd {

namespace {

constexpr double kPi = std::numbers::pi;
// |psi_hat(u)|^2 <= C u^-8 beyond this point; the neglected tail is below
// 1e-11 of every integral computed here.
constexpr double kFrequencyCutoff = 400.0;

}  // namespace

WaveletSpec::WaveletSpec() {
  coeffs_ = {0.0,          0.0,         0.0,          -1.0 / 11.0, 21.0 / 22.0,
             -42.0 / 11.0, 84.0 / 11.0, -90.0 / 11.0, 9.0 / 2.0,   -1.0};

  std::array<long double, kDegree + 1> c{};
  c[3] = -1.0L / 11.0L;
  c[4] = 21.0L / 22.0L;
  c[5] = -42.0L / 11.0L;
  c[6] = 84.0L / 11.0L;
  c[7] = -90.0L / 11.0L;
  c[8] = 9.0L / 2.0L;
  c[9] = -1.0L;

  // P^(k)(0) = k! c_k ; P^(k)(1) = sum_{m>=k} c_m m!/(m-k)!
  for (int k = 0; k <= kDegree; ++k) {
    long double falling_k = 1.0L;
    for (int j = 1; j <= k; ++j) falling_k *= j;
    deriv_at_0_[k] = static_cast<double>(falling_k * c[k]);
    long double at1 = 0.0L;
    for (int m = k; m <= kDegree; ++m) {
      long double f = 1.0L;
      for (int j = m - k + 1; j <= m; ++j) f *= j;
      at1 += c[m] * f;
    }
    deriv_at_1_[k] = static_cast<double>(at1);
  }

  long double factorial = 1.0L;
  for (int n = 0; n < kSeriesTerms; ++n) {
    if (n > 0) factorial *= n;
    long double m = 0.0L;
    for (int j = 0; j <= kDegree; ++j) m += c[j] / static_cast<long double>(j + n + 1);
    moments_[n] = static_cast<double>(m);
    const long double scaled = m / factorial;
    // (-i)^n: 1, -i, -1, i
    if (n % 2 == 0) {
      series_even_[n / 2] = static_cast<double>((n % 4 == 0) ? scaled : -scaled);
    } else {
      series_odd_[n / 2] = static_cast<double>((n % 4 == 1) ? -scaled : scaled);
    }
  }

  long double sq = 0.0L;
  for (int i = 0; i <= kDegree; ++i) {
    for (int j = 0; j <= kDegree; ++j) sq += c[i] * c[j] / static_cast<long double>(i + j + 1);
  }
  l2_norm_sq_ = static_cast<double>(sq);
}

const WaveletSpec& WaveletSpec::standard() {
  static const WaveletSpec spec;
  return spec;
}

double WaveletSpec::operator()(double x) const {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  double v = coeffs_[kDegree];
  for (int k = kDegree - 1; k >= 0; --k) v = v * x + coeffs_[k];
  return v;
}

double WaveletSpec::moment(int n) const {
  if (n < 0) throw DomainError("moment: negative order");
  if (n < kSeriesTerms) return moments_[n];
  double m = 0.0;
  for (int j = 0; j <= kDegree; ++j) m += coeffs_[j] / (j + n + 1);
  return m;
}

std::complex<double> WaveletSpec::hat_series(double u) const {
  const double u2 = u * u;
  double re = 0.0;
  double im = 0.0;
  for (int k = kSeriesTerms / 2 - 1; k >= 0; --k) {
    re = re * u2 + series_even_[k];
    im = im * u2 + series_odd_[k];
  }
  return {re, im * u};
}

std::complex<double> WaveletSpec::hat_closed(double u) const {
  // sum_k (P^(k)(0) - P^(k)(1) e^{-iu}) / (iu)^(k+1); terms k < 3 vanish.
  const std::complex<double> e(std::cos(u), -std::sin(u));
  const std::complex<double> inv_iu(0.0, -1.0 / u);
  std::complex<double> power = inv_iu;
  for (int k = 1; k < 3; ++k) power *= inv_iu;
  std::complex<double> s{0.0, 0.0};
  for (int k = 3; k <= kDegree; ++k) {
    power *= inv_iu;
    s += (deriv_at_0_[k] - deriv_at_1_[k] * e) * power;
  }
  return s;
}

std::complex<double> WaveletSpec::hat(double u) const {
  if (u == 0.0) return {0.0, 0.0};
  return std::abs(u) < kSeriesSwitch ? hat_series(u) : hat_closed(u);
}

double WaveletSpec::hat_sq(double u) const { return std::norm(hat(u)); }

double psi_eval(double x) { return WaveletSpec::standard()(x); }

std::complex<double> psi_hat(double u) { return WaveletSpec::standard().hat(u); }

double k_integral(double alpha) {
  if (!(alpha < 1.0)) throw DomainError("k_integral: requires alpha < 1");
  const auto& psi = WaveletSpec::standard();
  auto f = [&](double u) { return u > 0.0 ? psi.hat_sq(u) * std::pow(u, -alpha) : 0.0; };
  static constexpr std::array<double, 9> cuts = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0};
  auto r = quad::integrate(f, 0.0, kFrequencyCutoff, {1e-13, 0.0, 4000}, cuts);
  // Mean tail: |psi_hat|^2 ~ (P'''(0)^2 + P'''(1)^2 - 2 P'''(0) P'''(1) cos u) / u^8.
  const double c0 = std::pow(psi.poly_coeffs()[3] * 6.0, 2);
  const double tail = 2.0 * c0 * std::pow(kFrequencyCutoff, -7.0 - alpha) / (7.0 + alpha);
  return 2.0 * (r.value + tail);
}

CovarianceModel gamma_matrix(double d, std::span<const double> ratios, const GammaOptions& opt) {
  if (!(d < 0.5)) throw DomainError("gamma_matrix: requires d < 1/2");
  if (ratios.empty()) throw DomainError("gamma_matrix: no ratios");
  for (double r : ratios) {
    if (!(r > 0.0)) throw DomainError("gamma_matrix: ratios must be positive");
  }
  const auto& psi = WaveletSpec::standard();
  const int ell = static_cast<int>(ratios.size());
  CovarianceModel cov;
  cov.d = d;
  cov.ratios.assign(ratios.begin(), ratios.end());
  cov.k_2d = k_integral(2.0 * d);
  cov.gamma.resize(ell, ell);

  // Raw integrals I_ij = int_0^inf g(r_i l) g(r_j l) l^(-4d) dl.
  auto entry = [&](int i, int j, double abs_floor) {
    const double ri = ratios[i];
    const double rj = ratios[j];
    const double lo = std::min(ri, rj);
    const double hi = std::max(ri, rj);
    auto f = [&](double l) {
      if (l <= 0.0) return 0.0;
      return psi.hat_sq(ri * l) * psi.hat_sq(rj * l) * std::pow(l, -4.0 * d);
    };
    std::vector<double> cuts;
    for (double u = 1.0; u <= 256.0; u *= 2.0) {
      cuts.push_back(u / hi);
      cuts.push_back(u / lo);
    }
    auto r = quad::integrate(f, 0.0, kFrequencyCutoff / lo, {opt.rel_tol, abs_floor, opt.max_subdivisions},
                             cuts);
    if (!r.converged) {
      throw NumericError("gamma_matrix: quadrature did not converge for entry (" + std::to_string(i + 1) +
                         "," + std::to_string(j + 1) + ")");
    }
    return r.value;
  };

  Eigen::VectorXd diag(ell);
  for (int i = 0; i < ell; ++i) diag[i] = entry(i, i, 0.0);
  Eigen::MatrixXd raw(ell, ell);
  for (int i = 0; i < ell; ++i) {
    raw(i, i) = diag[i];
    for (int j = i + 1; j < ell; ++j) {
      const double floor = opt.rel_tol * 1e-3 * std::sqrt(diag[i] * diag[j]);
      raw(i, j) = raw(j, i) = entry(i, j, floor);
    }
  }
  // Integrals above are over (0, inf); the factor 2 restores the full line.
  const double scale = 4.0 * kPi * 2.0 / (cov.k_2d * cov.k_2d);
  for (int i = 0; i < ell; ++i) {
    for (int j = 0; j < ell; ++j) {
      cov.gamma(i, j) = scale * std::pow(ratios[i] * ratios[j], 1.0 - 2.0 * d) * raw(i, j);
    }
  }
  return cov;
}

CovarianceModel gamma_matrix(double d, int ell, const GammaOptions& opt) {
  if (ell < 1) throw DomainError("gamma_matrix: ell must be positive");
  std::vector<double> r(ell);
  for (int i = 0; i < ell; ++i) r[i] = i + 1.0;
  return gamma_matrix(d, r, opt);
}

CovarianceFactor::CovarianceFactor(const Eigen::MatrixXd& gamma) {
  llt_.compute(gamma);
  // rcond ~ 1/condition number; below ~1e-15 the factor carries no digits.
  if (llt_.info() == Eigen::Success && llt_.rcond() > 1e-15) return;
  const double ell = static_cast<double>(gamma.rows());
  jitter_ = 1e-10 * gamma.trace() / ell;
  Eigen::MatrixXd reg = gamma;
  reg.diagonal().array() += jitter_;
  llt_.compute(reg);
  if (llt_.info() != Eigen::Success) throw NumericError("covariance matrix singular after regularisation");
}

Eigen::MatrixXd CovarianceFactor::whiten(const Eigen::MatrixXd& m) const {
  return llt_.matrixL().solve(m);
}

Eigen::MatrixXd log_design(std::span<const double> x) {
  Eigen::MatrixXd z(static_cast<Eigen::Index>(x.size()), 2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    z(i, 0) = 1.0;
    z(i, 1) = std::log(x[i]);
  }
  return z;
}

double sigma2_d(const CovarianceModel& cov) {
  CovarianceFactor factor(cov.gamma);
  const Eigen::MatrixXd zw = factor.whiten(log_design(cov.ratios));
  const Eigen::Matrix2d info = zw.transpose() * zw;
  const Eigen::Matrix2d inv = info.inverse();
  return 0.25 * inv(1, 1);
}

}  // namespace lrd
