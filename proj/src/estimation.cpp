#include "lrd/estimation.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "lrd/chi2.hpp"
#include "lrd/errors.hpp"

namespace lrd {

namespace {

void check_scale(std::size_t a, std::size_t n) {
  if (a < 2 || 2 * a > n) {
    throw DomainError("scale " + std::to_string(a) + " outside [2, N/2] for N = " + std::to_string(n));
  }
}

// h_k = a^(-1/2) psi(k / a), k = 0..a (end points vanish).
std::vector<double> scaled_filter(std::size_t a) {
  const double ad = static_cast<double>(a);
  const double norm = 1.0 / std::sqrt(ad);
  std::vector<double> h(a + 1, 0.0);
  for (std::size_t k = 1; k < a; ++k) h[k] = norm * psi_eval(static_cast<double>(k) / ad);
  return h;
}

}  // namespace

std::vector<double> wavelet_coeffs(std::span<const double> x, std::size_t a) {
  const std::size_t n = x.size();
  check_scale(a, n);
  const auto h = scaled_filter(a);
  std::vector<double> e(n - a);
  for (std::size_t j = 0; j < e.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 1; k < a; ++k) s += x[j + k] * h[k];
    e[j] = s;
  }
  return e;
}

std::vector<double> Variogram::log_scales() const {
  std::vector<double> v(scales.size());
  std::transform(scales.begin(), scales.end(), v.begin(), [](std::size_t a) { return std::log(static_cast<double>(a)); });
  return v;
}

std::vector<double> Variogram::log_t() const {
  std::vector<double> v(t_values.size());
  std::transform(t_values.begin(), t_values.end(), v.begin(), [](double t) { return std::log(t); });
  return v;
}

VariogramEngine::VariogramEngine(std::span<const double> x) : x_(x.begin(), x.end()) {
  if (x_.size() < 4) throw DomainError("series too short for a variogram");
  double mean = 0.0;
  for (double v : x_) {
    if (!std::isfinite(v)) throw DomainError("series contains non-finite values");
    mean += v;
  }
  mean /= static_cast<double>(x_.size());
  double ss = 0.0;
  double scale = 0.0;
  for (double v : x_) {
    ss += (v - mean) * (v - mean);
    scale = std::max(scale, std::abs(v));
  }
  const double var = ss / static_cast<double>(x_.size());
  if (!(var > 1e-24 * scale * scale) || var == 0.0) {
    throw NumericError("degenerate series: constant input has no wavelet variogram");
  }
  // For any non-degenerate series T(a) is of order var * ||psi||^2; values far
  // below that are rounding noise and their logarithm is meaningless.
  degenerate_floor_ = 1e-24 * var * WaveletSpec::standard().l2_norm_sq();
}

double VariogramEngine::direct(std::size_t a) const {
  const auto e = wavelet_coeffs(x_, a);
  double s = 0.0;
  for (double v : e) s += v * v;
  return s / static_cast<double>(e.size());
}

double VariogramEngine::via_fft(std::size_t a) {
  const std::size_t n = x_.size();
  if (x_hat_.empty()) {
    fft_size_ = fft::next_fast_size(n);
    x_hat_ = fft::rfft(x_, fft_size_);
  }
  const auto h = scaled_filter(a);
  auto spec = fft::rfft(h, fft_size_);
  for (std::size_t k = 0; k < spec.size(); ++k) spec[k] = x_hat_[k] * std::conj(spec[k]);
  // Circular correlation; lags 0..N-a-1 touch indices below N only, so no wrap.
  const auto c = fft::irfft(spec, fft_size_);
  double s = 0.0;
  for (std::size_t j = 0; j < n - a; ++j) s += c[j] * c[j];
  return s / static_cast<double>(n - a);
}

double VariogramEngine::t_value(std::size_t a) {
  check_scale(a, x_.size());
  if (auto it = cache_.find(a); it != cache_.end()) return it->second;
  const double t = a <= kDirectMaxScale ? direct(a) : via_fft(a);
  if (!(t > degenerate_floor_) || !std::isfinite(t)) {
    throw NumericError("degenerate wavelet variogram at scale " + std::to_string(a));
  }
  cache_.emplace(a, t);
  return t;
}

Variogram VariogramEngine::variogram(std::span<const std::size_t> scales) {
  Variogram vg;
  vg.n = x_.size();
  vg.scales.assign(scales.begin(), scales.end());
  vg.t_values.reserve(scales.size());
  for (std::size_t a : scales) vg.t_values.push_back(t_value(a));
  return vg;
}

Variogram variogram(std::span<const double> x, std::span<const std::size_t> scales) {
  VariogramEngine engine(x);
  return engine.variogram(scales);
}

LineFit ols_fit(std::span<const double> log_x, std::span<const double> log_y) {
  const std::size_t m = log_x.size();
  if (m != log_y.size()) throw DomainError("ols_fit: size mismatch");
  if (m < 3) throw DomainError("ols_fit: need at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += log_x[i];
    my += log_y[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (log_x[i] - mx) * (log_x[i] - mx);
    sxy += (log_x[i] - mx) * (log_y[i] - my);
  }
  if (!(sxx > 1e-14 * std::max(1.0, mx * mx))) throw NumericError("ols_fit: collinear design (repeated scales)");
  const double slope = sxy / sxx;
  LineFit fit;
  fit.c = my - slope * mx;
  fit.d = slope / 2.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = log_y[i] - fit.c - slope * log_x[i];
    fit.rss += r * r;
  }
  return fit;
}

LineFit ols_fit(const Variogram& vg) {
  std::vector<std::size_t> sorted = vg.scales;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw NumericError("ols_fit: collinear design (repeated scales)");
  }
  return ols_fit(vg.log_scales(), vg.log_t());
}

GlsFit gls_fit(std::span<const double> log_x, std::span<const double> log_y, const Eigen::MatrixXd& gamma) {
  const auto m = static_cast<Eigen::Index>(log_x.size());
  if (log_y.size() != log_x.size() || gamma.rows() != m || gamma.cols() != m) {
    throw DomainError("gls_fit: size mismatch");
  }
  if (m < 3) throw DomainError("gls_fit: need at least 3 points");
  Eigen::MatrixXd zy(m, 3);
  for (Eigen::Index i = 0; i < m; ++i) {
    zy(i, 0) = 1.0;
    zy(i, 1) = log_x[i];
    zy(i, 2) = log_y[i];
  }
  CovarianceFactor factor(gamma);
  const Eigen::MatrixXd w = factor.whiten(zy);
  const Eigen::MatrixXd zw = w.leftCols(2);
  const Eigen::VectorXd yw = w.col(2);
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(zw);
  if (qr.rank() < 2) throw NumericError("gls_fit: collinear design");
  const Eigen::Vector2d theta = qr.solve(yw);
  GlsFit fit;
  fit.c = theta(0);
  fit.d = theta(1) / 2.0;
  fit.quad_form = (yw - zw * theta).squaredNorm();
  const Eigen::Matrix2d info = zw.transpose() * zw;
  fit.sigma2 = 0.25 * info.inverse()(1, 1);
  fit.jitter = factor.jitter();
  return fit;
}

std::vector<std::size_t> scale_grid(double x, int ell, std::size_t n) {
  std::vector<std::size_t> scales;
  if (std::round(x) < static_cast<double>(kMinScale)) return scales;
  for (int i = 1; i <= ell; ++i) {
    const auto a = static_cast<std::size_t>(std::round(i * x));
    if (scales.empty() || a != scales.back()) scales.push_back(a);
  }
  if (scales.size() < 3 || 2 * scales.back() > n) return {};
  return scales;
}

int default_ell1(std::size_t n) { return static_cast<int>(std::floor(2.0 * std::log(static_cast<double>(n)))); }

std::vector<double> alpha_grid(std::size_t n, int ell) {
  const double log_n = std::log(static_cast<double>(n));
  const int c = static_cast<int>(std::floor(10.0 * log_n));
  const double top = std::log(std::floor(static_cast<double>(n) / ell)) / log_n;
  std::vector<double> grid;
  for (int i = 2; static_cast<double>(i) / c <= top; ++i) grid.push_back(static_cast<double>(i) / c);
  return grid;
}

double alpha_correction(double alpha_hat, int ell, std::size_t n) {
  const double log_n = std::log(static_cast<double>(n));
  return 6.0 * alpha_hat / ((ell - 2) * (1.0 - alpha_hat)) * std::log(log_n) / log_n;
}

ScaleSelection select_scale(VariogramEngine& engine, int ell_stage1) {
  const std::size_t n = engine.n();
  if (ell_stage1 < 3) throw DomainError("select_scale: need at least 3 scales");
  ScaleSelection sel;
  sel.ell_stage1 = ell_stage1;
  const double log_n = std::log(static_cast<double>(n));
  double best = INFINITY;
  for (double alpha : alpha_grid(n, ell_stage1)) {
    const auto scales = scale_grid(std::exp(alpha * log_n), ell_stage1, n);
    if (scales.empty()) continue;
    const auto fit = ols_fit(engine.variogram(scales));
    sel.alpha_grid.push_back(alpha);
    sel.q_values.push_back(fit.rss);
    if (fit.rss < best) {  // strict: ties keep the smallest alpha
      best = fit.rss;
      sel.alpha_hat = alpha;
      sel.scales = scales;
      sel.fit = fit;
    }
  }
  if (sel.alpha_grid.empty()) {
    throw DomainError("select_scale: empty scale grid for N = " + std::to_string(n) + " (series too short)");
  }
  sel.alpha_tilde = sel.alpha_hat + alpha_correction(sel.alpha_hat, ell_stage1, n);
  if (!(sel.alpha_tilde < 1.0)) throw NumericError("select_scale: corrected exponent reached 1");
  return sel;
}

GofResult gof_test(double quad_form, std::size_t n, double x_tilde, int ell) {
  if (ell < 3) throw DomainError("gof_test: need at least 3 scales");
  GofResult g;
  g.dof = ell - 2;
  g.stat = static_cast<double>(n) / x_tilde * quad_form;
  g.pvalue = chi2::sf(g.stat, g.dof);
  return g;
}

EstimateReport pgls_fit(VariogramEngine& engine, const ScaleSelection& selection, const EstimateOptions& opt) {
  const std::size_t n = engine.n();
  const double nd = static_cast<double>(n);
  EstimateReport rep;
  rep.selection = selection;
  rep.d_hat_hat = selection.fit.d;
  rep.x_tilde = std::pow(nd, selection.alpha_tilde);

  int ell2 = std::max(3, static_cast<int>(std::floor(std::pow(nd, 1.0 - selection.alpha_tilde) / std::log(nd))));
  if (opt.ell2_cap) ell2 = std::min(ell2, std::max(3, *opt.ell2_cap));
  // Keep every scale within N/2.
  ell2 = std::min(ell2, static_cast<int>(std::floor(nd / 2.0 / rep.x_tilde)));
  if (ell2 < 3) throw NumericError("pgls_fit: fewer than 3 second-stage scales fit below N/2");
  rep.scales = scale_grid(rep.x_tilde, ell2, n);
  while (rep.scales.empty() && --ell2 >= 3) rep.scales = scale_grid(rep.x_tilde, ell2, n);
  if (rep.scales.size() < 3) throw NumericError("pgls_fit: fewer than 3 distinct second-stage scales");
  rep.ell2 = static_cast<int>(rep.scales.size());

  const Variogram vg = engine.variogram(rep.scales);
  rep.log_t_values = vg.log_t();
  const auto log_a = vg.log_scales();

  const double d_gamma = std::clamp(rep.d_hat_hat, -opt.d_clamp, opt.d_clamp);
  std::vector<double> ratios(rep.scales.size());
  for (std::size_t i = 0; i < ratios.size(); ++i) ratios[i] = static_cast<double>(rep.scales[i]) / rep.x_tilde;
  if (opt.identity_gamma) {
    rep.gamma_hat.d = d_gamma;
    rep.gamma_hat.ratios = ratios;
    rep.gamma_hat.gamma = Eigen::MatrixXd::Identity(rep.ell2, rep.ell2);
  } else {
    rep.gamma_hat = gamma_matrix(d_gamma, ratios, opt.gamma);
    rep.gamma_hat.gamma.diagonal() *= 1.0 + opt.gamma_ridge;
  }

  const GlsFit fit = gls_fit(log_a, rep.log_t_values, rep.gamma_hat.gamma);
  rep.d_tilde = fit.d;
  rep.c_tilde = fit.c;
  rep.sigma2 = fit.sigma2;
  rep.jitter = fit.jitter;

  const boost::math::normal_distribution<> normal;
  const double z = boost::math::quantile(normal, 0.5 + opt.level / 2.0);
  const double half = z * std::sqrt(rep.sigma2 * rep.x_tilde / nd);
  rep.ci95 = {rep.d_tilde - half, rep.d_tilde + half};

  const GofResult gof = gof_test(fit.quad_form, n, rep.x_tilde, rep.ell2);
  rep.gof_stat = gof.stat;
  rep.gof_pvalue = gof.pvalue;
  rep.gof_dof = gof.dof;
  return rep;
}

EstimateReport estimate(std::span<const double> x, const EstimateOptions& opt) {
  VariogramEngine engine(x);
  const int ell1 = opt.ell1 > 0 ? opt.ell1 : default_ell1(x.size());
  const ScaleSelection sel = select_scale(engine, ell1);
  return pgls_fit(engine, sel, opt);
}

}  // namespace lrd
