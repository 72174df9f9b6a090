#include "lrd/reference.hpp"

#include <Eigen/Dense>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "lrd/errors.hpp"
#include "lrd/fft.hpp"

namespace lrd {

Periodogram periodogram(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 3) throw DomainError("periodogram: need at least 3 observations");
  const auto spec = fft::rfft(x, n);
  const std::size_t count = (n - 1) / 2;
  Periodogram pg;
  pg.freqs.resize(count);
  pg.ordinates.resize(count);
  const double norm = 1.0 / (2.0 * std::numbers::pi * static_cast<double>(n));
  for (std::size_t j = 1; j <= count; ++j) {
    pg.freqs[j - 1] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    pg.ordinates[j - 1] = std::norm(spec[j]) * norm;
  }
  return pg;
}

double local_whittle_objective(std::span<const double> ordinates, std::size_t m, double d) {
  double s = 0.0, logs = 0.0;
  for (std::size_t j = 1; j <= m; ++j) {
    const double lj = std::log(static_cast<double>(j));
    s += std::exp(2.0 * d * lj) * ordinates[j - 1];
    logs += lj;
  }
  const double md = static_cast<double>(m);
  return std::log(s / md) - 2.0 * d * logs / md;
}

double local_whittle_fit(std::span<const double> ordinates, std::size_t m) {
  if (m < 2 || m > ordinates.size()) {
    throw DomainError("local_whittle: m must lie in [2, " + std::to_string(ordinates.size()) + "]");
  }
  bool any = false;
  for (std::size_t j = 0; j < m; ++j) any = any || ordinates[j] > 0.0;
  if (!any) throw NumericError("local_whittle: all periodogram ordinates are zero");
  // 24 bits puts the bracket width near 6e-8, well inside 1e-6.
  const auto [d, value] = boost::math::tools::brent_find_minima(
      [&](double v) { return local_whittle_objective(ordinates, m, v); }, -0.5, 1.0, 24);
  (void)value;
  return d;
}

LocalWhittleResult local_whittle(std::span<const double> x, std::size_t m) {
  const auto pg = periodogram(x);
  if (m == 0) m = std::max<std::size_t>(2, x.size() / 30);
  return {local_whittle_fit(pg.ordinates, m), m};
}

FexpResult fexp_fit(const Periodogram& pg, double kappa, int max_order) {
  if (!(kappa > 0.0)) throw DomainError("fexp: kappa must be positive");
  const auto nf = static_cast<Eigen::Index>(pg.freqs.size());
  if (max_order < 0) max_order = static_cast<int>(std::floor(std::sqrt(static_cast<double>(nf))));
  max_order = std::min<int>(max_order, static_cast<int>(nf) - 3);
  if (max_order < 0) throw DomainError("fexp: too few Fourier frequencies");
  const Eigen::Index cols = max_order + 2;

  Eigen::MatrixXd design(nf, cols);
  Eigen::VectorXd y(nf);
  for (Eigen::Index j = 0; j < nf; ++j) {
    const double l = pg.freqs[j];
    if (!(pg.ordinates[j] > 0.0)) throw NumericError("fexp: zero periodogram ordinate");
    y(j) = std::log(pg.ordinates[j]) + std::numbers::egamma;
    design(j, 0) = 1.0;
    design(j, 1) = -2.0 * std::log(std::abs(2.0 * std::sin(l / 2.0)));
    for (Eigen::Index k = 1; k <= max_order; ++k) design(j, k + 1) = std::cos(static_cast<double>(k) * l);
  }

  // One Householder QR serves every nested model: the first p + 2 columns of
  // Q'y give the fitted part of the order-p regression.
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  const double tiny = 1e-12 * r.diagonal().cwiseAbs().maxCoeff();
  if ((r.diagonal().cwiseAbs().array() <= tiny).any()) throw NumericError("fexp: rank-deficient design");
  const Eigen::VectorXd qty = qr.householderQ().transpose() * y;

  const double n = static_cast<double>(nf);
  const double var_log = std::numbers::pi * std::numbers::pi / 6.0;
  double rss = qty.tail(nf - 2).squaredNorm();  // p = 0 keeps two columns
  FexpResult res;
  double best = INFINITY;
  for (int p = 0; p <= max_order; ++p) {
    if (p > 0) rss -= qty(p + 1) * qty(p + 1);
    const double crit = std::max(rss, 0.0) / n + kappa * (p + 1) * var_log / n;
    res.criterion.push_back(crit);
    if (crit < best) {
      best = crit;
      res.order = p;
    }
  }
  const Eigen::Index k = res.order + 2;
  const Eigen::VectorXd theta =
      r.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(qty.head(k));
  res.d = theta(1);
  return res;
}

FexpResult fexp_estimate(std::span<const double> x, double kappa, int max_order) {
  return fexp_fit(periodogram(x), kappa, max_order);
}

}  // namespace lrd
