#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrd/errors.hpp"
#include "lrd/wavelet.hpp"
#include "oracles.hpp"

using namespace lrd;
constexpr double kPi = std::numbers::pi;

TEST_CASE("psi vanishes on and outside the support boundary") {
  CHECK(psi_eval(0.0) == 0.0);
  CHECK(psi_eval(1.0) == 0.0);
  CHECK(psi_eval(-0.3) == 0.0);
  CHECK(psi_eval(1.7) == 0.0);
  for (double x : {0.1, 0.37, 0.5, 0.81}) {
    CHECK(psi_eval(x) == doctest::Approx(oracle::psi_poly(x)).epsilon(1e-13));
    CHECK(psi_eval(1.0 - x) == doctest::Approx(-psi_eval(x)).epsilon(1e-12));
  }
  // psi'(0) = psi'(1) = 0 and psi''(0) = psi''(1) = 0 (x^3 (1-x)^3 factor).
  const double h = 1e-4;
  CHECK(std::abs(psi_eval(h) / h) < 1e-8);
  CHECK(std::abs(psi_eval(1.0 - h) / h) < 1e-8);
}

TEST_CASE("zero mean and vanishing first two moments") {
  quad::GaussLegendre gl(200);
  CHECK(std::abs(gl.integrate([](double t) { return psi_eval(t); }, 0.0, 1.0)) < 1e-12);
  const auto& psi = WaveletSpec::standard();
  CHECK(std::abs(psi.moment(0)) < 1e-16);
  CHECK(std::abs(psi.moment(1)) < 1e-16);
  CHECK(std::abs(psi.moment(2)) < 1e-16);
  // Exact rationals from symbolic integration of the polynomial.
  CHECK(psi.moment(3) == doctest::Approx(1.0 / 2642640.0).epsilon(1e-12));
  CHECK(psi.moment(4) == doctest::Approx(1.0 / 1321320.0).epsilon(1e-12));
  CHECK(psi.moment(5) == doctest::Approx(1.0 / 990990.0).epsilon(1e-12));
  CHECK(psi.l2_norm_sq() == doctest::Approx(1.0 / 469464996.0).epsilon(1e-12));
  CHECK(psi.l2_norm_sq() ==
        doctest::Approx(gl.integrate([](double t) { return std::pow(psi_eval(t), 2); }, 0.0, 1.0))
            .epsilon(1e-12));
}

TEST_CASE("psi_hat matches direct quadrature") {
  CHECK(std::abs(psi_hat(0.0)) == 0.0);
  // The quadrature oracle carries ~1e-19 absolute roundoff (|psi| ~ 1e-3).
  for (double u : {0.5, 1.0, 3.0, 7.9, 8.1, 12.0, 30.0, 150.0, -4.0, -25.0}) {
    const auto ref = oracle::psi_hat(u);
    const auto got = psi_hat(u);
    CAPTURE(u);
    CHECK(std::abs(got - ref) <= 1e-10 * std::abs(ref) + 1e-18);
  }
  // Near 0 the leading term is (-iu)^3/3! * int t^3 psi = i u^3 / (6 * 2642640).
  const double u = 1e-3;
  const auto small = psi_hat(u);
  CHECK(small.real() == doctest::Approx(-std::pow(u, 4) / (24.0 * 1321320.0)).epsilon(1e-5));
  CHECK(small.imag() == doctest::Approx(u * u * u / (6.0 * 2642640.0)).epsilon(1e-5));
}

TEST_CASE("psi_hat branches agree at the switch point") {
  const auto& psi = WaveletSpec::standard();
  const double u = WaveletSpec::kSeriesSwitch;
  for (double v : {u, -u, std::nextafter(u, 0.0)}) {
    const auto a = psi.hat_series(v);
    const auto b = psi.hat_closed(v);
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  }
}

TEST_CASE("psi_hat has a decaying envelope") {
  // sup over one period of |psi_hat| beyond u ~ u^-4 envelope, checked against the
  // quadrature oracle at the first grid point of each window.
  double prev = 1.0;
  for (double u : {1e2, 1e3, 1e4}) {
    double peak = 0.0;
    for (int k = 0; k < 64; ++k) peak = std::max(peak, std::abs(psi_hat(u + 2.0 * kPi * k / 64.0)));
    CHECK(peak * std::pow(u, 3) < 1.0);
    CHECK(peak < prev);
    CHECK(std::abs(psi_hat(u) - oracle::psi_hat(u)) <= 1e-9 * std::abs(oracle::psi_hat(u)) + 1e-18);
    prev = peak;
  }
}

TEST_CASE("k_integral Parseval identity at alpha = 0") {
  const double parseval = 2.0 * kPi * WaveletSpec::standard().l2_norm_sq();
  CHECK(std::abs(k_integral(0.0) - parseval) / parseval < 1e-6);
}

TEST_CASE("k_integral is positive and rejects alpha >= 1") {
  for (double a : {-2.0, -1.0, -0.4, 0.0, 0.3, 0.8, 0.99}) CHECK(k_integral(a) > 0.0);
  CHECK_THROWS_AS(k_integral(1.0), DomainError);
  CHECK_THROWS_AS(k_integral(1.5), DomainError);
  // K(2d - d') finite for d' in (0, 2]
  for (double d : {0.0, 0.2, 0.45}) {
    for (double dp : {0.5, 1.0, 2.0}) CHECK(std::isfinite(k_integral(2 * d - dp)));
  }
}

TEST_CASE("k_integral(0.5) against a brute-force trapezoid") {
  // Trapezoid on [-1e4, 1e4] with 1e7 points; integrand even so use [0, 1e4].
  const int n = 5'000'000;
  const double h = 1e4 / n;
  double s = 0.0;
  for (int k = 1; k <= n; ++k) {
    const double u = k * h;
    const double w = (k == n) ? 0.5 : 1.0;
    s += w * std::norm(psi_hat(u)) * std::pow(u, -0.5);
  }
  const double trap = 2.0 * s * h;
  CHECK(std::abs(k_integral(0.5) - trap) / trap < 1e-4);
}

TEST_CASE("gamma_matrix structure") {
  for (double d : {-0.2, 0.0, 0.25, 0.45}) {
    auto cov = gamma_matrix(d, 8);
    CHECK(cov.ell() == 8);
    for (int i = 0; i < 8; ++i) {
      CHECK(cov.gamma(i, i) > 0.0);
      for (int j = 0; j < 8; ++j) CHECK(cov.gamma(i, j) == cov.gamma(j, i));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov.gamma);
    CHECK(es.eigenvalues().minCoeff() > -1e-12 * es.eigenvalues().maxCoeff());
    CovarianceFactor f(cov.gamma);
    CHECK(f.whiten(Eigen::MatrixXd::Ones(8, 1)).allFinite());
  }
  CHECK_THROWS_AS(gamma_matrix(0.5, 4), DomainError);
}

TEST_CASE("gamma_11 at d = 0 against a fixed-grid Simpson oracle") {
  // 4 pi K(0)^-2 int_R |psi_hat|^4, with K(0) from Parseval.
  const int n = 400000;  // even
  const double upper = 400.0;
  const double h = upper / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = k * h;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    s += w * std::pow(std::norm(oracle::psi_hat(u, 4)), 2);
  }
  const double integral = 2.0 * s * h / 3.0;
  const double k0 = 2.0 * kPi * WaveletSpec::standard().l2_norm_sq();
  const double expected = 4.0 * kPi * integral / (k0 * k0);
  const auto cov = gamma_matrix(0.0, 1);
  CHECK(std::abs(cov.gamma(0, 0) - expected) / expected < 1e-4);
}

TEST_CASE("gamma_matrix is stable under a larger refinement budget") {
  const std::vector<double> r = {1.0, 2.0, 3.5, 7.0, 20.0};
  auto base = gamma_matrix(0.3, r);
  auto fine = gamma_matrix(0.3, r, {1e-12, 16000});
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) {
      CHECK(std::abs(base.gamma(i, j) - fine.gamma(i, j)) <= 1e-6 * std::abs(fine.gamma(i, j)));
    }
  }
}

TEST_CASE("sigma2_d with identity covariance is the OLS slope variance") {
  CovarianceModel cov;
  cov.ratios = {1, 2, 3, 4, 5, 6};
  cov.gamma = Eigen::MatrixXd::Identity(6, 6);
  const Eigen::MatrixXd z = log_design(cov.ratios);
  const double ols = 0.25 * (z.transpose() * z).inverse()(1, 1);
  CHECK(sigma2_d(cov) == doctest::Approx(ols).epsilon(1e-14));
}

TEST_CASE("sigma2_d decreases in ell and is nearly flat in d") {
  const std::vector<int> ells = {3, 5, 10, 20};
  std::vector<std::vector<double>> table;
  for (double d : {0.0, 0.2, 0.4}) {
    auto big = gamma_matrix(d, ells.back());
    std::vector<double> row;
    for (int ell : ells) {
      CovarianceModel sub;
      sub.d = d;
      sub.ratios.assign(big.ratios.begin(), big.ratios.begin() + ell);
      sub.gamma = big.gamma.topLeftCorner(ell, ell);
      row.push_back(sigma2_d(sub));
    }
    for (std::size_t k = 1; k < row.size(); ++k) CHECK(row[k] < row[k - 1]);
    table.push_back(row);
  }
  for (std::size_t k = 0; k < ells.size(); ++k) {
    double lo = 1e300, hi = 0.0;
    for (auto& row : table) {
      lo = std::min(lo, row[k]);
      hi = std::max(hi, row[k]);
    }
    CHECK((hi - lo) / lo < 0.10);
  }
}
