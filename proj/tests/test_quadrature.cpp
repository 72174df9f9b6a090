#include <doctest.h>

#include <cmath>
#include <numbers>

#include "lrd/quadrature.hpp"

using namespace lrd;

TEST_CASE("Kronrod rule integrates degree-31 polynomials exactly") {
  auto f = [](double x) { return std::pow(x, 31) + 3.0 * std::pow(x, 10); };
  auto r = quad::integrate(f, 0.0, 1.0, {1e-14, 0.0, 0});
  CHECK(r.value == doctest::Approx(1.0 / 32.0 + 3.0 / 11.0).epsilon(1e-14));
}

TEST_CASE("adaptive refinement handles an integrable endpoint singularity") {
  auto f = [](double x) { return x > 0.0 ? std::pow(x, -0.5) : 0.0; };
  auto r = quad::integrate(f, 0.0, 1.0, {1e-10, 0.0, 2000});
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("oscillatory integrand with breakpoints") {
  auto f = [](double x) { return std::cos(50.0 * x) * std::exp(-x); };
  std::vector<double> cuts;
  for (int k = 1; k < 40; ++k) cuts.push_back(0.25 * k);
  auto r = quad::integrate(f, 0.0, 10.0, {1e-12, 0.0, 2000}, cuts);
  const double exact = (1.0 - std::exp(-10.0) * (std::cos(500.0) - 50.0 * std::sin(500.0))) / 2501.0;
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("budget exhaustion is reported") {
  auto f = [](double x) { return x > 0.0 ? 1.0 / x : 0.0; };
  auto r = quad::integrate(f, 0.0, 1.0, {1e-12, 0.0, 5});
  CHECK_FALSE(r.converged);
}

TEST_CASE("Gauss-Legendre nodes") {
  quad::GaussLegendre gl(200);
  double wsum = 0.0;
  for (double w : gl.weights) wsum += w;
  CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gl.integrate([](double x) { return std::exp(x); }, 0.0, 1.0) ==
        doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  quad::GaussLegendre g5(5);
  CHECK(g5.integrate([](double x) { return std::pow(x, 9); }, 0.0, 2.0) ==
        doctest::Approx(102.4).epsilon(1e-13));
}
