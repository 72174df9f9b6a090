#include "lrd/synthesis.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lrd/errors.hpp"
#include "lrd/fft.hpp"
#include "lrd/quadrature.hpp"

namespace lrd {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Spectral radius of the AR companion matrix; < 1 means stationary.
double ar_spectral_radius(const std::vector<double>& ar) {
  if (ar.empty()) return 0.0;
  const auto p = static_cast<Eigen::Index>(ar.size());
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index k = 0; k < p; ++k) companion(0, k) = ar[k];
  for (Eigen::Index k = 1; k < p; ++k) companion(k, k - 1) = 1.0;
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

std::vector<double> draw_innovations(Innovation law, std::size_t count, rng::Engine& engine) {
  std::vector<double> xi(count);
  switch (law) {
    case Innovation::gaussian: {
      std::normal_distribution<double> normal(0.0, 1.0);
      for (double& v : xi) v = normal(engine);
      break;
    }
    default:
      for (double& v : xi) v = sample_innovation(law, engine);
  }
  return xi;
}

double cos_quarter_turns(std::size_t k) {
  static constexpr std::array<double, 4> table = {1.0, 0.0, -1.0, 0.0};
  return table[k % 4];
}

}  // namespace

void validate(const ProcessModel& model) {
  std::visit(overloaded{
                 [](const FgnModel& m) {
                   if (!(m.hurst > 0.0 && m.hurst < 1.0)) throw DomainError("fGn requires 0 < H < 1");
                 },
                 [](const FarimaModel& m) {
                   if (!(std::abs(m.d) < 0.5)) throw DomainError("FARIMA requires |d| < 0.5");
                   if (ar_spectral_radius(m.ar) >= 1.0) throw DomainError("FARIMA AR polynomial is not stable");
                 },
                 [](const SpectralModel& m) {
                   if (!(m.d < 0.5)) throw DomainError("spectral model requires d < 0.5");
                   if (m.density == SpectralDensity::power_law && !(m.d_prime > 0.0)) {
                     throw DomainError("spectral model requires d' > 0");
                   }
                 },
                 [](const MfarimaModel& m) {
                   if (!(std::abs(m.d_first) < 0.5 && std::abs(m.d_second) < 0.5)) {
                     throw DomainError("MFARIMA requires |d| < 0.5 on both halves");
                   }
                 },
             },
             model.base);
}

std::string describe(const ProcessModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const FgnModel& m) { os << "fgn(H=" << m.hurst << ")"; },
                 [&](const FarimaModel& m) {
                   os << "farima(" << m.ar.size() << "," << m.d << "," << m.ma.size() << ")";
                 },
                 [&](const SpectralModel& m) { os << "spectral(d=" << m.d << ",d'=" << m.d_prime << ")"; },
                 [&](const MfarimaModel& m) { os << "mfarima(" << m.d_first << "," << m.d_second << ")"; },
             },
             model.base);
  if (model.trend) os << "+trend";
  if (model.seasonal) os << "+seasonal";
  return os.str();
}

double burr_cdf(double x) {
  return x >= 0.0 ? 1.0 - 0.5 / (1.0 + x * x) : 0.5 / (1.0 + x * x);
}

double burr_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) throw DomainError("burr_quantile: u must lie in (0, 1)");
  if (u >= 0.5) return std::sqrt(0.5 / (1.0 - u) - 1.0);
  return -std::sqrt(0.5 / u - 1.0);
}

double sample_innovation(Innovation law, rng::Engine& engine) {
  switch (law) {
    case Innovation::gaussian:
      return std::normal_distribution<double>(0.0, 1.0)(engine);
    case Innovation::uniform_pm1:
      return std::uniform_real_distribution<double>(-1.0, 1.0)(engine);
    case Innovation::burr_2_1:
    case Innovation::cauchy: {
      double u = 0.0;
      do {
        u = std::uniform_real_distribution<double>(0.0, 1.0)(engine);
      } while (u == 0.0);
      return law == Innovation::burr_2_1 ? burr_quantile(u) : std::tan(kPi * (u - 0.5));
    }
  }
  return 0.0;
}

std::vector<double> fractional_weights(double d, std::size_t count) {
  std::vector<double> a(count);
  if (count == 0) return a;
  a[0] = 1.0;
  for (std::size_t j = 1; j < count; ++j) {
    a[j] = a[j - 1] * (static_cast<double>(j) - 1.0 + d) / static_cast<double>(j);
  }
  return a;
}

std::vector<double> fgn_autocovariance(double hurst, std::size_t max_lag) {
  std::vector<double> g(max_lag + 1);
  const double h2 = 2.0 * hurst;
  for (std::size_t k = 0; k <= max_lag; ++k) {
    const double x = static_cast<double>(k);
    g[k] = 0.5 * (std::pow(x + 1.0, h2) - 2.0 * std::pow(x, h2) + std::pow(std::abs(x - 1.0), h2));
  }
  return g;
}

double spectral_density(const SpectralModel& model, double lambda) {
  const double l = std::abs(lambda);
  switch (model.density) {
    case SpectralDensity::white:
      return 1.0 / (2.0 * kPi);
    case SpectralDensity::power_law:
      return std::pow(l, -2.0 * model.d) * (1.0 + std::pow(l, model.d_prime));
    case SpectralDensity::shifted_pole:
      return std::pow(std::abs(l - kPi / 2.0), -2.0 * model.d);
  }
  return 0.0;
}

std::vector<double> power_cosine_integrals(double beta, std::size_t count) {
  if (!(beta > -1.0)) throw DomainError("power_cosine_integrals: requires beta > -1");
  static const quad::GaussLegendre gl(24);
  std::vector<double> j(count + 1, 0.0);
  if (count == 0) return j;
  // First quarter period by the alternating series of u^beta cos(u).
  const double x = kPi / 2.0;
  double term_fact = 1.0;
  double s = 0.0;
  for (int n = 0; n < 30; ++n) {
    if (n > 0) term_fact *= (2.0 * n - 1.0) * (2.0 * n);
    const double e = beta + 2.0 * n + 1.0;
    s += ((n % 2) ? -1.0 : 1.0) * std::pow(x, e) / (term_fact * e);
  }
  j[1] = s;
  double acc = s;
  double comp = 0.0;
  for (std::size_t k = 2; k <= count; ++k) {
    const double a = (static_cast<double>(k) - 1.0) * x;
    const double piece = gl.integrate([&](double u) { return std::pow(u, beta) * std::cos(u); }, a, a + x);
    const double y = piece - comp;
    const double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    j[k] = acc;
  }
  return j;
}

std::vector<double> spectral_autocovariance(const SpectralModel& model, std::size_t max_lag) {
  std::vector<double> g(max_lag + 1, 0.0);
  switch (model.density) {
    case SpectralDensity::white:
      g[0] = 1.0;
      break;
    case SpectralDensity::power_law: {
      // f = l^b1 + l^b2 on (0, pi]; int_0^pi l^b cos(k l) dl = k^(-b-1) J_b(k pi).
      for (double beta : {-2.0 * model.d, model.d_prime - 2.0 * model.d}) {
        const auto jb = power_cosine_integrals(beta, 2 * max_lag);
        g[0] += 2.0 * std::pow(kPi, beta + 1.0) / (beta + 1.0);
        for (std::size_t k = 1; k <= max_lag; ++k) {
          g[k] += 2.0 * std::pow(static_cast<double>(k), -beta - 1.0) * jb[2 * k];
        }
      }
      break;
    }
    case SpectralDensity::shifted_pole: {
      // Substituting m = l - pi/2 leaves 4 cos(k pi/2) int_0^{pi/2} m^b cos(k m) dm.
      const double beta = -2.0 * model.d;
      const auto jb = power_cosine_integrals(beta, max_lag);
      g[0] = 4.0 * std::pow(kPi / 2.0, beta + 1.0) / (beta + 1.0);
      for (std::size_t k = 1; k <= max_lag; ++k) {
        const double c = cos_quarter_turns(k);
        if (c != 0.0) g[k] = 4.0 * c * std::pow(static_cast<double>(k), -beta - 1.0) * jb[k];
      }
      break;
    }
  }
  return g;
}

std::vector<double> embedding_eigenvalues(std::span<const double> autocov, std::size_t half_size) {
  if (autocov.size() < half_size + 1) throw DomainError("embedding_eigenvalues: autocovariance too short");
  const std::size_t m = 2 * half_size;
  std::vector<double> c(m);
  for (std::size_t k = 0; k <= half_size; ++k) c[k] = autocov[k];
  for (std::size_t k = half_size + 1; k < m; ++k) c[k] = autocov[m - k];
  const auto spec = fft::rfft(c, m);
  std::vector<double> eig(m);
  for (std::size_t k = 0; k <= half_size; ++k) eig[k] = spec[k].real();
  for (std::size_t k = half_size + 1; k < m; ++k) eig[k] = spec[m - k].real();
  return eig;
}

std::vector<double> circulant_draw(std::span<const double> eigenvalues, std::size_t n, rng::Engine& engine) {
  const std::size_t m = eigenvalues.size();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<fft::cplx> w(m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double s = std::sqrt(eigenvalues[k] * inv_m);
    const double re = normal(engine);
    const double im = normal(engine);
    w[k] = {s * re, s * im};
  }
  const auto y = fft::dft(w, false);
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = y[t].real();
  return x;
}

TimeSeries gen_fgn(double hurst, std::size_t n, std::uint64_t seed) {
  ProcessModel model{FgnModel{hurst}};
  validate(model);
  auto engine = rng::make_engine(seed);
  auto values = circulant_sample([&](std::size_t lag) { return fgn_autocovariance(hurst, lag); }, n, engine);
  return {std::move(values), model, seed};
}

std::size_t farima_truncation(std::size_t n) { return std::max<std::size_t>(10000, 10 * n); }

TimeSeries gen_farima(const FarimaModel& spec, std::size_t n, std::uint64_t seed) {
  ProcessModel model{spec};
  validate(model);
  const double rho = ar_spectral_radius(spec.ar);
  std::size_t burn_arma = spec.ma.size();
  if (!spec.ar.empty()) {
    burn_arma += rho > 0.0 ? static_cast<std::size_t>(std::ceil(std::log(1e-17) / std::log(rho))) : spec.ar.size();
  }
  const std::size_t m = farima_truncation(n);
  const std::size_t len = n + burn_arma;
  auto engine = rng::make_engine(seed);
  const auto xi = draw_innovations(spec.innovation, len + m, engine);

  // y_t = sum_{j=0}^{m} a_j xi_{t-j} for the last `len` positions.
  std::vector<double> y(len);
  if (spec.d == 0.0) {
    std::copy(xi.begin() + m, xi.end(), y.begin());
  } else {
    const auto a = fractional_weights(spec.d, m + 1);
    const std::size_t size = fft::next_fast_size(len + m);
    const auto xs = fft::rfft(xi, size);
    const auto as = fft::rfft(a, size);
    std::vector<fft::cplx> prod(xs.size());
    for (std::size_t k = 0; k < prod.size(); ++k) prod[k] = xs[k] * as[k];
    const auto conv = fft::irfft(prod, size);
    std::copy_n(conv.begin() + m, len, y.begin());
  }

  std::vector<double> x(len);
  for (std::size_t t = 0; t < len; ++t) {
    double v = y[t];
    for (std::size_t k = 0; k < spec.ma.size() && k < t; ++k) v += spec.ma[k] * y[t - k - 1];
    for (std::size_t k = 0; k < spec.ar.size() && k < t; ++k) v += spec.ar[k] * x[t - k - 1];
    x[t] = v;
  }
  return {std::vector<double>(x.begin() + burn_arma, x.end()), model, seed};
}

TimeSeries gen_spectral(const SpectralModel& spec, std::size_t n, std::uint64_t seed) {
  ProcessModel model{spec};
  validate(model);
  auto engine = rng::make_engine(seed);
  auto values = circulant_sample([&](std::size_t lag) { return spectral_autocovariance(spec, lag); }, n, engine);
  return {std::move(values), model, seed};
}

TimeSeries gen_mfarima(double d_first, double d_second, std::size_t n, std::uint64_t seed) {
  ProcessModel model{MfarimaModel{d_first, d_second}};
  validate(model);
  const std::size_t half = n / 2;
  auto first = gen_farima({d_first, {}, {}, Innovation::gaussian}, half, rng::derive_seed(seed, {1}));
  auto second = gen_farima({d_second, {}, {}, Innovation::gaussian}, n - half, rng::derive_seed(seed, {2}));
  std::vector<double> values = std::move(first.values);
  values.insert(values.end(), second.values.begin(), second.values.end());
  return {std::move(values), model, seed};
}

TimeSeries contaminate(TimeSeries ts, bool trend, bool seasonal) {
  const double n = static_cast<double>(ts.values.size());
  for (std::size_t i = 0; i < ts.values.size(); ++i) {
    const double t = static_cast<double>(i + 1);
    if (trend) ts.values[i] += 1.0 - 2.0 * t / n;
    if (seasonal) ts.values[i] += std::sin(kPi * t / 6.0);
  }
  if (ts.model) {
    ts.model->trend = ts.model->trend || trend;
    ts.model->seasonal = ts.model->seasonal || seasonal;
  }
  return ts;
}

TimeSeries generate(const ProcessModel& model, std::size_t n, std::uint64_t seed) {
  validate(model);
  TimeSeries ts = std::visit(overloaded{
                                 [&](const FgnModel& m) { return gen_fgn(m.hurst, n, seed); },
                                 [&](const FarimaModel& m) { return gen_farima(m, n, seed); },
                                 [&](const SpectralModel& m) { return gen_spectral(m, n, seed); },
                                 [&](const MfarimaModel& m) { return gen_mfarima(m.d_first, m.d_second, n, seed); },
                             },
                             model.base);
  ts = contaminate(std::move(ts), model.trend, model.seasonal);
  ts.model = model;
  return ts;
}

ProcessModel benchmark_model(Benchmark id, double d) {
  switch (id) {
    case Benchmark::x1: return {FgnModel{d + 0.5}};
    case Benchmark::x2: return {FarimaModel{d, {}, {}, Innovation::gaussian}};
    case Benchmark::x3: return {FarimaModel{d, {}, {}, Innovation::uniform_pm1}};
    case Benchmark::x4: return {FarimaModel{d, {}, {}, Innovation::burr_2_1}};
    case Benchmark::x5: return {FarimaModel{d, {}, {}, Innovation::cauchy}};
    case Benchmark::x6: return {FarimaModel{d, {0.7}, {-0.3}, Innovation::gaussian}};
    case Benchmark::x7: return {FarimaModel{d, {0.7}, {-0.3}, Innovation::uniform_pm1}};
    case Benchmark::x8: return {SpectralModel{SpectralDensity::power_law, d, 1.0}};
    case Benchmark::garma: return {SpectralModel{SpectralDensity::shifted_pole, d, 0.0}};
    case Benchmark::trend: return {FarimaModel{d, {}, {}, Innovation::gaussian}, true, false};
    case Benchmark::trend_seasonal: return {FarimaModel{d, {}, {}, Innovation::gaussian}, true, true};
    case Benchmark::mfarima: return {MfarimaModel{0.1, 0.4}};
  }
  throw DomainError("unknown benchmark");
}

namespace {
constexpr std::array<std::pair<Benchmark, std::string_view>, 12> kNames = {{
    {Benchmark::x1, "X1"},
    {Benchmark::x2, "X2"},
    {Benchmark::x3, "X3"},
    {Benchmark::x4, "X4"},
    {Benchmark::x5, "X5"},
    {Benchmark::x6, "X6"},
    {Benchmark::x7, "X7"},
    {Benchmark::x8, "X8"},
    {Benchmark::garma, "GARMA"},
    {Benchmark::trend, "TREND"},
    {Benchmark::trend_seasonal, "TREND_SEASONAL"},
    {Benchmark::mfarima, "MFARIMA"},
}};
constexpr std::array<Benchmark, 12> kAll = {Benchmark::x1, Benchmark::x2, Benchmark::x3, Benchmark::x4,
                                            Benchmark::x5, Benchmark::x6, Benchmark::x7, Benchmark::x8,
                                            Benchmark::garma, Benchmark::trend, Benchmark::trend_seasonal,
                                            Benchmark::mfarima};
}  // namespace

std::string_view to_string(Benchmark id) {
  for (const auto& [b, name] : kNames) {
    if (b == id) return name;
  }
  return "?";
}

std::optional<Benchmark> benchmark_from_string(std::string_view name) {
  for (const auto& [b, n] : kNames) {
    if (n == name) return b;
  }
  return std::nullopt;
}

std::span<const Benchmark> all_benchmarks() { return kAll; }

}  // namespace lrd
