#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lrd/rng.hpp"

namespace lrd {

enum class Innovation { gaussian, uniform_pm1, burr_2_1, cauchy };

// Spectral densities available to the spectral generator, on [-pi, pi]:
//   white         f = 1 / (2 pi)
//   power_law     f = |l|^(-2d) (1 + |l|^d')
//   shifted_pole  f = ||l| - pi/2|^(-2d)
enum class SpectralDensity { white, power_law, shifted_pole };

struct FgnModel {
  double hurst = 0.5;
};

// (1 - sum ar_k B^k) X = (1 + sum ma_k B^k) (1 - B)^(-d) xi
struct FarimaModel {
  double d = 0.0;
  std::vector<double> ar;
  std::vector<double> ma;
  Innovation innovation = Innovation::gaussian;
};

struct SpectralModel {
  SpectralDensity density = SpectralDensity::white;
  double d = 0.0;
  double d_prime = 1.0;
};

// First half FARIMA(0, d_first, 0), second half an independent FARIMA(0, d_second, 0).
struct MfarimaModel {
  double d_first = 0.1;
  double d_second = 0.4;
};

using BaseProcess = std::variant<FgnModel, FarimaModel, SpectralModel, MfarimaModel>;

// A base process plus optional deterministic contamination:
// trend adds (1 - 2t/n), seasonal adds sin(pi t / 6), t = 1..n.
struct ProcessModel {
  BaseProcess base = FgnModel{};
  bool trend = false;
  bool seasonal = false;
};

struct TimeSeries {
  std::vector<double> values;
  std::optional<ProcessModel> model;
  std::uint64_t seed = 0;

  std::size_t size() const { return values.size(); }
};

// Throws DomainError when parameters fall outside the generator's domain.
void validate(const ProcessModel& model);
std::string describe(const ProcessModel& model);

double burr_cdf(double x);
double burr_quantile(double u);
double sample_innovation(Innovation law, rng::Engine& engine);

// a_0 = 1, a_j = a_{j-1} (j - 1 + d) / j
std::vector<double> fractional_weights(double d, std::size_t count);
std::vector<double> fgn_autocovariance(double hurst, std::size_t max_lag);
double spectral_density(const SpectralModel& model, double lambda);
// gamma(k) = int_{-pi}^{pi} f(l) cos(k l) dl, k = 0..max_lag
std::vector<double> spectral_autocovariance(const SpectralModel& model, std::size_t max_lag);
// int_0^{j pi/2} u^beta cos(u) du for j = 0..count, beta > -1.
std::vector<double> power_cosine_integrals(double beta, std::size_t count);

// Exact Gaussian sample with the given autocovariance by circulant embedding.
// `autocov(max_lag)` must return lags 0..max_lag. Small negative embedding
// eigenvalues (total mass < 1e-6 of the spectrum) are clipped; otherwise the
// embedding is doubled, up to three times, before failing with NumericError.
template <class AutocovFn>
std::vector<double> circulant_sample(AutocovFn&& autocov, std::size_t n, rng::Engine& engine);

// Circulant embedding eigenvalues for a fixed embedding half-size.
std::vector<double> embedding_eigenvalues(std::span<const double> autocov, std::size_t half_size);
std::vector<double> circulant_draw(std::span<const double> eigenvalues, std::size_t n, rng::Engine& engine);

TimeSeries gen_fgn(double hurst, std::size_t n, std::uint64_t seed);
TimeSeries gen_farima(const FarimaModel& model, std::size_t n, std::uint64_t seed);
TimeSeries gen_spectral(const SpectralModel& model, std::size_t n, std::uint64_t seed);
TimeSeries gen_mfarima(double d_first, double d_second, std::size_t n, std::uint64_t seed);
TimeSeries contaminate(TimeSeries ts, bool trend, bool seasonal);
TimeSeries generate(const ProcessModel& model, std::size_t n, std::uint64_t seed);

// Truncation length of the moving-average representation used by gen_farima.
std::size_t farima_truncation(std::size_t n);

// Benchmark and robustness processes.
enum class Benchmark { x1, x2, x3, x4, x5, x6, x7, x8, garma, trend, trend_seasonal, mfarima };

ProcessModel benchmark_model(Benchmark id, double d);
std::string_view to_string(Benchmark id);
std::optional<Benchmark> benchmark_from_string(std::string_view name);
std::span<const Benchmark> all_benchmarks();

}  // namespace lrd

#include "lrd/detail/circulant.ipp"
