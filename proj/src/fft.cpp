#include "lrd/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace lrd::fft {

namespace {

enum class Kind { r2c, c2r, forward, backward };

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(Kind kind, std::size_t n) {
    std::lock_guard lock(mutex_);
    auto key = std::make_tuple(kind, n);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const int size = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::vector<double> real(n);
    std::vector<cplx> half(n / 2 + 1);
    std::vector<cplx> full(n);
    auto* hp = reinterpret_cast<fftw_complex*>(half.data());
    auto* fp = reinterpret_cast<fftw_complex*>(full.data());
    fftw_plan plan = nullptr;
    switch (kind) {
      case Kind::r2c: plan = fftw_plan_dft_r2c_1d(size, real.data(), hp, flags); break;
      case Kind::c2r: plan = fftw_plan_dft_c2r_1d(size, hp, real.data(), flags); break;
      case Kind::forward: plan = fftw_plan_dft_1d(size, fp, fp, FFTW_FORWARD, flags); break;
      case Kind::backward: plan = fftw_plan_dft_1d(size, fp, fp, FFTW_BACKWARD, flags); break;
    }
    if (plan == nullptr) throw std::runtime_error("fft: FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<Kind, std::size_t>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

std::size_t next_fast_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

std::vector<cplx> rfft(std::span<const double> x, std::size_t n) {
  if (n == 0) return {};
  std::vector<double> in(n, 0.0);
  std::copy_n(x.begin(), std::min(x.size(), n), in.begin());
  std::vector<cplx> out(n / 2 + 1);
  fftw_execute_dft_r2c(cache().get(Kind::r2c, n), in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const cplx> spectrum, std::size_t n) {
  if (n == 0) return {};
  if (spectrum.size() != n / 2 + 1) throw std::invalid_argument("irfft: spectrum size mismatch");
  std::vector<cplx> in(spectrum.begin(), spectrum.end());  // c2r clobbers its input
  std::vector<double> out(n);
  fftw_execute_dft_c2r(cache().get(Kind::c2r, n), reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

std::vector<cplx> dft(std::span<const cplx> x, bool inverse) {
  std::vector<cplx> data(x.begin(), x.end());
  if (data.empty()) return data;
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(inverse ? Kind::backward : Kind::forward, data.size()), p, p);
  return data;
}

}  // namespace lrd::fft
