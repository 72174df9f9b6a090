#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

// Thin FFTW wrapper. Plans are created once per (kind, size) under a lock and
// executed through the thread-safe new-array interface.
namespace lrd::fft {

using cplx = std::complex<double>;

// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t next_fast_size(std::size_t n);

// Real-to-complex DFT of x zero-padded to n; returns n/2 + 1 bins.
// X_k = sum_t x_t exp(-2 pi i t k / n).
std::vector<cplx> rfft(std::span<const double> x, std::size_t n);

// Inverse of rfft including the 1/n factor; returns n real samples.
std::vector<double> irfft(std::span<const cplx> spectrum, std::size_t n);

// Complex DFT (sign -1 forward, +1 inverse); no normalisation.
std::vector<cplx> dft(std::span<const cplx> x, bool inverse);

}  // namespace lrd::fft
