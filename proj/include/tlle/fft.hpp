#pragma once

// Thin wrapper over FFTW's guru-free basic interface. Plans are cached per
// (size, direction) and executed through the new-array API, which FFTW
// documents as thread safe. Plans use FFTW_ESTIMATE so results are bitwise
// reproducible run to run.

#include <complex>
#include <cstddef>
#include <span>

namespace tlle::fft {

/// out[j] = sum_m in[m] e^{-2 pi i j m / n}  (unnormalized).
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
/// out[m] = sum_j in[j] e^{+2 pi i j m / n}  (unnormalized).
void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

/// 2-D row-major transforms over an (rows x cols) array, unnormalized.
void forward_2d(std::size_t rows, std::size_t cols, std::span<const std::complex<double>> in,
                std::span<std::complex<double>> out);

} // namespace tlle::fft
