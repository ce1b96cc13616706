#pragma once

// Periodic grid on T = R / 2 pi Z and the spectral representation shared by
// every other module.
//
// Fourier convention:
//   analysis   u_hat(k) = int_0^{2 pi} e^{-ikx} u(x) dx   (trapezoid / DFT rule)
//   synthesis  u(x)     = (1 / 2 pi) sum_k u_hat(k) e^{ikx}
// Coefficients are stored in FFT order: k = 0, 1, ..., n/2 - 1, -n/2, ..., -1.
// The Nyquist slot (k = -n/2) is held at exactly zero.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace tlle {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class FourierGrid {
public:
  /// Throws SizingError unless n_modes is even and >= 4.
  explicit FourierGrid(std::size_t n_modes);

  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return kTwoPi / static_cast<double>(n_); }
  double point(std::size_t j) const noexcept { return spacing() * static_cast<double>(j); }
  std::vector<double> points() const;

  /// Wavenumber stored at FFT-order slot i.
  long wavenumber(std::size_t i) const noexcept {
    const long n = static_cast<long>(n_);
    const long ii = static_cast<long>(i);
    return ii < n / 2 ? ii : ii - n;
  }
  /// Slot holding wavenumber k; k must lie in [-n/2, n/2 - 1].
  std::size_t index_of(long k) const;
  bool resolves(long k) const noexcept {
    const long h = static_cast<long>(n_ / 2);
    return k >= -h && k < h;
  }
  long k_min() const noexcept { return -static_cast<long>(n_ / 2); }
  long k_max() const noexcept { return static_cast<long>(n_ / 2) - 1; }
  std::size_t nyquist_index() const noexcept { return n_ / 2; }

  friend bool operator==(const FourierGrid&, const FourierGrid&) = default;

private:
  std::size_t n_;
};

FourierGrid make_grid(std::size_t n_modes);

/// Fourier coefficients of a periodic function. Value type.
class SpectralField {
public:
  explicit SpectralField(FourierGrid grid);
  SpectralField(FourierGrid grid, std::vector<cplx> coeffs);

  static SpectralField zeros(FourierGrid grid) { return SpectralField(grid); }

  const FourierGrid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return coeffs_.size(); }

  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  std::span<cplx> coeffs() noexcept { return coeffs_; }

  /// Coefficient at wavenumber k (zero outside the resolved band).
  cplx at(long k) const;
  void set(long k, cplx value);

  /// max_k |c(k) - conj(c(-k))|; zero for real-valued functions.
  double hermitian_defect() const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(cplx scale);
  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(SpectralField a, cplx s) { return a *= s; }
  friend SpectralField operator*(cplx s, SpectralField a) { return a *= s; }

  /// sum_k |c(k)|^2.
  double coeff_norm_sq() const;
  /// ||u||_{L^2}^2 = (1 / 2 pi) sum_k |c(k)|^2.
  double l2_norm_sq() const { return coeff_norm_sq() / kTwoPi; }

  void zero_nyquist() noexcept { coeffs_[grid_.nyquist_index()] = 0.0; }

private:
  FourierGrid grid_;
  std::vector<cplx> coeffs_;
};

/// Analysis transform of grid samples. Throws ShapeError on length mismatch.
SpectralField to_spectral(const FourierGrid& grid, std::span<const cplx> samples);
SpectralField to_spectral(const FourierGrid& grid, std::span<const double> samples);
/// Synthesis transform back to grid samples.
std::vector<cplx> from_spectral(const SpectralField& field);

/// Resample onto another grid by zero padding or truncation of coefficients.
SpectralField resample(const SpectralField& field, const FourierGrid& target);

/// Translate by a: result(x) = field(x - a), i.e. c(k) e^{-ika}.
SpectralField translate(const SpectralField& field, double shift);

/// Relative L^2 distance ||a - b|| / ||b|| (absolute when b is zero).
double relative_l2_error(const SpectralField& a, const SpectralField& b);

/// Coefficients of the model
///   u_t = beta u_xxx + i u_xx - (damping + i theta) u + i |u|^2 u + f.
struct ModelParams {
  double beta = 1.0;
  double theta = 0.0;
  double damping = 1.0;
  bool nonlinearity_on = true;
  /// Empty means the forcing is the initial datum at solve time.
  std::optional<SpectralField> forcing;

  bool beta_is_integer() const;
  /// Resolved forcing for a given initial datum.
  SpectralField forcing_for(const SpectralField& initial) const;
};

/// Orders consumed by the norm and smoothing diagnostics.
struct NormParams {
  double s = 0.0;
  double b = 0.0;
  double a = 0.0;
  double b_prime = 0.0;
};

} // namespace tlle
