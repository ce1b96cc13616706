#include "tlle/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tlle/error.hpp"
#include "tlle/fft.hpp"

namespace tlle {

FourierGrid::FourierGrid(std::size_t n_modes) : n_(n_modes) {
  if (n_modes < 4 || n_modes % 2 != 0)
    throw SizingError("grid size must be even and at least 4, got " + std::to_string(n_modes));
}

std::vector<double> FourierGrid::points() const {
  std::vector<double> xs(n_);
  for (std::size_t j = 0; j < n_; ++j) xs[j] = point(j);
  return xs;
}

std::size_t FourierGrid::index_of(long k) const {
  if (!resolves(k)) throw ShapeError("wavenumber " + std::to_string(k) + " is not on the grid");
  return k >= 0 ? static_cast<std::size_t>(k) : static_cast<std::size_t>(k + static_cast<long>(n_));
}

FourierGrid make_grid(std::size_t n_modes) { return FourierGrid(n_modes); }

SpectralField::SpectralField(FourierGrid grid) : grid_(grid), coeffs_(grid.size(), cplx{}) {}

SpectralField::SpectralField(FourierGrid grid, std::vector<cplx> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw ShapeError("coefficient count " + std::to_string(coeffs_.size()) +
                     " does not match grid size " + std::to_string(grid_.size()));
  zero_nyquist();
}

cplx SpectralField::at(long k) const {
  if (!grid_.resolves(k)) return {};
  return coeffs_[grid_.index_of(k)];
}

void SpectralField::set(long k, cplx value) {
  const std::size_t i = grid_.index_of(k);
  if (i == grid_.nyquist_index()) return;
  coeffs_[i] = value;
}

double SpectralField::hermitian_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const long k = grid_.wavenumber(i);
    worst = std::max(worst, std::abs(coeffs_[i] - std::conj(at(-k))));
  }
  return worst;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ShapeError("field grids differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  if (!(grid_ == other.grid_)) throw ShapeError("field grids differ");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(cplx scale) {
  for (auto& c : coeffs_) c *= scale;
  return *this;
}

double SpectralField::coeff_norm_sq() const {
  double acc = 0.0;
  for (const auto& c : coeffs_) acc += std::norm(c);
  return acc;
}

SpectralField to_spectral(const FourierGrid& grid, std::span<const cplx> samples) {
  if (samples.size() != grid.size())
    throw ShapeError("sample count " + std::to_string(samples.size()) +
                     " does not match grid size " + std::to_string(grid.size()));
  std::vector<cplx> out(grid.size());
  fft::forward(samples, out);
  const double h = grid.spacing();
  for (auto& c : out) c *= h;
  return SpectralField(grid, std::move(out));
}

SpectralField to_spectral(const FourierGrid& grid, std::span<const double> samples) {
  std::vector<cplx> tmp(samples.begin(), samples.end());
  return to_spectral(grid, tmp);
}

std::vector<cplx> from_spectral(const SpectralField& field) {
  std::vector<cplx> out(field.size());
  fft::backward(field.coeffs(), out);
  for (auto& v : out) v /= kTwoPi;
  return out;
}

SpectralField resample(const SpectralField& field, const FourierGrid& target) {
  SpectralField out(target);
  const FourierGrid& src = field.grid();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const long k = src.wavenumber(i);
    if (target.resolves(k) && target.index_of(k) != target.nyquist_index())
      out.coeffs()[target.index_of(k)] = field.coeffs()[i];
  }
  return out;
}

SpectralField translate(const SpectralField& field, double shift) {
  SpectralField out = field;
  const FourierGrid& g = field.grid();
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double k = static_cast<double>(g.wavenumber(i));
    out.coeffs()[i] *= std::polar(1.0, -k * shift);
  }
  out.zero_nyquist();
  return out;
}

double relative_l2_error(const SpectralField& a, const SpectralField& b) {
  const double diff = (a - b).coeff_norm_sq();
  const double ref = b.coeff_norm_sq();
  return ref > 0.0 ? std::sqrt(diff / ref) : std::sqrt(diff / kTwoPi);
}

bool ModelParams::beta_is_integer() const { return std::isfinite(beta) && beta == std::round(beta); }

SpectralField ModelParams::forcing_for(const SpectralField& initial) const {
  if (!forcing) return initial;
  if (!(forcing->grid() == initial.grid())) return resample(*forcing, initial.grid());
  return *forcing;
}

} // namespace tlle
