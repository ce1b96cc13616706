#pragma once

// Exact linear evolution e^{t (beta d_x^3 + i d_x^2 - (damping + i theta))} as a
// Fourier multiplier, and its finite translate representation at times in pi Q.

#include <cstdint>
#include <vector>

#include "tlle/grid.hpp"
#include "tlle/profiles.hpp"

namespace tlle {

/// t = pi p / q with gcd(p, q) = 1, p >= 0, q >= 1.
class RationalTime {
public:
  /// Reduces to lowest terms; throws UnsupportedParameters for q < 1 or p < 0.
  RationalTime(std::int64_t p, std::int64_t q);

  std::int64_t p() const noexcept { return p_; }
  std::int64_t q() const noexcept { return q_; }
  double value() const noexcept { return kPi * static_cast<double>(p_) / static_cast<double>(q_); }

  friend bool operator==(const RationalTime&, const RationalTime&) = default;

private:
  std::int64_t p_;
  std::int64_t q_;
};

/// Per-mode growth rate m(k) = -i (beta k^3 + k^2 + theta) - damping.
cplx dispersion_symbol(long k, const ModelParams& params);

SpectralField linear_evolve(const SpectralField& field, double t, const ModelParams& params);
/// Same multiplier, with the dispersive phase reduced exactly in integer
/// arithmetic when beta is an integer (falls back to t = pi p / q otherwise).
SpectralField linear_evolve(const SpectralField& field, const RationalTime& t,
                            const ModelParams& params);

/// Unimodular dispersive multiplier e^{-i pi (p/q)(beta k^3 + k^2)} for integer beta.
cplx rational_dispersive_phase(long k, const RationalTime& t, std::int64_t beta);

struct RevivalRepresentation {
  RationalTime time;
  std::size_t period;             ///< Q = 2q translates
  std::vector<cplx> coefficients; ///< c_j, translate x -> x - 2 pi j / Q
  cplx scalar_factor;             ///< e^{-t (damping + i theta)}

  double shift(std::size_t j) const {
    return kTwoPi * static_cast<double>(j) / static_cast<double>(period);
  }
};

/// c_j = (1/Q) sum_{m<Q} e^{-i pi (p/q)(beta m^3 + m^2)} e^{2 pi i j m / Q}.
/// Throws UnsupportedParameters for non-integer beta.
RevivalRepresentation revival_coefficients(const RationalTime& t, const ModelParams& params);

/// scalar_factor * sum_j c_j * (field translated by 2 pi j / Q).
SpectralField apply_revival(const RevivalRepresentation& rep, const SpectralField& field);

/// Revival formula applied to the profile's own coefficients on `grid`.
SpectralField revival_evolve(const AnalyticProfile& profile, const RationalTime& t,
                             const ModelParams& params, const FourierGrid& grid,
                             Discretization mode = Discretization::Truncated);

/// Jump set predicted by the translate representation: every original jump
/// moved by 2 pi j / Q with height c_j * scalar_factor * h, coincident
/// locations merged, zero heights dropped. Sorted by location.
std::vector<Jump> revival_jumps(const RevivalRepresentation& rep, const std::vector<Jump>& jumps,
                                double tol = 1e-12);

} // namespace tlle
