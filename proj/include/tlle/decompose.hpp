#pragma once

// Resonant decomposition of the cubic term, the gauge phase, and the Duhamel
// part N(t) = u(t) - e^{i Phi(t)} e^{tL} u0 with its smoothing diagnostic.

#include <vector>

#include "tlle/evolve.hpp"
#include "tlle/grid.hpp"

namespace tlle {

/// Plain triple sum T(k) = sum_{k1,k2} a(k1) conj(a(k2)) a(k - k1 + k2) over
/// the grid band, evaluated exactly by zero padding (no aliasing).
SpectralField triple_convolution(const SpectralField& field);

/// T = mean_part + rho + r_term, in the plain-sum normalization of T.
struct ResonantSplit {
  SpectralField mean_part; ///< 2 ||a||_{l^2}^2 a(k)
  SpectralField rho;       ///< -|a(k)|^2 a(k)
  SpectralField r_term;    ///< sum over k1 != k, k2 != k1

  SpectralField total() const { return mean_part + rho + r_term; }
};

ResonantSplit resonant_split(const SpectralField& field);

enum class Quadrature { Trapezoid, Simpson };

/// Phi(t_i) = kGaugeConstant * int_0^{t_i} ||u||_{L^2}^2 ds over stored frames.
/// Simpson uses the composite rule with a 3/8 panel on odd counts; the first
/// interval falls back to the trapezoid.
std::vector<double> gauge_phase(const Trajectory& traj, Quadrature rule = Quadrature::Trapezoid);

/// e^{-i phi} u: the gauged variable v of the transformation u = e^{i Phi} v.
SpectralField apply_gauge(const SpectralField& u, double phase);

struct DuhamelSeries {
  std::vector<double> times;
  std::vector<SpectralField> n_fields;
  std::vector<double> gauge_phase;
};

/// Subtraction form over every stored frame, using the trajectory's
/// step-accumulated phase.
DuhamelSeries duhamel_part(const Trajectory& traj);
/// Same, checking that the profile reproduces the trajectory's initial datum.
DuhamelSeries duhamel_part(const Trajectory& traj, const AnalyticProfile& profile);
/// N at a single stored time; throws ShapeError when t is not a stored frame.
SpectralField duhamel_at(const Trajectory& traj, double t);

/// t -> ||N(t)||_{H^{order}}.
std::vector<double> smoothing_profile(const DuhamelSeries& series, double order);

} // namespace tlle
