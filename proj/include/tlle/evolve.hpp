#pragma once

// Time integration of
//   u_t = beta u_xxx + i u_xx - (damping + i theta) u + i |u|^2 u + f,
// with the stiff linear part applied exactly per mode.
//
// The steppers advance the gauged pair (v, Phi), u = e^{i Phi} v, where
// Phi' = kGaugeConstant ||u||_{L^2}^2 absorbs the mean part of the cubic term.
// That part multiplies every mode by the same real rate; left in the source
// term it is resonant with the linear flow, and an exponential integrator
// with |h m(k)| >> 1 drops it on the stiff modes.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "tlle/error.hpp"
#include "tlle/grid.hpp"
#include "tlle/profiles.hpp"

namespace tlle {

enum class Scheme {
  Etd4,    ///< fourth-order exponential Runge-Kutta (Cox-Matthews stages)
  Strang2, ///< exact linear half steps around an RK4 nonlinear step
};

enum class Dealias {
  TwoThirds, ///< non-resonant remainder formed from |k| <= n/3 and truncated there
  None,      ///< plain pseudospectral product on the n-point grid
};

std::string to_string(Scheme scheme);
std::string to_string(Dealias dealias);
Scheme parse_scheme(const std::string& name);
Dealias parse_dealias(const std::string& name);

struct SolverOptions {
  Scheme scheme = Scheme::Etd4;
  Dealias dealias = Dealias::TwoThirds;
};

/// Coefficients of the cubic term |u|^2 u under the chosen dealiasing.
///
/// With TwoThirds the term is split as (mean + diagonal + remainder): the
/// mean term 2 ||u_hat||^2 u_hat / (2 pi)^2 and the diagonal term
/// -|u_hat(k)|^2 u_hat(k) / (2 pi)^2 are applied exactly on every mode, and
/// only the remainder is built from the 2/3-filtered field and truncated to
/// |k| <= n/3. The gauge phase therefore acts on the whole spectrum.
SpectralField cubic_term(const SpectralField& field, Dealias dealias);

/// cubic_term minus its mean part 2 sum_k |u_hat(k)|^2 u_hat / (2 pi)^2, i.e.
/// the diagonal and non-resonant terms that drive the gauged variable.
SpectralField gauged_cubic_term(const SpectralField& field, Dealias dealias);

/// phi_l(z) = sum_{j >= 0} z^j / (j + l)!, l = 0..3, evaluated without
/// cancellation for small |z|.
cplx phi_function(int l, cplx z);

/// Precomputed per-mode exponentials for a fixed (grid, dt, params, options).
class Stepper {
public:
  Stepper(const FourierGrid& grid, double dt, const ModelParams& params, SolverOptions options,
          SpectralField forcing);

  /// Advances (u, Phi) one step in place; throws BlowUpError with time
  /// t_after on non-finite output.
  void advance(SpectralField& field, double& phase, double t_after) const;

  double dt() const noexcept { return dt_; }

private:
  // Source term of the gauged variable v at gauge phase phase.
  SpectralField rhs(const SpectralField& v, double phase) const;
  double phase_rate(const SpectralField& v) const;
  void advance_etd4(SpectralField& v, double& phase) const;
  void advance_strang(SpectralField& v, double& phase) const;

  FourierGrid grid_;
  double dt_;
  ModelParams params_;
  SolverOptions options_;
  SpectralField forcing_;
  std::vector<cplx> e_full_, e_half_, phi1_half_, f_u_, f_ab_, f_c_;
};

/// One step from `field`; forcing tied to `field` unless params override it.
SpectralField step(const SpectralField& field, double dt, const ModelParams& params,
                   SolverOptions options = {});

struct Trajectory {
  std::vector<double> times;
  std::vector<SpectralField> fields;
  /// Gauge phase kGaugeConstant int_0^t ||u||_{L^2}^2 ds at stored times, as
  /// integrated by the stepper alongside the field.
  std::vector<double> phase;
  double dt = 0.0;
  std::size_t stride = 1;
  std::size_t steps = 0;
  SolverOptions options;
  ModelParams params;
  /// Resolved forcing used by the run.
  std::shared_ptr<const SpectralField> forcing;

  const FourierGrid& grid() const { return fields.front().grid(); }
  const SpectralField& initial() const { return fields.front(); }
  std::size_t size() const noexcept { return times.size(); }
};

class BlowUpError : public Error {
public:
  BlowUpError(double time, std::shared_ptr<const Trajectory> partial = nullptr);
  double time() const noexcept { return time_; }
  /// Frames stored before the failure (may be null when raised by step()).
  const std::shared_ptr<const Trajectory>& partial() const noexcept { return partial_; }

private:
  double time_;
  std::shared_ptr<const Trajectory> partial_;
};

/// Phase constant: d Phi/dt = kGaugeConstant * ||u||_{L^2}^2 cancels the mean
/// part 2 ||u_hat||^2 / (2 pi)^2 of the cubic term under the unnormalized
/// transform, since sum_k |u_hat(k)|^2 = 2 pi ||u||_{L^2}^2.
inline constexpr double kGaugeConstant = 1.0 / kPi;

/// Integrates to t_end, storing every `stride` steps. The step count is
/// ceil(t_end / dt) rounded up to a multiple of stride, and the step size is
/// shrunk to land exactly on t_end.
Trajectory solve(const SpectralField& initial, double t_end, double dt, const ModelParams& params,
                 std::size_t stride, SolverOptions options = {});
Trajectory solve(const AnalyticProfile& profile, const FourierGrid& grid, double t_end, double dt,
                 const ModelParams& params, std::size_t stride, SolverOptions options = {});

/// -2 damping ||u||^2 + 2 Re int f conj(u) dx.
double energy_rhs(const SpectralField& u, const SpectralField& forcing, double damping);

struct EnergyResidual {
  std::vector<double> times;
  std::vector<double> values;
  double max_abs() const;
};

/// r(t) = D_t ||u||^2 - energy_rhs(u) at interior stored frames. D_t is the
/// five-point fourth-order centered difference when at least five frames are
/// stored and the three-point one otherwise. Throws FitError below 3 frames.
EnergyResidual energy_balance_residual(const Trajectory& traj);

} // namespace tlle
