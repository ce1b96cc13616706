#pragma once

// Initial data with closed-form Fourier coefficients, plus the regression
// estimate of the Sobolev threshold sigma_0 = sup{ sigma : u0 in H^sigma }.

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "tlle/grid.hpp"

namespace tlle {

struct Jump {
  double location; ///< radians in [0, 2 pi)
  cplx height;     ///< right limit minus left limit
};

enum class Discretization {
  Auto,      ///< Sampled when point values and jumps are known, Truncated otherwise
  Sampled,   ///< DFT of point values (right limits at jump points)
  Truncated, ///< closed-form coefficients restricted to the grid band
};

class AnalyticProfile {
public:
  using CoeffFn = std::function<cplx(long)>;
  using ValueFn = std::function<cplx(double)>;

  AnalyticProfile(std::string name, CoeffFn coeff_fn, ValueFn value_fn, std::vector<Jump> jumps,
                  double sigma0_true, double amplitude = 1.0);

  const std::string& name() const noexcept { return name_; }
  double amplitude() const noexcept { return amplitude_; }
  double sigma0_true() const noexcept { return sigma0_; }
  bool has_values() const noexcept { return static_cast<bool>(value_fn_); }

  /// Scaled coefficient amplitude * u_hat(k).
  cplx coefficient(long k) const { return amplitude_ * coeff_fn_(k); }
  /// Scaled point value; throws if the profile is coefficient-only.
  cplx value(double x) const;
  /// Jumps with heights scaled by the amplitude.
  std::vector<Jump> jumps() const;

  AnalyticProfile with_amplitude(double amplitude) const;

  SpectralField to_field(const FourierGrid& grid,
                         Discretization mode = Discretization::Auto) const;

private:
  std::string name_;
  CoeffFn coeff_fn_;
  ValueFn value_fn_;
  std::vector<Jump> jumps_;
  double sigma0_;
  double amplitude_;
};

inline constexpr double kInfiniteRegularity = std::numeric_limits<double>::infinity();

/// Indicator of [left, right) times height. Empty or full-circle support
/// degenerates to a constant with no jumps.
AnalyticProfile step_profile(double left, double right, double height);
/// x / 2 pi - floor(x / 2 pi); one unit drop at x = 0.
AnalyticProfile sawtooth_profile();
AnalyticProfile constant_profile(cplx value = 1.0);
/// e^{ikx}.
AnalyticProfile single_mode_profile(long k = 1);
/// sum_{j >= 0} 2^{-j alpha} cos(2^j x); Holder-alpha, sigma_0 = alpha.
AnalyticProfile weierstrass_profile(double alpha);
/// Fixed complex trig polynomial on |k| <= 4 with ||u||_{L^2} of order one.
/// Smooth in space and time, used where rough data would hide a time-stepping
/// order behind spatial resolution effects.
AnalyticProfile smooth_profile();
/// Coefficient table keyed by wavenumber (values are u_hat(k)).
AnalyticProfile tabulated_profile(std::map<long, cplx> table, std::string name = "table");
/// Reads "k re im" lines; '#' starts a comment.
AnalyticProfile load_profile_table(const std::string& path);

/// CLI names: step, sawtooth, constant, single-mode, smooth, weierstrass:ALPHA,
/// table:PATH.
AnalyticProfile profile_from_name(const std::string& name, double amplitude = 1.0);

struct WavenumberRange {
  long lo;
  long hi;
};

struct Sigma0Estimate {
  double value = 0.0;
  double std_error = 0.0;
  bool above_cap = false; ///< decay steeper than the grid can resolve
  std::size_t points = 0;
};

/// Least-squares fit of log|u_hat(k)| = c - (sigma + 1/2) log|k| over
/// lo <= |k| <= hi. Coefficients at the round-off floor are skipped, which
/// drops the identically vanishing even modes of a symmetric step.
Sigma0Estimate estimate_sigma0(const SpectralField& field, WavenumberRange fit_range,
                               double sigma_cap = 16.0);

} // namespace tlle
