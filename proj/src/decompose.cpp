#include "tlle/decompose.hpp"

#include <cmath>
#include <string>

#include "tlle/analysis.hpp"
#include "tlle/error.hpp"
#include "tlle/propagator.hpp"

namespace tlle {

SpectralField triple_convolution(const SpectralField& field) {
  const FourierGrid& g = field.grid();
  // Inputs live in |k| <= n/2 - 1, so outputs up to 3(n/2 - 1) fold back past
  // -(n/2 - 1) once the padded grid has 2n points.
  const FourierGrid padded(2 * g.size());
  const SpectralField up = resample(field, padded);
  std::vector<cplx> w = from_spectral(up);
  for (auto& v : w) v *= std::norm(v);
  const SpectralField prod = to_spectral(padded, w);
  SpectralField out = resample(prod, g);
  out *= kTwoPi * kTwoPi;
  return out;
}

ResonantSplit resonant_split(const SpectralField& field) {
  const FourierGrid& g = field.grid();
  const double mass = field.coeff_norm_sq();
  SpectralField mean = field * cplx(2.0 * mass);
  SpectralField rho(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx a = field.coeffs()[i];
    rho.coeffs()[i] = -std::norm(a) * a;
  }
  SpectralField r = triple_convolution(field);
  r -= mean;
  r -= rho;
  return ResonantSplit{std::move(mean), std::move(rho), std::move(r)};
}

std::vector<double> gauge_phase(const Trajectory& traj, Quadrature rule) {
  const std::size_t n = traj.size();
  std::vector<double> f(n);
  for (std::size_t i = 0; i < n; ++i) f[i] = kGaugeConstant * traj.fields[i].l2_norm_sq();
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  const double h = traj.times[1] - traj.times[0];

  if (rule == Quadrature::Trapezoid) {
    for (std::size_t i = 1; i < n; ++i) out[i] = out[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return out;
  }

  // Composite Simpson on [0, t_{2m}].
  std::vector<double> even(n, 0.0);
  for (std::size_t i = 2; i < n; i += 2) even[i] = even[i - 2] + h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
  for (std::size_t i = 1; i < n; ++i) {
    if (i % 2 == 0) {
      out[i] = even[i];
    } else if (i == 1) {
      out[i] = 0.5 * h * (f[0] + f[1]);
    } else {
      // Simpson to t_{i-3}, then the 3/8 rule over the last three intervals.
      out[i] = even[i - 3] + 3.0 * h / 8.0 * (f[i - 3] + 3.0 * f[i - 2] + 3.0 * f[i - 1] + f[i]);
    }
  }
  return out;
}

SpectralField apply_gauge(const SpectralField& u, double phase) {
  return u * std::polar(1.0, -phase);
}

namespace {

SpectralField duhamel_frame(const Trajectory& traj, std::size_t i) {
  const SpectralField free = linear_evolve(traj.initial(), traj.times[i], traj.params);
  return traj.fields[i] - free * std::polar(1.0, traj.phase[i]);
}

} // namespace

DuhamelSeries duhamel_part(const Trajectory& traj) {
  DuhamelSeries out;
  out.times = traj.times;
  out.gauge_phase = traj.phase;
  out.n_fields.reserve(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) out.n_fields.push_back(duhamel_frame(traj, i));
  return out;
}

DuhamelSeries duhamel_part(const Trajectory& traj, const AnalyticProfile& profile) {
  const SpectralField u0 = profile.to_field(traj.grid());
  if (relative_l2_error(u0, traj.initial()) > 1e-12)
    throw ShapeError("profile '" + profile.name() + "' does not match the trajectory's initial datum");
  return duhamel_part(traj);
}

SpectralField duhamel_at(const Trajectory& traj, double t) {
  const double tol = 1e-9 * std::max(1.0, std::abs(t));
  for (std::size_t i = 0; i < traj.size(); ++i)
    if (std::abs(traj.times[i] - t) <= tol) return duhamel_frame(traj, i);
  throw ShapeError("time " + std::to_string(t) + " is not a stored frame of the trajectory");
}

std::vector<double> smoothing_profile(const DuhamelSeries& series, double order) {
  std::vector<double> out;
  out.reserve(series.n_fields.size());
  for (const auto& f : series.n_fields) out.push_back(sobolev_norm(f, order));
  return out;
}

} // namespace tlle
