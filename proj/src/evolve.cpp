#include "tlle/evolve.hpp"

#include <cmath>
#include <sstream>

#include "tlle/error.hpp"
#include "tlle/propagator.hpp"

namespace tlle {
namespace {

constexpr double kInvTwoPiSq = 1.0 / (kTwoPi * kTwoPi);

bool finite_field(const SpectralField& f) {
  for (const auto& c : f.coeffs())
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || std::abs(c) > 1e150) return false;
  return true;
}

// Pointwise |w|^2 w on the grid, returned as coefficients.
SpectralField physical_cube(const SpectralField& field) {
  std::vector<cplx> w = from_spectral(field);
  for (auto& v : w) v *= std::norm(v);
  return to_spectral(field.grid(), w);
}

} // namespace

std::string to_string(Scheme scheme) { return scheme == Scheme::Etd4 ? "etd4" : "strang2"; }
std::string to_string(Dealias dealias) {
  return dealias == Dealias::TwoThirds ? "two-thirds" : "none";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "etd4") return Scheme::Etd4;
  if (name == "strang2") return Scheme::Strang2;
  throw ConfigError("unknown scheme '" + name + "' (expected etd4 or strang2)");
}

Dealias parse_dealias(const std::string& name) {
  if (name == "two-thirds") return Dealias::TwoThirds;
  if (name == "none") return Dealias::None;
  throw ConfigError("unknown dealias mode '" + name + "' (expected two-thirds or none)");
}

namespace {

SpectralField cubic_term_impl(const SpectralField& field, Dealias dealias, bool with_mean) {
  const FourierGrid& g = field.grid();
  double total = 0.0;
  for (const auto& c : field.coeffs()) total += std::norm(c);
  const double full_mean = 2.0 * total * kInvTwoPiSq;

  if (dealias == Dealias::None) {
    SpectralField out = physical_cube(field);
    if (!with_mean)
      for (std::size_t i = 0; i < g.size(); ++i) out.coeffs()[i] -= full_mean * field.coeffs()[i];
    return out;
  }

  const long cutoff = static_cast<long>(g.size() / 3);
  SpectralField filtered = field;
  double kept = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.wavenumber(i)) <= cutoff)
      kept += std::norm(field.coeffs()[i]);
    else
      filtered.coeffs()[i] = 0.0;
  }
  SpectralField out = physical_cube(filtered);
  // In band: filtered product plus the mean contribution of the discarded
  // tail. Out of band: mean and diagonal terms only.
  const double tail_mean = 2.0 * (total - kept) * kInvTwoPiSq;
  const double in_shift = with_mean ? tail_mean : tail_mean - full_mean;
  const double out_mean = with_mean ? full_mean : 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx u = field.coeffs()[i];
    if (std::abs(g.wavenumber(i)) <= cutoff)
      out.coeffs()[i] += in_shift * u;
    else
      out.coeffs()[i] = out_mean * u - std::norm(u) * u * kInvTwoPiSq;
  }
  out.zero_nyquist();
  return out;
}

} // namespace

SpectralField cubic_term(const SpectralField& field, Dealias dealias) {
  return cubic_term_impl(field, dealias, true);
}

SpectralField gauged_cubic_term(const SpectralField& field, Dealias dealias) {
  return cubic_term_impl(field, dealias, false);
}

cplx phi_function(int l, cplx z) {
  if (l == 0) return std::exp(z);
  if (std::abs(z) < 1.0) {
    // Taylor series; 30 terms bring the tail below 1e-30 for |z| < 1.
    cplx term = 1.0;
    for (int j = 1; j <= l; ++j) term /= static_cast<double>(j);
    cplx acc = term;
    for (int j = 1; j < 30; ++j) {
      term *= z / static_cast<double>(j + l);
      acc += term;
    }
    return acc;
  }
  const cplx ez = std::exp(z);
  switch (l) {
  case 1: return (ez - 1.0) / z;
  case 2: return (ez - 1.0 - z) / (z * z);
  case 3: return (ez - 1.0 - z - 0.5 * z * z) / (z * z * z);
  default: throw UnsupportedParameters("phi functions are provided for l <= 3");
  }
}

Stepper::Stepper(const FourierGrid& grid, double dt, const ModelParams& params,
                 SolverOptions options, SpectralField forcing)
    : grid_(grid), dt_(dt), params_(params), options_(options), forcing_(std::move(forcing)) {
  if (!(dt > 0.0)) throw UnsupportedParameters("time step must be positive");
  if (!(forcing_.grid() == grid_)) forcing_ = resample(forcing_, grid_);
  const std::size_t n = grid_.size();
  e_full_.resize(n);
  e_half_.resize(n);
  phi1_half_.resize(n);
  f_u_.resize(n);
  f_ab_.resize(n);
  f_c_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = dt * dispersion_symbol(grid_.wavenumber(i), params_);
    const cplx p1 = phi_function(1, z), p2 = phi_function(2, z), p3 = phi_function(3, z);
    e_full_[i] = std::exp(z);
    e_half_[i] = std::exp(0.5 * z);
    phi1_half_[i] = phi_function(1, 0.5 * z);
    f_u_[i] = p1 - 3.0 * p2 + 4.0 * p3;
    f_ab_[i] = 2.0 * (p2 - 2.0 * p3);
    f_c_[i] = 4.0 * p3 - p2;
  }
}

SpectralField Stepper::rhs(const SpectralField& v, double phase) const {
  SpectralField out = forcing_ * std::polar(1.0, -phase);
  if (!params_.nonlinearity_on) return out;
  SpectralField cube = gauged_cubic_term(v, options_.dealias);
  cube *= cplx(0.0, 1.0);
  out += cube;
  return out;
}

double Stepper::phase_rate(const SpectralField& v) const {
  return params_.nonlinearity_on ? kGaugeConstant * v.l2_norm_sq() : 0.0;
}

void Stepper::advance_etd4(SpectralField& v, double& phase) const {
  const std::size_t n = grid_.size();
  const double h = dt_;
  const SpectralField nu = rhs(v, phase);
  const double pu = phase_rate(v);

  SpectralField a(grid_);
  for (std::size_t i = 0; i < n; ++i)
    a.coeffs()[i] = e_half_[i] * v.coeffs()[i] + 0.5 * h * phi1_half_[i] * nu.coeffs()[i];
  const double phase_a = phase + 0.5 * h * pu;
  const SpectralField na = rhs(a, phase_a);
  const double pa = phase_rate(a);

  SpectralField b(grid_);
  for (std::size_t i = 0; i < n; ++i)
    b.coeffs()[i] = e_half_[i] * v.coeffs()[i] + 0.5 * h * phi1_half_[i] * na.coeffs()[i];
  const double phase_b = phase + 0.5 * h * pa;
  const SpectralField nb = rhs(b, phase_b);
  const double pb = phase_rate(b);

  SpectralField c(grid_);
  for (std::size_t i = 0; i < n; ++i)
    c.coeffs()[i] = e_half_[i] * a.coeffs()[i] +
                    0.5 * h * phi1_half_[i] * (2.0 * nb.coeffs()[i] - nu.coeffs()[i]);
  // The phase has no linear part, so its stages are those of classical RK4.
  const double phase_c = phase + h * pb;
  const SpectralField nc = rhs(c, phase_c);
  const double pc = phase_rate(c);

  for (std::size_t i = 0; i < n; ++i)
    v.coeffs()[i] = e_full_[i] * v.coeffs()[i] +
                    h * (f_u_[i] * nu.coeffs()[i] + f_ab_[i] * (na.coeffs()[i] + nb.coeffs()[i]) +
                         f_c_[i] * nc.coeffs()[i]);
  v.zero_nyquist();
  phase += h * (pu + 2.0 * (pa + pb) + pc) / 6.0;
}

void Stepper::advance_strang(SpectralField& v, double& phase) const {
  const std::size_t n = grid_.size();
  const double h = dt_;
  for (std::size_t i = 0; i < n; ++i) v.coeffs()[i] *= e_half_[i];

  const SpectralField k1 = rhs(v, phase);
  const double p1 = phase_rate(v);
  const SpectralField v2 = v + k1 * cplx(0.5 * h);
  const SpectralField k2 = rhs(v2, phase + 0.5 * h * p1);
  const double p2 = phase_rate(v2);
  const SpectralField v3 = v + k2 * cplx(0.5 * h);
  const SpectralField k3 = rhs(v3, phase + 0.5 * h * p2);
  const double p3 = phase_rate(v3);
  const SpectralField v4 = v + k3 * cplx(h);
  const SpectralField k4 = rhs(v4, phase + h * p3);
  const double p4 = phase_rate(v4);
  for (std::size_t i = 0; i < n; ++i)
    v.coeffs()[i] += (h / 6.0) * (k1.coeffs()[i] + 2.0 * k2.coeffs()[i] + 2.0 * k3.coeffs()[i] +
                                  k4.coeffs()[i]);
  phase += h * (p1 + 2.0 * (p2 + p3) + p4) / 6.0;

  for (std::size_t i = 0; i < n; ++i) v.coeffs()[i] *= e_half_[i];
  v.zero_nyquist();
}

void Stepper::advance(SpectralField& field, double& phase, double t_after) const {
  if (!(field.grid() == grid_)) throw ShapeError("stepper grid does not match field grid");
  field *= std::polar(1.0, -phase);
  if (options_.scheme == Scheme::Etd4)
    advance_etd4(field, phase);
  else
    advance_strang(field, phase);
  field *= std::polar(1.0, phase);
  if (!finite_field(field) || !std::isfinite(phase)) throw BlowUpError(t_after);
}

SpectralField step(const SpectralField& field, double dt, const ModelParams& params,
                   SolverOptions options) {
  Stepper stepper(field.grid(), dt, params, options, params.forcing_for(field));
  SpectralField out = field;
  double phase = 0.0;
  stepper.advance(out, phase, dt);
  return out;
}

namespace {

std::string blow_up_message(double time) {
  std::ostringstream ss;
  ss << "solution blew up at t = " << time;
  return ss.str();
}

} // namespace

BlowUpError::BlowUpError(double time, std::shared_ptr<const Trajectory> partial)
    : Error(blow_up_message(time)), time_(time), partial_(std::move(partial)) {}

Trajectory solve(const SpectralField& initial, double t_end, double dt, const ModelParams& params,
                 std::size_t stride, SolverOptions options) {
  if (!(t_end >= 0.0)) throw UnsupportedParameters("t_end must be non-negative");
  if (!(dt > 0.0)) throw UnsupportedParameters("time step must be positive");
  if (stride == 0) throw UnsupportedParameters("stride must be at least 1");

  Trajectory traj;
  traj.stride = stride;
  traj.options = options;
  traj.params = params;
  auto forcing = std::make_shared<const SpectralField>(params.forcing_for(initial));
  traj.forcing = forcing;
  traj.times.push_back(0.0);
  traj.fields.push_back(initial);
  traj.phase.push_back(0.0);
  if (t_end == 0.0) {
    traj.dt = dt;
    return traj;
  }

  std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  steps = std::max<std::size_t>(steps, 1);
  steps = ((steps + stride - 1) / stride) * stride;
  const double h = t_end / static_cast<double>(steps);
  traj.dt = h;
  traj.steps = steps;

  const Stepper stepper(initial.grid(), h, params, options, *forcing);
  SpectralField u = initial;
  double phase = 0.0;
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t = h * static_cast<double>(n);
    try {
      stepper.advance(u, phase, t);
    } catch (const BlowUpError&) {
      throw BlowUpError(t, std::make_shared<const Trajectory>(traj));
    }
    if (n % stride == 0) {
      traj.times.push_back(t);
      traj.fields.push_back(u);
      traj.phase.push_back(phase);
    }
  }
  return traj;
}

Trajectory solve(const AnalyticProfile& profile, const FourierGrid& grid, double t_end, double dt,
                 const ModelParams& params, std::size_t stride, SolverOptions options) {
  return solve(profile.to_field(grid), t_end, dt, params, stride, options);
}

double energy_rhs(const SpectralField& u, const SpectralField& forcing, double damping) {
  double cross = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    cross += (forcing.coeffs()[i] * std::conj(u.coeffs()[i])).real();
  return -2.0 * damping * u.l2_norm_sq() + 2.0 * cross / kTwoPi;
}

double EnergyResidual::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

EnergyResidual energy_balance_residual(const Trajectory& traj) {
  const std::size_t n = traj.size();
  if (n < 3) throw FitError("energy balance needs at least three stored frames");
  const double h = traj.times[1] - traj.times[0];
  std::vector<double> mass(n);
  for (std::size_t i = 0; i < n; ++i) mass[i] = traj.fields[i].l2_norm_sq();

  EnergyResidual out;
  const bool wide = n >= 5;
  const std::size_t lo = wide ? 2 : 1;
  for (std::size_t i = lo; i + lo < n; ++i) {
    const double deriv =
        wide ? (mass[i - 2] - 8.0 * mass[i - 1] + 8.0 * mass[i + 1] - mass[i + 2]) / (12.0 * h)
             : (mass[i + 1] - mass[i - 1]) / (2.0 * h);
    out.times.push_back(traj.times[i]);
    out.values.push_back(deriv - energy_rhs(traj.fields[i], *traj.forcing, traj.params.damping));
  }
  return out;
}

} // namespace tlle
