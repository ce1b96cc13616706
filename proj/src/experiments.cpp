#include "tlle/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "tlle/decompose.hpp"
#include "tlle/error.hpp"
#include "tlle/parallel.hpp"
#include "tlle/profiles.hpp"
#include "tlle/propagator.hpp"

namespace tlle {
namespace {

AnalyticProfile half_step(double height) { return step_profile(0.0, kPi, height); }

std::size_t steps_for(double t, double dt) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(t / dt - 1e-9)));
}

// Final frame only: stride equal to the step count.
Trajectory solve_to(const AnalyticProfile& profile, const FourierGrid& grid, double t, double dt,
                    const ModelParams& params, SolverOptions options) {
  const std::size_t steps = steps_for(t, dt);
  return solve(profile, grid, t, t / static_cast<double>(steps), params, steps, options);
}

} // namespace

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw FitError("slope needs at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw FitError("log-log slope needs positive data");
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(ys[i]) - my);
  }
  if (sxx == 0.0) throw FitError("log-log slope needs distinct abscissae");
  return sxy / sxx;
}

double revival_identity_error(std::size_t modes) {
  const FourierGrid grid(modes);
  const ModelParams params;
  const SpectralField u0 = half_step(1.0).to_field(grid, Discretization::Truncated);
  const SpectralField evolved = linear_evolve(u0, RationalTime(1, 1), params);
  return relative_l2_error(evolved, u0 * cplx(std::exp(-kPi)));
}

std::vector<GaussSumCase> gauss_sum_cases(std::size_t modes, std::int64_t q_max,
                                          const std::vector<std::int64_t>& betas) {
  const FourierGrid grid(modes);
  const AnalyticProfile profile = half_step(1.0);
  const SpectralField u0 = profile.to_field(grid, Discretization::Truncated);
  std::vector<GaussSumCase> out;
  for (std::int64_t beta : betas)
    for (std::int64_t q = 1; q <= q_max; ++q)
      for (std::int64_t p = 0; p < 2 * q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        out.push_back({beta, p, q, 0.0});
      }
  parallel_for(out.size(), [&](std::size_t i) {
    ModelParams params;
    params.beta = static_cast<double>(out[i].beta);
    const RationalTime t(out[i].p, out[i].q);
    const SpectralField via_sum = revival_evolve(profile, t, params, grid, Discretization::Truncated);
    const SpectralField direct = linear_evolve(u0, t, params);
    out[i].error = relative_l2_error(via_sum, direct);
  });
  return out;
}

std::vector<JumpMeasurement> quantization_jumps(const std::vector<std::size_t>& modes, double height,
                                                double dt, SolverOptions options) {
  std::vector<JumpMeasurement> out(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    const FourierGrid grid(modes[i]);
    const ModelParams params;
    const Trajectory traj = solve_to(half_step(height), grid, kPi, dt, params, options);
    const std::vector<cplx> u = from_spectral(traj.fields.back());
    const Increment inc = max_cell_increment(u);
    out[i] = {modes[i], kPi, inc.value, inc.index, std::exp(-params.damping * kPi) * height};
  });
  return out;
}

std::vector<IncrementMeasurement> irrational_increments(const std::vector<std::size_t>& modes,
                                                        double t, double height) {
  std::vector<IncrementMeasurement> out(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    const FourierGrid grid(modes[i]);
    const ModelParams params;
    const SpectralField u0 = half_step(height).to_field(grid);
    const Increment inc = max_cell_increment(from_spectral(linear_evolve(u0, t, params)));
    out[i] = {modes[i], inc.value, std::exp(-params.damping * t) * height,
              std::exp(-params.damping * kPi) * height};
  });
  return out;
}

std::vector<double> surrogate_irrational_times() {
  return {1.0, std::sqrt(2.0), kPi * (std::sqrt(5.0) - 1.0) / 2.0, kPi / std::sqrt(2.0),
          std::sqrt(7.0)};
}

std::vector<DimensionMeasurement> dimension_window(const DimensionSetup& setup) {
  const FourierGrid fine(setup.fine_modes);
  const FourierGrid coarse(setup.solve_modes);
  const AnalyticProfile profile = half_step(setup.height);
  const SpectralField u0_fine = profile.to_field(fine);
  const std::vector<double> xs = fine.points();

  std::vector<DimensionMeasurement> out(setup.times.size());
  parallel_for(setup.times.size(), [&](std::size_t i) {
    const double t = setup.times[i];
    const ModelParams params;
    const Trajectory traj = solve_to(profile, coarse, t, setup.dt, params, setup.options);
    const SpectralField duhamel = duhamel_part(traj).n_fields.back();
    SpectralField u = linear_evolve(u0_fine, t, params) * std::polar(1.0, traj.phase.back());
    u += resample(duhamel, fine);

    const std::vector<cplx> values = from_spectral(u);
    std::vector<double> re(values.size()), im(values.size());
    for (std::size_t j = 0; j < values.size(); ++j) {
      re[j] = values[j].real();
      im[j] = values[j].imag();
    }
    out[i] = {t, box_dimension(xs, re, setup.scales), box_dimension(xs, im, setup.scales)};
  });
  return out;
}

std::vector<SmoothingMeasurement> smoothing_gain(const std::vector<std::size_t>& modes, double order,
                                                 double t, double dt, double height,
                                                 SolverOptions options) {
  std::vector<SmoothingMeasurement> out(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    const FourierGrid grid(modes[i]);
    const ModelParams params;
    const Trajectory traj = solve_to(half_step(height), grid, t, dt, params, options);
    const SpectralField duhamel = duhamel_part(traj).n_fields.back();
    const SpectralField linear = linear_evolve(traj.initial(), t, params);
    out[i] = {modes[i], sobolev_norm(duhamel, order), sobolev_norm(linear, order)};
  });
  return out;
}

std::vector<EnergyMeasurement> energy_convergence(const std::vector<double>& dts, std::size_t modes,
                                                  double t_end, double amplitude,
                                                  SolverOptions options) {
  std::vector<EnergyMeasurement> out(dts.size());
  parallel_for(dts.size(), [&](std::size_t i) {
    const FourierGrid grid(modes);
    const ModelParams params;
    const Trajectory traj =
        solve(smooth_profile().with_amplitude(amplitude), grid, t_end, dts[i], params, 1, options);
    out[i] = {dts[i], energy_balance_residual(traj).max_abs()};
  });
  return out;
}

SpaceTimeField free_wave_field(const FourierGrid& grid, double window, std::size_t n_t,
                               const std::map<long, cplx>& amplitudes, double beta) {
  SpaceTimeField field(0.0, window, n_t, grid);
  SpectralField coeffs(grid);
  for (std::size_t l = 0; l < n_t; ++l) {
    const double t = field.time(l);
    for (const auto& [k, c] : amplitudes) {
      const double kk = static_cast<double>(k);
      const double omega = beta * kk * kk * kk + kk * kk;
      coeffs.set(k, kTwoPi * c * std::polar(1.0, -omega * t));
    }
    const std::vector<cplx> row = from_spectral(coeffs);
    std::copy(row.begin(), row.end(), field.samples.begin() + static_cast<std::ptrdiff_t>(l * grid.size()));
  }
  return field;
}

double TrilinearMeasurement::max_ratio() const {
  return ratios.empty() ? 0.0 : *std::max_element(ratios.begin(), ratios.end());
}

TrilinearProbe trilinear_probe(const TrilinearSetup& setup) {
  if (setup.modes.empty() || setup.samples == 0) throw UnsupportedParameters("empty trilinear ensemble");
  // Window 2 pi: free-wave frequencies beta k^3 + k^2 are integers and the
  // tau lattice spacing is one.
  const double window = kTwoPi;
  auto time_samples = [](long band) {
    const long top = 3 * (band * band * band + band * band);
    return std::bit_ceil(static_cast<std::size_t>(2 * top + 256));
  };

  TrilinearProbe probe;
  {
    const FourierGrid grid(setup.modes.front());
    const std::size_t nt = time_samples(std::max<long>(1, static_cast<long>(grid.size() / setup.band_divisor)));
    const SpaceTimeField mode = free_wave_field(grid, window, nt, {{1, 1.0}});
    probe.baseline = trilinear_ratio(mode, mode, mode, setup.s, setup.b_prime);
  }

  for (std::size_t n : setup.modes) {
    const FourierGrid grid(n);
    const long band = static_cast<long>(n / setup.band_divisor);
    if (band < 1) throw SizingError("band limit is below one mode");
    TrilinearMeasurement level{n, band, time_samples(band), std::vector<double>(setup.samples)};
    parallel_for(setup.samples, [&](std::size_t i) {
      std::seed_seq seq{static_cast<std::uint32_t>(setup.seed), static_cast<std::uint32_t>(setup.seed >> 32),
                        static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> gauss;
      std::vector<SpaceTimeField> factors;
      for (int f = 0; f < 3; ++f) {
        std::map<long, cplx> amps;
        for (long k = -band; k <= band; ++k) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          amps[k] = cplx(re, im);
        }
        factors.push_back(free_wave_field(grid, window, level.time_samples, amps));
      }
      level.ratios[i] = trilinear_ratio(factors[0], factors[1], factors[2], setup.s, setup.b_prime);
    });
    probe.levels.push_back(std::move(level));
  }
  return probe;
}

} // namespace tlle
