#pragma once

// Measurement pipelines behind the presets: each returns raw numbers, and the
// callers decide what passes.

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tlle/analysis.hpp"
#include "tlle/evolve.hpp"
#include "tlle/grid.hpp"

namespace tlle {

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// ||linear_evolve(u0, pi) - e^{-pi} u0|| / ||u0|| for the step on [0, pi),
/// with the dispersive phase reduced exactly.
double revival_identity_error(std::size_t modes);

struct GaussSumCase {
  std::int64_t beta, p, q;
  double error; ///< relative L^2 distance revival_evolve vs linear_evolve
};

/// Every coprime (p, q) with q <= q_max, 0 <= p < 2q, for each beta, on the
/// truncated step datum.
std::vector<GaussSumCase> gauss_sum_cases(std::size_t modes, std::int64_t q_max,
                                          const std::vector<std::int64_t>& betas);

struct JumpMeasurement {
  std::size_t modes;
  double time;
  double jump;      ///< largest single-cell increment of u
  std::size_t cell; ///< jump between samples cell and cell + 1
  double expected;  ///< e^{-damping t} * height
};

/// Nonlinear solves of the sampled step of the given height to t = pi, one
/// per resolution.
std::vector<JumpMeasurement> quantization_jumps(const std::vector<std::size_t>& modes,
                                                double height, double dt, SolverOptions options = {});

struct IncrementMeasurement {
  std::size_t modes;
  double increment;
  double same_time_jump; ///< e^{-t} * height: jump size of a q = 1 revival at equal damping
  double pi_time_jump;   ///< e^{-pi} * height
};

/// Largest single-cell increment of the linear evolution of the step at time t.
std::vector<IncrementMeasurement> irrational_increments(const std::vector<std::size_t>& modes,
                                                        double t, double height);

struct DimensionMeasurement {
  double time;
  DimensionEstimate re;
  DimensionEstimate im;
};

struct DimensionSetup {
  std::vector<double> times;
  std::size_t fine_modes = std::size_t{1} << 14; ///< linear part sampled here
  std::size_t solve_modes = 1024;                ///< Duhamel part solved here
  double dt = 1e-3;
  double height = 0.1;
  ScaleRange scales{5, 12};
  SolverOptions options;
};

/// u = e^{i Phi} e^{tL} u0 on the fine grid plus the Duhamel part of a coarse
/// solve, resampled; box dimension of Re u and Im u at each time.
std::vector<DimensionMeasurement> dimension_window(const DimensionSetup& setup);

/// Five irrational surrogate times in (0, 3).
std::vector<double> surrogate_irrational_times();

struct SmoothingMeasurement {
  std::size_t modes;
  double duhamel_norm; ///< ||N(t)||_{H^order}
  double linear_norm;  ///< ||e^{tL} u0||_{H^order} on the same grid
};

std::vector<SmoothingMeasurement> smoothing_gain(const std::vector<std::size_t>& modes, double order,
                                                 double t, double dt, double height,
                                                 SolverOptions options = {});

struct EnergyMeasurement {
  double dt;
  double max_residual;
};

/// Energy balance residual of the smooth datum at several step sizes.
std::vector<EnergyMeasurement> energy_convergence(const std::vector<double>& dts, std::size_t modes,
                                                  double t_end, double amplitude,
                                                  SolverOptions options = {});

/// Tapered free waves sum_k c_k e^{i(kx - (beta k^3 + k^2) t)} on [0, window).
SpaceTimeField free_wave_field(const FourierGrid& grid, double window, std::size_t n_t,
                               const std::map<long, cplx>& amplitudes, double beta = 1.0);

struct TrilinearSetup {
  std::vector<std::size_t> modes{64, 128};
  std::size_t samples = 100;
  std::uint64_t seed = 1;
  std::size_t band_divisor = 16; ///< band limit K = n / band_divisor
  double s = 0.0;
  double b_prime = 0.625;
};

struct TrilinearMeasurement {
  std::size_t modes;
  long band;
  std::size_t time_samples;
  std::vector<double> ratios; ///< one per ensemble member, in draw order
  double max_ratio() const;
};

struct TrilinearProbe {
  double baseline; ///< u = v = w = a single tapered mode k = 1
  std::vector<TrilinearMeasurement> levels;
};

/// Random complex Gaussian coefficients on |k| <= K; member i at resolution n
/// draws from its own generator seeded with (seed, n, i).
TrilinearProbe trilinear_probe(const TrilinearSetup& setup);

} // namespace tlle
