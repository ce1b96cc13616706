#pragma once

// Norms and fractal measurements: H^s, Besov B^s_{p,inf} through a pinned
// Littlewood-Paley partition, a windowed discretization of X^{s,b}, the
// lattice sums phi_beta, box-counting dimension of graphs, and cell
// increments used to locate jumps.

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "tlle/grid.hpp"

namespace tlle {

/// (sum_k <k>^{2s} |u_hat(k)|^2)^{1/2}, <k> = (1 + k^2)^{1/2}.
double sobolev_norm(const SpectralField& field, double s);

/// phi_beta(k) = sum_{|n| <= |k|} <n>^{-beta}.
double phi_beta(long k, double beta);

/// Smooth partition of unity on the frequency axis.
///   chi(t) = 1 for |t| <= 1, 0 for |t| >= 2, C-infinity in between (built
///            from the e^{-1/x} mollifier),
///   phi(t) = chi(t) - chi(2t), supported on 1/2 <= |t| <= 2,
///   phi_0  = chi.
/// The sum phi_0(k) + sum_{1 <= j <= J} phi(2^{-j} k) telescopes to
/// chi(2^{-J} k), which is exactly 1 for |k| <= 2^J.
class BesovConfig {
public:
  /// Largest usable block: j_max = log2(n) - 2, so 2^{j_max + 2} <= n.
  static BesovConfig for_grid(const FourierGrid& grid);
  /// Throws SizingError when the grid is too coarse for j_max.
  BesovConfig(const FourierGrid& grid, int j_max);

  int j_max() const noexcept { return j_max_; }
  /// Highest wavenumber on which the partition sums to one.
  long resolved_limit() const noexcept { return 1L << j_max_; }

  static double chi(double t);
  static double bump(double t) { return chi(t) - chi(2.0 * t); }
  /// Multiplier of block j at wavenumber k.
  double weight(int j, long k) const;
  double partition_residual(long k) const;

private:
  int j_max_;
};

/// P_j f for 0 <= j <= j_max.
SpectralField littlewood_paley_block(const SpectralField& field, int j, const BesovConfig& cfg);

inline constexpr double kLpInfinity = std::numeric_limits<double>::infinity();

/// Discrete L^p norm of grid samples with the 2 pi / n quadrature weight;
/// p in {1, 2, inf}.
double lp_norm(std::span<const cplx> samples, double p);

/// 2^{sj} ||P_j f||_{L^p} for j = 0..j_max.
std::vector<double> besov_blocks(std::span<const cplx> samples, const FourierGrid& grid, double s,
                                 double p, const BesovConfig& cfg);
/// sup_j of besov_blocks.
double besov_norm(std::span<const cplx> samples, const FourierGrid& grid, double s, double p,
                  const BesovConfig& cfg);

enum class Taper {
  None,
  Smooth, ///< C-infinity ramps over the first and last quarter of the window
};

/// Taper weight at normalized window position xi in [0, 1].
double taper_weight(Taper taper, double xi);

/// Complex samples f(t_l, x_j), t_l = t0 + l T / n_t (l < n_t), row-major in t.
struct SpaceTimeField {
  double t0 = 0.0;
  double t1 = 1.0;
  std::size_t n_t = 0;
  FourierGrid grid{4};
  std::vector<cplx> samples;
  Taper taper = Taper::Smooth;

  SpaceTimeField(double t0, double t1, std::size_t n_t, FourierGrid grid, Taper taper = Taper::Smooth);

  double window() const noexcept { return t1 - t0; }
  double time(std::size_t l) const noexcept {
    return t0 + window() * static_cast<double>(l) / static_cast<double>(n_t);
  }
  cplx& at(std::size_t l, std::size_t j) { return samples[l * grid.size() + j]; }
  cplx at(std::size_t l, std::size_t j) const { return samples[l * grid.size() + j]; }
};

/// Riemann-sum discretization of
///   || <k>^s <tau + beta k^3 + k^2>^b f~(tau, k) ||_{L^2_tau l^2_k}
/// on the window's frequency lattice tau_l = 2 pi l / T with weight 2 pi / T,
/// after multiplying the samples by the taper.
double xsb_norm(const SpaceTimeField& stf, double s, double b, double beta = 1.0);

/// ||uvw||_{X^{s, b'-1}} / (||u|| ||v|| ||w||)_{X^{s, 3/8}}. The taper of `u`
/// is applied once to the product. Throws DegenerateInput on a zero factor.
double trilinear_ratio(const SpaceTimeField& u, const SpaceTimeField& v, const SpaceTimeField& w,
                       double s, double b_prime, double beta = 1.0);

/// Dyadic box widths eps = 2^{-j} for coarse <= j <= fine.
struct ScaleRange {
  int coarse; ///< smallest j (largest box)
  int fine;   ///< largest j (smallest box)
};

struct DimensionEstimate {
  double slope = 0.0;
  double std_error = 0.0;
  std::vector<double> scales; ///< box widths used, coarse to fine
  std::vector<double> counts;
  bool out_of_range = false; ///< raw slope outside [1, 2]; never clamped
};

/// Column box count of the graph (x, y) rescaled to the unit square; slope of
/// log count against log(1/eps). Scales whose columns hold fewer than four
/// samples are dropped. Throws FitError with fewer than four scales left.
DimensionEstimate box_dimension(std::span<const double> xs, std::span<const double> ys,
                                ScaleRange range);

struct Increment {
  double value = 0.0;
  std::size_t index = 0; ///< increment between samples index and index + 1 (periodic)
};

/// Largest |u_{j+1} - u_j| over the periodic grid.
Increment max_cell_increment(std::span<const cplx> samples);
/// Indices j with |u_{j+1} - u_j| > threshold.
std::vector<std::size_t> jump_cells(std::span<const cplx> samples, double threshold);

} // namespace tlle
