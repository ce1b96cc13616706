#pragma once

// Quadrature form of the Duhamel part, used only as an oracle against the
// subtraction form. The source term is built from the exact (zero-padded)
// resonant split, not from the solver's dealiased cube:
//
//   N(t) = e^{i Phi(t)} int_0^t e^{(t-s) L} g(s) ds,
//   g(s) = i (rho + R)(v(s)) + e^{-i Phi(s)} f,   v = e^{-i Phi} u,
//
// with g interpolated linearly between stored frames and the linear factor
// integrated exactly (exponential trapezoid, second order in the frame spacing).

#include <vector>

#include "tlle/decompose.hpp"
#include "tlle/evolve.hpp"
#include "tlle/propagator.hpp"

namespace tlle::oracle {

inline SpectralField duhamel_source(const SpectralField& u, double phase, const SpectralField& forcing,
                                    bool nonlinear) {
  const SpectralField v = u * std::polar(1.0, -phase);
  SpectralField g = forcing * std::polar(1.0, -phase);
  if (!nonlinear) return g;
  const ResonantSplit split = resonant_split(v);
  const double inv = 1.0 / (kTwoPi * kTwoPi);
  g += (split.rho + split.r_term) * cplx(0.0, inv);
  return g;
}

/// N at every stored frame of a trajectory (frames must be equally spaced).
inline std::vector<SpectralField> duhamel_quadrature(const Trajectory& traj) {
  const FourierGrid& grid = traj.grid();
  const std::size_t n = grid.size();
  const double h = traj.times.size() > 1 ? traj.times[1] - traj.times[0] : 0.0;

  std::vector<cplx> e(n), wa(n), wb(n);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx z = h * dispersion_symbol(grid.wavenumber(i), traj.params);
    const cplx p1 = phi_function(1, z), p2 = phi_function(2, z);
    e[i] = std::exp(z);
    wa[i] = h * (p1 - p2);
    wb[i] = h * p2;
  }

  std::vector<SpectralField> out;
  out.reserve(traj.size());
  SpectralField integral(grid);
  out.push_back(integral);
  SpectralField g_prev =
      duhamel_source(traj.fields[0], traj.phase[0], *traj.forcing, traj.params.nonlinearity_on);
  for (std::size_t j = 1; j < traj.size(); ++j) {
    const SpectralField g_next =
        duhamel_source(traj.fields[j], traj.phase[j], *traj.forcing, traj.params.nonlinearity_on);
    for (std::size_t i = 0; i < n; ++i)
      integral.coeffs()[i] = e[i] * integral.coeffs()[i] + wa[i] * g_prev.coeffs()[i] +
                             wb[i] * g_next.coeffs()[i];
    out.push_back(integral * std::polar(1.0, traj.phase[j]));
    g_prev = g_next;
  }
  return out;
}

} // namespace tlle::oracle
