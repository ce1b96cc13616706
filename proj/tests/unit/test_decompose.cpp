#include "doctest.h"

#include <cmath>
#include <random>

#include "duhamel_quadrature.hpp"
#include "tlle/decompose.hpp"
#include "tlle/error.hpp"
#include "tlle/profiles.hpp"
#include "tlle/propagator.hpp"

using namespace tlle;

namespace {

SpectralField random_field(const FourierGrid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  SpectralField f(g);
  for (long k = g.k_min() + 1; k <= g.k_max(); ++k) f.set(k, {n(rng), n(rng)});
  return f;
}

// Direct double sums over the band; `skip_resonant` restricts to k1 != k, k2 != k1.
SpectralField brute_force(const SpectralField& a, bool skip_resonant) {
  const FourierGrid& g = a.grid();
  SpectralField out(g);
  for (long k = g.k_min() + 1; k <= g.k_max(); ++k) {
    cplx acc = 0.0;
    for (long k1 = g.k_min() + 1; k1 <= g.k_max(); ++k1)
      for (long k2 = g.k_min() + 1; k2 <= g.k_max(); ++k2) {
        if (skip_resonant && (k1 == k || k2 == k1)) continue;
        const long k3 = k - k1 + k2;
        if (!g.resolves(k3)) continue;
        acc += a.at(k1) * std::conj(a.at(k2)) * a.at(k3);
      }
    out.set(k, acc);
  }
  return out;
}

} // namespace

TEST_CASE("triple convolution matches the direct sum") {
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    const SpectralField a = random_field(FourierGrid(n), static_cast<unsigned>(n));
    CHECK(relative_l2_error(triple_convolution(a), brute_force(a, false)) < 1e-13);
  }
}

TEST_CASE("resonant split reconstructs the cubic sum") {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const SpectralField a = random_field(FourierGrid(16), seed);
    const ResonantSplit s = resonant_split(a);
    CHECK(relative_l2_error(s.total(), brute_force(a, false)) < 1e-13);
    CHECK(relative_l2_error(s.r_term, brute_force(a, true)) < 1e-13);
    const double mass = a.coeff_norm_sq();
    for (long k = -7; k <= 7; ++k) {
      CHECK(std::abs(s.mean_part.at(k) - 2.0 * mass * a.at(k)) < 1e-12 * mass);
      CHECK(std::abs(s.rho.at(k) + std::norm(a.at(k)) * a.at(k)) < 1e-12 * mass);
    }
  }
}

TEST_CASE("a single mode has no non-resonant interactions") {
  const FourierGrid g(16);
  SpectralField a(g);
  a.set(5, cplx(1.0, 2.0));
  const ResonantSplit s = resonant_split(a);
  CHECK(s.r_term.coeff_norm_sq() < 1e-28);
  CHECK(relative_l2_error(s.total(), a * cplx(5.0)) < 1e-14);
}

TEST_CASE("gauge phase quadratures agree with the stepper phase") {
  const FourierGrid g(32);
  const ModelParams p;
  const Trajectory traj = solve(smooth_profile().to_field(g), 1.0, 1e-3, p, 10);
  const auto trap = gauge_phase(traj, Quadrature::Trapezoid);
  const auto simp = gauge_phase(traj, Quadrature::Simpson);
  REQUIRE(trap.size() == traj.size());
  CHECK(trap.front() == 0.0);
  CHECK(trap.back() == doctest::Approx(traj.phase.back()).epsilon(1e-4));
  CHECK(simp.back() == doctest::Approx(traj.phase.back()).epsilon(1e-7));
  CHECK(std::abs(apply_gauge(traj.fields.back(), 0.3).at(0) - traj.fields.back().at(0) * std::polar(1.0, -0.3)) < 1e-14);
}

TEST_CASE("Duhamel part vanishes at t = 0 and matches the forced linear flow") {
  const FourierGrid g(64);
  ModelParams p;
  p.nonlinearity_on = false;
  const SpectralField u0 = random_field(g, 11);
  const Trajectory traj = solve(u0, 0.5, 1e-2, p, 10);
  const DuhamelSeries series = duhamel_part(traj);
  CHECK(series.n_fields.front().coeff_norm_sq() == 0.0);
  for (std::size_t i = 1; i < traj.size(); ++i) {
    SpectralField want(g);
    for (long k = g.k_min() + 1; k <= g.k_max(); ++k) {
      const cplx m = dispersion_symbol(k, p);
      want.set(k, (std::exp(m * traj.times[i]) - 1.0) / m * u0.at(k));
    }
    CHECK(relative_l2_error(series.n_fields[i], want) < 1e-11);
  }
}

TEST_CASE("subtraction and quadrature forms agree on a smooth solution") {
  const FourierGrid g(32);
  const ModelParams p;
  const Trajectory traj = solve(smooth_profile().to_field(g), 0.5, 1e-3, p, 1);
  const DuhamelSeries series = duhamel_part(traj);
  const auto quad = oracle::duhamel_quadrature(traj);
  double worst = 0.0;
  for (std::size_t i = 1; i < traj.size(); ++i) worst = std::max(worst, relative_l2_error(quad[i], series.n_fields[i]));
  CHECK(worst < 1e-3);
}

TEST_CASE("frame lookup and profile checks") {
  const FourierGrid g(32);
  const ModelParams p;
  const AnalyticProfile prof = smooth_profile();
  const Trajectory traj = solve(prof, g, 0.2, 1e-2, p, 5);
  CHECK_NOTHROW(duhamel_part(traj, prof));
  CHECK_THROWS_AS(duhamel_part(traj, step_profile(0.0, kPi, 1.0)), ShapeError);
  CHECK(relative_l2_error(duhamel_at(traj, traj.times[2]), duhamel_part(traj).n_fields[2]) == 0.0);
  CHECK_THROWS_AS(duhamel_at(traj, 0.123), ShapeError);
  const auto prof_norms = smoothing_profile(duhamel_part(traj), 1.0);
  CHECK(prof_norms.size() == traj.size());
  CHECK(prof_norms.front() == 0.0);
}
