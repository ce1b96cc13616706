#include "doctest.h"

#include <cmath>
#include <random>

#include "tlle/error.hpp"
#include "tlle/grid.hpp"

using namespace tlle;

namespace {

std::vector<cplx> random_samples(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<cplx> out(n);
  for (auto& v : out) v = {g(rng), g(rng)};
  return out;
}

} // namespace

TEST_CASE("grid sizes must be even and at least four") {
  CHECK_THROWS_AS(FourierGrid(3), SizingError);
  CHECK_THROWS_AS(FourierGrid(2), SizingError);
  CHECK_THROWS_AS(FourierGrid(0), SizingError);
  CHECK_NOTHROW(FourierGrid(4));
  CHECK_NOTHROW(FourierGrid(6));
}

TEST_CASE("wavenumbers follow FFT order and invert index_of") {
  const FourierGrid g(8);
  const long expected[] = {0, 1, 2, 3, -4, -3, -2, -1};
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(g.wavenumber(i) == expected[i]);
    CHECK(g.index_of(expected[i]) == i);
  }
  CHECK(g.k_min() == -4);
  CHECK(g.k_max() == 3);
  CHECK_FALSE(g.resolves(4));
  CHECK_THROWS_AS(g.index_of(4), ShapeError);
}

TEST_CASE("constant and single modes carry 2 pi under the unnormalized transform") {
  const FourierGrid g(16);
  std::vector<double> ones(16, 1.0);
  const SpectralField c = to_spectral(g, std::span<const double>(ones));
  CHECK(std::abs(c.at(0) - cplx(kTwoPi)) < 1e-13);
  CHECK(c.coeff_norm_sq() == doctest::Approx(kTwoPi * kTwoPi));
  CHECK(c.l2_norm_sq() == doctest::Approx(kTwoPi));

  std::vector<cplx> wave(16);
  for (std::size_t j = 0; j < 16; ++j) wave[j] = std::polar(1.0, 3.0 * g.point(j));
  const SpectralField w = to_spectral(g, std::span<const cplx>(wave));
  for (std::size_t i = 0; i < 16; ++i) {
    const double want = g.wavenumber(i) == 3 ? kTwoPi : 0.0;
    CHECK(std::abs(w.coeffs()[i] - want) < 1e-12);
  }
}

TEST_CASE("round trip and Parseval hold for random samples") {
  for (std::size_t n : {4u, 6u, 16u, 64u, 250u}) {
    const FourierGrid g(n);
    for (unsigned seed = 0; seed < 5; ++seed) {
      auto s = random_samples(n, seed);
      // The Nyquist slot is dropped, so remove its component first.
      SpectralField f = to_spectral(g, std::span<const cplx>(s));
      CHECK(f.coeffs()[g.nyquist_index()] == cplx(0.0));
      const std::vector<cplx> back = from_spectral(f);
      const SpectralField again = to_spectral(g, std::span<const cplx>(back));
      CHECK(relative_l2_error(again, f) < 1e-13);

      double grid_l2 = 0.0;
      for (const auto& v : back) grid_l2 += std::norm(v);
      grid_l2 *= g.spacing();
      CHECK(f.l2_norm_sq() == doctest::Approx(grid_l2).epsilon(1e-12));
    }
  }
}

TEST_CASE("real samples give Hermitian coefficients") {
  const FourierGrid g(32);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> s(32);
  for (auto& v : s) v = u(rng);
  CHECK(to_spectral(g, std::span<const double>(s)).hermitian_defect() < 1e-13);
}

TEST_CASE("translate shifts by the requested amount") {
  const FourierGrid g(32);
  SpectralField f(g);
  f.set(2, kTwoPi);
  const double a = 0.37;
  const SpectralField t = translate(f, a);
  const std::vector<cplx> v = from_spectral(t);
  for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(v[j] - std::polar(1.0, 2.0 * (g.point(j) - a))) < 1e-12);
  CHECK(relative_l2_error(translate(f, kTwoPi), f) < 1e-13);
}

TEST_CASE("resample pads and truncates coefficients") {
  const FourierGrid small(16), big(64);
  auto s = random_samples(16, 3);
  const SpectralField f = to_spectral(small, std::span<const cplx>(s));
  const SpectralField up = resample(f, big);
  CHECK(up.coeff_norm_sq() == doctest::Approx(f.coeff_norm_sq()));
  CHECK(relative_l2_error(resample(up, small), f) < 1e-15);
}

TEST_CASE("arithmetic rejects mismatched grids") {
  SpectralField a(FourierGrid(8)), b(FourierGrid(16));
  CHECK_THROWS_AS(a += b, ShapeError);
  std::vector<cplx> wrong(5);
  CHECK_THROWS_AS(to_spectral(FourierGrid(8), std::span<const cplx>(wrong)), ShapeError);
}

TEST_CASE("relative error falls back to absolute against zero") {
  const FourierGrid g(8);
  SpectralField a(g);
  a.set(1, 3.0);
  CHECK(relative_l2_error(a, SpectralField(g)) == doctest::Approx(std::sqrt(9.0 / kTwoPi)));
}
