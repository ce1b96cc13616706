#include "tlle/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tlle/error.hpp"

namespace tlle {
namespace {

constexpr long double kTwoPiL = 6.283185307179586476925286766559L;

// e^{-i t (beta k^3 + k^2 + theta)} with the argument reduced in extended
// precision; beta k^3 reaches ~1e10 on the grids used here.
cplx dispersive_phase(long k, double t, const ModelParams& params) {
  const long double kl = static_cast<long double>(k);
  const long double omega = static_cast<long double>(params.beta) * kl * kl * kl + kl * kl +
                            static_cast<long double>(params.theta);
  const long double arg = std::fmod(static_cast<long double>(t) * omega, kTwoPiL);
  return std::polar(1.0, -static_cast<double>(arg));
}

std::int64_t checked_integer_beta(const ModelParams& params) {
  if (!params.beta_is_integer())
    throw UnsupportedParameters("revival sums need an integer dispersion coefficient");
  return static_cast<std::int64_t>(params.beta);
}

} // namespace

RationalTime::RationalTime(std::int64_t p, std::int64_t q) {
  if (q < 1) throw UnsupportedParameters("rational time needs q >= 1");
  if (p < 0) throw UnsupportedParameters("rational time needs p >= 0");
  const std::int64_t g = std::gcd(p, q);
  p_ = g == 0 ? 0 : p / g;
  q_ = g == 0 ? 1 : q / g;
  if (p_ == 0) q_ = 1;
}

cplx dispersion_symbol(long k, const ModelParams& params) {
  const double kd = static_cast<double>(k);
  return cplx(-params.damping, -(params.beta * kd * kd * kd + kd * kd + params.theta));
}

SpectralField linear_evolve(const SpectralField& field, double t, const ModelParams& params) {
  SpectralField out = field;
  const FourierGrid& g = field.grid();
  const double decay = std::exp(-params.damping * t);
  for (std::size_t i = 0; i < g.size(); ++i)
    out.coeffs()[i] *= decay * dispersive_phase(g.wavenumber(i), t, params);
  out.zero_nyquist();
  return out;
}

cplx rational_dispersive_phase(long k, const RationalTime& t, std::int64_t beta) {
  const __int128 kk = k;
  const __int128 two_q = 2 * static_cast<__int128>(t.q());
  __int128 r = (static_cast<__int128>(t.p()) * (beta * kk * kk * kk + kk * kk)) % two_q;
  if (r < 0) r += two_q;
  if (r == 0) return 1.0;
  return std::polar(1.0, -kPi * static_cast<double>(r) / static_cast<double>(t.q()));
}

SpectralField linear_evolve(const SpectralField& field, const RationalTime& t,
                            const ModelParams& params) {
  if (!params.beta_is_integer()) return linear_evolve(field, t.value(), params);
  const std::int64_t beta = static_cast<std::int64_t>(params.beta);
  const double tv = t.value();
  const cplx scalar = std::exp(cplx(-params.damping * tv, -params.theta * tv));
  SpectralField out = field;
  const FourierGrid& g = field.grid();
  for (std::size_t i = 0; i < g.size(); ++i)
    out.coeffs()[i] *= scalar * rational_dispersive_phase(g.wavenumber(i), t, beta);
  out.zero_nyquist();
  return out;
}

RevivalRepresentation revival_coefficients(const RationalTime& t, const ModelParams& params) {
  const std::int64_t beta = checked_integer_beta(params);
  const std::size_t period = static_cast<std::size_t>(2 * t.q());
  const double qd = static_cast<double>(period);

  std::vector<cplx> phases(period);
  for (std::size_t m = 0; m < period; ++m)
    phases[m] = rational_dispersive_phase(static_cast<long>(m), t, beta);

  std::vector<cplx> coeffs(period);
  for (std::size_t j = 0; j < period; ++j) {
    cplx acc{};
    for (std::size_t m = 0; m < period; ++m) {
      const std::size_t jm = (j * m) % period;
      acc += phases[m] * std::polar(1.0, kTwoPi * static_cast<double>(jm) / qd);
    }
    coeffs[j] = acc / qd;
  }
  const double tv = t.value();
  const cplx scalar = std::exp(cplx(-params.damping * tv, -params.theta * tv));
  return RevivalRepresentation{t, period, std::move(coeffs), scalar};
}

SpectralField apply_revival(const RevivalRepresentation& rep, const SpectralField& field) {
  SpectralField out(field.grid());
  for (std::size_t j = 0; j < rep.period; ++j) {
    if (rep.coefficients[j] == cplx{}) continue;
    out += translate(field, rep.shift(j)) * rep.coefficients[j];
  }
  out *= rep.scalar_factor;
  return out;
}

SpectralField revival_evolve(const AnalyticProfile& profile, const RationalTime& t,
                             const ModelParams& params, const FourierGrid& grid,
                             Discretization mode) {
  const RevivalRepresentation rep = revival_coefficients(t, params);
  return apply_revival(rep, profile.to_field(grid, mode));
}

std::vector<Jump> revival_jumps(const RevivalRepresentation& rep, const std::vector<Jump>& jumps,
                                double tol) {
  std::vector<Jump> raw;
  for (std::size_t j = 0; j < rep.period; ++j) {
    const cplx c = rep.coefficients[j] * rep.scalar_factor;
    if (std::abs(rep.coefficients[j]) <= tol) continue;
    for (const Jump& jump : jumps) {
      double loc = std::fmod(jump.location + rep.shift(j), kTwoPi);
      if (loc < 0.0) loc += kTwoPi;
      raw.push_back({loc, c * jump.height});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Jump& a, const Jump& b) { return a.location < b.location; });

  std::vector<Jump> merged;
  for (const Jump& j : raw) {
    const bool same = !merged.empty() && (std::abs(merged.back().location - j.location) < 1e-9);
    if (same)
      merged.back().height += j.height;
    else
      merged.push_back(j);
  }
  // A jump just below 2 pi coincides with one at 0.
  if (merged.size() > 1 && std::abs(merged.back().location - kTwoPi) < 1e-9) {
    merged.front().height += merged.back().height;
    merged.pop_back();
  }
  double scale = 0.0;
  for (const Jump& j : jumps) scale = std::max(scale, std::abs(j.height));
  std::erase_if(merged, [&](const Jump& j) { return std::abs(j.height) <= tol * std::max(scale, 1.0); });
  return merged;
}

} // namespace tlle
