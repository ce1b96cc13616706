#include "tlle/profiles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tlle/error.hpp"

namespace tlle {
namespace {

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r;
}

} // namespace

AnalyticProfile::AnalyticProfile(std::string name, CoeffFn coeff_fn, ValueFn value_fn,
                                 std::vector<Jump> jumps, double sigma0_true, double amplitude)
    : name_(std::move(name)),
      coeff_fn_(std::move(coeff_fn)),
      value_fn_(std::move(value_fn)),
      jumps_(std::move(jumps)),
      sigma0_(sigma0_true),
      amplitude_(amplitude) {}

cplx AnalyticProfile::value(double x) const {
  if (!value_fn_) throw UnsupportedParameters("profile '" + name_ + "' has no point values");
  return amplitude_ * value_fn_(wrap_angle(x));
}

std::vector<Jump> AnalyticProfile::jumps() const {
  std::vector<Jump> out = jumps_;
  for (auto& j : out) j.height *= amplitude_;
  return out;
}

AnalyticProfile AnalyticProfile::with_amplitude(double amplitude) const {
  AnalyticProfile out = *this;
  out.amplitude_ = amplitude;
  return out;
}

SpectralField AnalyticProfile::to_field(const FourierGrid& grid, Discretization mode) const {
  if (mode == Discretization::Auto)
    mode = (value_fn_ && !jumps_.empty()) ? Discretization::Sampled : Discretization::Truncated;

  if (mode == Discretization::Sampled) {
    std::vector<cplx> samples(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) samples[j] = value(grid.point(j));
    return to_spectral(grid, samples);
  }
  SpectralField out(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (i == grid.nyquist_index()) continue;
    out.coeffs()[i] = coefficient(grid.wavenumber(i));
  }
  return out;
}

AnalyticProfile step_profile(double left, double right, double height) {
  if (!(left >= 0.0 && right <= kTwoPi && left <= right))
    throw UnsupportedParameters("step support must satisfy 0 <= left <= right <= 2 pi");
  const bool empty = left == right;
  const bool full = left == 0.0 && right == kTwoPi;
  if (empty || full) {
    const double c = full ? height : 0.0;
    return AnalyticProfile(
        "step", [c](long k) { return k == 0 ? cplx(kTwoPi * c) : cplx{}; },
        [c](double) { return cplx(c); }, {}, kInfiniteRegularity);
  }
  auto coeff = [left, right, height](long k) -> cplx {
    if (k == 0) return height * (right - left);
    const double kk = static_cast<double>(k);
    const cplx ik(0.0, kk);
    return height * (std::polar(1.0, -kk * left) - std::polar(1.0, -kk * right)) / ik;
  };
  auto val = [left, right, height](double x) -> cplx {
    return (x >= left && x < right) ? cplx(height) : cplx{};
  };
  std::vector<Jump> jumps{{left, cplx(height)}, {wrap_angle(right), cplx(-height)}};
  return AnalyticProfile("step", coeff, val, std::move(jumps), 0.5);
}

AnalyticProfile sawtooth_profile() {
  auto coeff = [](long k) -> cplx {
    if (k == 0) return kPi;
    return cplx(0.0, 1.0 / static_cast<double>(k));
  };
  auto val = [](double x) -> cplx { return x / kTwoPi; };
  return AnalyticProfile("sawtooth", coeff, val, {{0.0, cplx(-1.0)}}, 0.5);
}

AnalyticProfile constant_profile(cplx value) {
  return AnalyticProfile(
      "constant", [value](long k) { return k == 0 ? kTwoPi * value : cplx{}; },
      [value](double) { return value; }, {}, kInfiniteRegularity);
}

AnalyticProfile single_mode_profile(long k) {
  return AnalyticProfile(
      "single-mode", [k](long m) { return m == k ? cplx(kTwoPi) : cplx{}; },
      [k](double x) { return std::polar(1.0, static_cast<double>(k) * x); }, {},
      kInfiniteRegularity);
}

AnalyticProfile weierstrass_profile(double alpha) {
  if (!(alpha > 0.0)) throw UnsupportedParameters("weierstrass exponent must be positive");
  auto coeff = [alpha](long k) -> cplx {
    const unsigned long a = static_cast<unsigned long>(k < 0 ? -k : k);
    if (a == 0 || (a & (a - 1)) != 0) return {};
    const int j = std::countr_zero(a);
    return kPi * std::exp2(-alpha * j);
  };
  auto val = [alpha](double x) -> cplx {
    double acc = 0.0;
    for (int j = 0; j < 62; ++j) {
      const double w = std::exp2(-alpha * j);
      if (w < 1e-18) break;
      acc += w * std::cos(std::ldexp(x, j));
    }
    return acc;
  };
  return AnalyticProfile("weierstrass", coeff, val, {}, alpha);
}

AnalyticProfile tabulated_profile(std::map<long, cplx> table, std::string name) {
  auto coeff = [table = std::move(table)](long k) -> cplx {
    auto it = table.find(k);
    return it == table.end() ? cplx{} : it->second;
  };
  return AnalyticProfile(std::move(name), coeff, nullptr, {}, kInfiniteRegularity);
}

AnalyticProfile load_profile_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open coefficient table '" + path + "'");
  std::map<long, cplx> table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    long k;
    double re, im;
    if (!(ss >> k)) continue;
    if (!(ss >> re >> im))
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'k re im'");
    table[k] = cplx(re, im);
  }
  return tabulated_profile(std::move(table), "table:" + path);
}

AnalyticProfile smooth_profile() {
  // Values are u(x) Fourier weights; u_hat = 2 pi times them.
  const std::map<long, cplx> weights{{0, {1.0, 0.0}},  {1, {0.8, 0.3}},  {-1, {0.5, -0.2}},
                                     {2, {0.3, 0.1}},  {-3, {0.2, 0.0}}, {4, {0.05, 0.05}}};
  std::map<long, cplx> table;
  for (const auto& [k, w] : weights) table[k] = kTwoPi * w;
  return tabulated_profile(std::move(table), "smooth");
}

AnalyticProfile profile_from_name(const std::string& name, double amplitude) {
  if (name == "step") return step_profile(0.0, kPi, 1.0).with_amplitude(amplitude);
  if (name == "sawtooth") return sawtooth_profile().with_amplitude(amplitude);
  if (name == "constant") return constant_profile().with_amplitude(amplitude);
  if (name == "single-mode") return single_mode_profile().with_amplitude(amplitude);
  if (name == "smooth") return smooth_profile().with_amplitude(amplitude);
  if (name.rfind("weierstrass:", 0) == 0) {
    const std::string arg = name.substr(12);
    std::size_t used = 0;
    double alpha = 0.0;
    try {
      alpha = std::stod(arg, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != arg.size()) throw ConfigError("bad weierstrass exponent '" + arg + "'");
    return weierstrass_profile(alpha).with_amplitude(amplitude);
  }
  if (name.rfind("table:", 0) == 0) return load_profile_table(name.substr(6)).with_amplitude(amplitude);
  throw ConfigError("unknown profile '" + name + "'");
}

Sigma0Estimate estimate_sigma0(const SpectralField& field, WavenumberRange fit_range,
                               double sigma_cap) {
  const FourierGrid& g = field.grid();
  double peak = 0.0;
  for (const auto& c : field.coeffs()) peak = std::max(peak, std::abs(c));
  if (peak == 0.0) throw FitError("cannot estimate regularity of an all-zero field");

  const long lo = std::max(1L, fit_range.lo);
  const long hi = std::min(fit_range.hi, g.k_max());
  if (lo > hi) throw FitError("fit range contains no resolved wavenumbers");

  const double floor = 1e-12 * peak;
  std::vector<double> xs, ys;
  for (long k = lo; k <= hi; ++k) {
    for (long kk : {k, -k}) {
      const double a = std::abs(field.at(kk));
      if (a <= floor) continue;
      xs.push_back(std::log(static_cast<double>(k)));
      ys.push_back(std::log(a));
    }
  }

  Sigma0Estimate est;
  est.points = xs.size();
  if (xs.size() < 8) {
    // Nearly everything in range sits at the round-off floor: smooth datum.
    est.above_cap = true;
    est.value = kInfiniteRegularity;
    return est;
  }

  const double n = static_cast<double>(xs.size());
  double xm = 0.0, ym = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xm += xs[i];
    ym += ys[i];
  }
  xm /= n;
  ym /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - xm) * (xs[i] - xm);
    sxy += (xs[i] - xm) * (ys[i] - ym);
  }
  if (sxx == 0.0) throw FitError("fit range spans a single wavenumber");
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (ym + slope * (xs[i] - xm));
    rss += r * r;
  }
  est.value = -slope - 0.5;
  est.std_error = std::sqrt(rss / (n - 2.0) / sxx);
  if (est.value > sigma_cap) {
    est.above_cap = true;
    est.value = kInfiniteRegularity;
  }
  return est;
}

} // namespace tlle
