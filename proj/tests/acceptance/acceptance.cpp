// Acceptance suite: one PASS/FAIL line per criterion with the measured values
// and wall time. A criterion also fails when it overruns its time budget.
//
// Criteria 8 and 9 are checked against test-only oracles: a brute-force
// double sum for the resonant split and a quadrature form of the Duhamel
// part built from the exact cubic sums.

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "duhamel_quadrature.hpp"
#include "tlle/analysis.hpp"
#include "tlle/decompose.hpp"
#include "tlle/experiments.hpp"
#include "tlle/profiles.hpp"

using namespace tlle;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string join(const std::vector<double>& v, const char* fmt_spec = "{:.4g}") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format(fmt::runtime(fmt_spec), v[i]);
  }
  return out;
}

Outcome revival_identity() {
  const double err = revival_identity_error(1024);
  return {err < 1e-10, fmt::format("relative L2 error {:.3e} (< 1e-10)", err)};
}

Outcome gauss_sums() {
  const auto cases = gauss_sum_cases(1024, 16, {1, 2});
  double worst = 0.0;
  GaussSumCase at{};
  for (const auto& c : cases)
    if (c.error >= worst) {
      worst = c.error;
      at = c;
    }
  return {worst < 1e-9, fmt::format("{} cases, worst {:.3e} at beta={} p/q={}/{} (< 1e-9)", cases.size(), worst,
                                    at.beta, at.p, at.q)};
}

Outcome quantization_jump() {
  const auto jumps = quantization_jumps({512, 1024, 2048}, 0.1, 1e-4);
  bool ok = true;
  std::vector<double> ratios;
  for (const auto& j : jumps) {
    ratios.push_back(j.jump / j.expected);
    ok = ok && std::abs(ratios.back() - 1.0) <= 0.15;
  }
  return {ok, fmt::format("jump / (0.1 e^-pi = {:.4e}) at n=512,1024,2048: {} (within 15%)", jumps[0].expected,
                          join(ratios))};
}

Outcome irrational_continuity() {
  const double t = kPi * (std::sqrt(5.0) - 1.0) / 2.0;
  const auto inc = irrational_increments({512, 1024, 2048, 4096, 8192}, t, 0.1);
  std::vector<double> values;
  bool monotone = true;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    values.push_back(inc[i].increment);
    if (i > 0 && !(inc[i].increment < inc[i - 1].increment)) monotone = false;
  }
  const double same_time = inc.back().increment / inc.back().same_time_jump;
  const double pi_time = inc.back().increment / inc.back().pi_time_jump;
  return {monotone && same_time < 0.1,
          fmt::format("increments n=512..8192: {}; monotone={}; final / (0.1 e^-t) = {:.4f} (< 0.1); "
                      "final / (0.1 e^-pi) = {:.4f} (reported only)",
                      join(values, "{:.3e}"), monotone, same_time, pi_time)};
}

Outcome dimension_window_check() {
  DimensionSetup setup;
  setup.times = surrogate_irrational_times();
  const auto dims = dimension_window(setup);
  bool ok = true;
  double worst_err = 0.0;
  std::vector<double> slopes;
  for (const auto& d : dims)
    for (const DimensionEstimate* e : {&d.re, &d.im}) {
      slopes.push_back(e->slope);
      worst_err = std::max(worst_err, e->std_error);
      ok = ok && e->slope >= 1.15 && e->slope <= 1.85 && e->std_error < 0.05;
    }
  return {ok, fmt::format("slopes (re, im per time) {} in [1.15, 1.85]; max stderr {:.4f} (< 0.05)", join(slopes),
                          worst_err)};
}

Outcome smoothing() {
  const auto m = smoothing_gain({1024, 2048}, 1.3, 1.0, 1e-3, 1.0);
  const double drift = std::abs(m[1].duhamel_norm / m[0].duhamel_norm - 1.0);
  const double growth = m[1].linear_norm / m[0].linear_norm;
  return {drift < 0.05 && growth >= 1.6,
          fmt::format("||N||_H1.3 {:.6g} -> {:.6g} (change {:.2e} < 5%); linear part grows x{:.4f} (>= 1.6)",
                      m[0].duhamel_norm, m[1].duhamel_norm, drift, growth)};
}

Outcome energy_balance() {
  const std::vector<double> dts{1e-3, 5e-4, 2.5e-4};
  const auto m = energy_convergence(dts, 64, 1.0, 1.0);
  std::vector<double> res;
  for (const auto& e : m) res.push_back(e.max_residual);
  const double slope = log_log_slope(dts, res);
  return {slope >= 3.5 && slope <= 4.5,
          fmt::format("max residual {} ; slope {:.3f} in [3.5, 4.5]", join(res, "{:.3e}"), slope)};
}

Outcome resonant_split_check() {
  double worst = 0.0;
  const std::size_t sizes[] = {4, 8, 16, 32};
  for (unsigned seed = 0; seed < 100; ++seed) {
    const FourierGrid g(sizes[seed % 4]);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    SpectralField a(g);
    for (long k = g.k_min() + 1; k <= g.k_max(); ++k) a.set(k, {n(rng), n(rng)});

    SpectralField full(g), rest(g);
    for (long k = g.k_min() + 1; k <= g.k_max(); ++k) {
      cplx all = 0.0, nonres = 0.0;
      for (long k1 = g.k_min() + 1; k1 <= g.k_max(); ++k1)
        for (long k2 = g.k_min() + 1; k2 <= g.k_max(); ++k2) {
          const long k3 = k - k1 + k2;
          if (!g.resolves(k3)) continue;
          const cplx term = a.at(k1) * std::conj(a.at(k2)) * a.at(k3);
          all += term;
          if (k1 != k && k2 != k1) nonres += term;
        }
      full.set(k, all);
      rest.set(k, nonres);
    }
    const ResonantSplit split = resonant_split(a);
    worst = std::max({worst, relative_l2_error(split.total(), full), relative_l2_error(split.r_term, rest)});
  }
  return {worst < 1e-12, fmt::format("100 fields at n in {{4, 8, 16, 32}}, worst relative error {:.3e} (< 1e-12)", worst)};
}

Outcome duhamel_cross_validation() {
  const FourierGrid g(64);
  const ModelParams params;
  const std::vector<double> dts{4e-3, 2e-3, 1e-3};
  std::vector<double> gaps;
  for (double dt : dts) {
    const Trajectory traj = solve(smooth_profile(), g, 1.0, dt, params, 1);
    const DuhamelSeries sub = duhamel_part(traj);
    const auto quad = oracle::duhamel_quadrature(traj);
    double gap = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const SpectralField diff = sub.n_fields[i] - quad[i];
      gap = std::max(gap, std::sqrt(diff.l2_norm_sq()));
    }
    gaps.push_back(gap);
  }
  const double r1 = gaps[0] / gaps[1], r2 = gaps[1] / gaps[2];
  const bool ok = r1 >= 3.4 && r1 <= 4.6 && r2 >= 3.4 && r2 <= 4.6;
  return {ok, fmt::format("max L2 gap at dt=4e-3,2e-3,1e-3: {}; halving ratios {:.3f}, {:.3f} in [3.4, 4.6]",
                          join(gaps, "{:.3e}"), r1, r2)};
}

Outcome phi_beta_regimes() {
  double lo = INFINITY, hi = 0.0;
  long k = 10;
  while (k <= 100000) {
    const double jk = std::sqrt(1.0 + static_cast<double>(k) * static_cast<double>(k));
    for (double r : {phi_beta(k, 2.0), phi_beta(k, 1.0) / std::log(1.0 + jk), phi_beta(k, 0.5) / std::sqrt(jk)}) {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    k = std::max(k + 1, static_cast<long>(std::ceil(static_cast<double>(k) * 1.05)));
  }
  return {lo >= 0.25 && hi <= 4.0,
          fmt::format("ratios over 10 <= k <= 1e5 span [{:.4f}, {:.4f}] within [0.25, 4]; phi_2(10) = {:.6f}", lo,
                      hi, phi_beta(10, 2.0))};
}

Outcome trilinear() {
  const TrilinearProbe probe = trilinear_probe(TrilinearSetup{});
  const double a = probe.levels[0].max_ratio(), b = probe.levels[1].max_ratio();
  const double factor = std::max(a, b) / std::min(a, b);
  const double worst = std::max(a, b) / probe.baseline;
  return {factor <= 2.0 && worst <= 10.0,
          fmt::format("ensemble max {:.4e} (n=64, K={}) vs {:.4e} (n=128, K={}): factor {:.3f} (<= 2); "
                      "max / single-mode baseline {:.3f} (<= 10)",
                      a, probe.levels[0].band, b, probe.levels[1].band, factor, worst)};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "revival identity", 1, revival_identity},
      {2, "Gauss-sum equivalence", 30, gauss_sums},
      {3, "quantization jump", 300, quantization_jump},
      {4, "irrational-time continuity", 60, irrational_continuity},
      {5, "dimension window", 600, dimension_window_check},
      {6, "smoothing gain", 300, smoothing},
      {7, "energy balance", 120, energy_balance},
      {8, "resonant-split reconstruction", 10, resonant_split_check},
      {9, "Duhamel cross-validation", 300, duhamel_cross_validation},
      {10, "phi_beta asymptotics", 1, phi_beta_regimes},
      {11, "trilinear probe", 120, trilinear},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs < c.budget_seconds;
    const bool pass = out.pass && in_budget;
    if (!pass) ++failed;
    fmt::print("[{}] {:>2} {}: {} ({:.2f} s, budget {:.0f} s{})\n", pass ? "PASS" : "FAIL", c.id, c.name, out.detail,
               secs, c.budget_seconds, in_budget ? "" : ", over budget");
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
