// tlle: command-line front end for simulations, revival and dimension
// analysis, and the named acceptance presets.
//
// Exit codes: 0 success, 2 a preset check failed, 1 anything operational
// (bad arguments, unreadable files, blow-up).

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "tlle/analysis.hpp"
#include "tlle/error.hpp"
#include "tlle/harness.hpp"
#include "tlle/profiles.hpp"
#include "tlle/propagator.hpp"

namespace fs = std::filesystem;
using namespace tlle;

namespace {

constexpr int kOk = 0;
constexpr int kOperational = 1;
constexpr int kAcceptance = 2;

Config load_with_overrides(const std::string& config_path, const std::vector<std::string>& sets) {
  Config cfg = config_path.empty() ? Config{} : Config::load(config_path);
  for (const auto& s : sets) cfg.set_assignment(s);
  return cfg;
}

fs::path prepare_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

int cmd_simulate(const std::string& config_path, const std::vector<std::string>& sets, const std::string& out) {
  Config cfg = load_with_overrides(config_path, sets);
  if (!out.empty()) cfg.set("out_dir", out);
  const SimulationConfig sim = SimulationConfig::from(cfg);
  const fs::path dir = prepare_dir(sim.out_dir);
  write_text(dir / "config.resolved", sim.to_config().resolved());
  const Trajectory traj = run_simulation(sim);
  write_solution_csv(dir / "solution.csv", traj);
  write_energy_csv(dir / "energy.csv", traj);
  fmt::print("simulated {} steps to t = {:.6g}; {} frames written to {}\n", traj.steps, traj.times.back(),
             traj.size(), (dir / "solution.csv").string());
  return kOk;
}

int cmd_revival(std::int64_t p, std::int64_t q, double beta, const std::string& profile_name, double amplitude,
                std::size_t modes, const std::string& out) {
  ModelParams params;
  params.beta = beta;
  const RationalTime t(p, q);
  const RevivalRepresentation rep = revival_coefficients(t, params);
  const fs::path dir = prepare_dir(out);
  write_revival_csv(dir / "revival.csv", rep);
  const AnalyticProfile profile = profile_from_name(profile_name, amplitude);
  write_field_csv(dir / "revival_field.csv", revival_evolve(profile, rep.time, params, FourierGrid(modes)));
  std::size_t nonzero = 0;
  for (const cplx& c : rep.coefficients)
    if (std::abs(c) > 1e-12) ++nonzero;
  fmt::print("t = pi*{}/{}: {} translates, {} with nonzero weight\n", rep.time.p(), rep.time.q(), rep.period,
             nonzero);
  return kOk;
}

int cmd_dimension(const std::string& in, const std::string& component, const std::string& scales,
                  std::optional<double> time, const std::string& out) {
  const GraphSamples g = read_solution_csv(in, component, time);
  const DimensionEstimate est = box_dimension(g.xs, g.ys, parse_scale_range(scales));
  fmt::print("t = {:.6g} {}: dimension {:.4f} (std error {:.4f}, {} scales){}\n", g.time, component, est.slope,
             est.std_error, est.scales.size(), est.out_of_range ? " outside [1, 2]" : "");
  if (!out.empty()) write_dimension_csv(prepare_dir(out) / "dimension.csv", est);
  return kOk;
}

int cmd_smoothing(const std::string& config_path, const std::vector<std::string>& sets,
                  std::optional<double> order, const std::string& out) {
  Config cfg = load_with_overrides(config_path, sets);
  if (!out.empty()) cfg.set("out_dir", out);
  const double s = order ? *order : cfg.get_double("order", NAN);
  if (!std::isfinite(s)) throw ConfigError("smoothing needs --order or an order key");
  const SimulationConfig sim = SimulationConfig::from(cfg);
  const fs::path dir = prepare_dir(sim.out_dir);
  Config resolved = sim.to_config();
  resolved.set("order", fmt::format("{:.17g}", s));
  write_text(dir / "config.resolved", resolved.resolved());
  const Trajectory traj = run_simulation(sim);
  write_smoothing_csv(dir / "smoothing.csv", traj, s);
  fmt::print("wrote {} frames to {}\n", traj.size(), (dir / "smoothing.csv").string());
  return kOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& sets, const std::string& key,
              const std::vector<std::string>& values, const std::string& out) {
  const Config base = load_with_overrides(config_path, sets);
  if (!Config::section_of(key)) throw ConfigError("unknown key '" + key + "'");
  const fs::path root = prepare_dir(out.empty() ? base.get("out_dir", ".") : out);
  std::ofstream summary(root / "sweep.csv", std::ios::binary | std::ios::trunc);
  if (!summary) throw Error("cannot write " + (root / "sweep.csv").string());
  summary << key << ",t_end,l2sq_final,h1_final,out_dir\n";
  for (const auto& value : values) {
    Config cfg = base;
    cfg.set(key, value);
    const std::string sub = key + "=" + value;
    cfg.set("out_dir", (root / sub).string());
    const SimulationConfig sim = SimulationConfig::from(cfg);
    const fs::path dir = prepare_dir(sim.out_dir);
    write_text(dir / "config.resolved", sim.to_config().resolved());
    const Trajectory traj = run_simulation(sim);
    write_solution_csv(dir / "solution.csv", traj);
    write_energy_csv(dir / "energy.csv", traj);
    const SpectralField& last = traj.fields.back();
    summary << value << ',' << fmt::format("{:.17g}", traj.times.back()) << ','
            << fmt::format("{:.17g}", last.l2_norm_sq()) << ',' << fmt::format("{:.17g}", sobolev_norm(last, 1.0))
            << ',' << sub << '\n';
    fmt::print("{} = {}: done\n", key, value);
  }
  return kOk;
}

int cmd_preset(const std::string& name, std::uint64_t seed, const std::string& out, const std::string& config_path,
               const std::vector<std::string>& sets, bool list) {
  if (list) {
    for (const auto& p : preset_names()) fmt::print("{}\n", p);
    return kOk;
  }
  if (name.empty()) throw ConfigError("preset needs --name (see --list)");
  ExperimentConfig exp;
  exp.preset = name;
  exp.seed = seed;
  exp.overrides = load_with_overrides(config_path, sets);
  exp.out_dir = out.empty() ? fs::path(exp.overrides.get("out_dir", ".")) : fs::path(out);
  const RunReport report = run_experiment(exp);
  for (const auto& c : report.checks)
    fmt::print("[{}] {}: {:.6g} ({})\n", c.pass ? "PASS" : "FAIL", c.name, c.measured, c.detail);
  fmt::print("{} {} in {:.1f} s\n", report.preset, report.passed() ? "passed" : "failed", report.wall_seconds);
  return report.passed() ? kOk : kAcceptance;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudospectral solver and analysis toolkit for the third-order Lugiato-Lefever equation"};
  app.require_subcommand(1);

  std::string config_path, out, in, component = "re", scales = "3:12", profile = "step", key, name;
  std::vector<std::string> sets, values;
  std::int64_t p = 1, q = 2;
  double beta = 1.0, amplitude = 1.0;
  std::size_t modes = 1024;
  std::uint64_t seed = 1;
  std::optional<double> time, order;
  bool list = false;

  auto* simulate = app.add_subcommand("simulate", "integrate a configured run; writes solution.csv and energy.csv");
  simulate->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  simulate->add_option("--set", sets, "override key=value");
  simulate->add_option("--out", out, "output directory (overrides out_dir)");

  auto* revival = app.add_subcommand("revival", "revival coefficients and the evolved field at t = pi p/q");
  revival->add_option("--p", p, "numerator")->required();
  revival->add_option("--q", q, "denominator")->required();
  revival->add_option("--beta", beta, "dispersion coefficient (integer)");
  revival->add_option("--profile", profile, "initial profile name");
  revival->add_option("--amplitude", amplitude, "profile amplitude");
  revival->add_option("--modes", modes, "grid size for revival_field.csv");
  revival->add_option("--out", out, "output directory")->required();

  auto* dimension = app.add_subcommand("dimension", "box-counting dimension of one frame of a solution.csv");
  dimension->add_option("--in", in, "solution.csv")->required()->check(CLI::ExistingFile);
  dimension->add_option("--component", component, "re or im")->check(CLI::IsMember({"re", "im"}));
  dimension->add_option("--scales", scales, "dyadic range a:b; boxes of width 2^-j on the unit-rescaled graph");
  dimension->add_option("--time", time, "frame time (default: last frame)");
  dimension->add_option("--out", out, "write dimension.csv here");

  auto* smoothing = app.add_subcommand("smoothing", "Sobolev norms of the Duhamel part and the free part");
  smoothing->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  smoothing->add_option("--order", order, "Sobolev order");
  smoothing->add_option("--set", sets, "override key=value");
  smoothing->add_option("--out", out, "output directory (overrides out_dir)");

  auto* sweep = app.add_subcommand("sweep", "repeat a simulation over values of one key");
  sweep->add_option("--config", config_path, "config file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--key", key, "key to vary")->required();
  sweep->add_option("--values", values, "comma-separated values")->required()->delimiter(',');
  sweep->add_option("--set", sets, "override key=value");
  sweep->add_option("--out", out, "output root (overrides out_dir)");

  auto* preset = app.add_subcommand("preset", "run a named acceptance experiment");
  preset->add_option("--name", name, "preset name");
  preset->add_option("--seed", seed, "random seed");
  preset->add_option("--out", out, "output directory");
  preset->add_option("--config", config_path, "config file with overrides")->check(CLI::ExistingFile);
  preset->add_option("--set", sets, "override key=value");
  preset->add_flag("--list", list, "print preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kOperational;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, sets, out);
    if (*revival) return cmd_revival(p, q, beta, profile, amplitude, modes, out);
    if (*dimension) return cmd_dimension(in, component, scales, time, out);
    if (*smoothing) return cmd_smoothing(config_path, sets, order, out);
    if (*sweep) return cmd_sweep(config_path, sets, key, values, out);
    if (*preset) return cmd_preset(name, seed, out, config_path, sets, list);
  } catch (const std::exception& e) {
    std::cerr << "tlle: " << e.what() << '\n';
    return kOperational;
  }
  return kOperational;
}
