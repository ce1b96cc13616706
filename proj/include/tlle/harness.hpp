#pragma once

// Experiment plumbing: sectioned key=value configs, CSV emission, the named
// presets and their run reports.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tlle/analysis.hpp"
#include "tlle/evolve.hpp"
#include "tlle/propagator.hpp"

namespace tlle {

/// Flat key=value text with optional [section] headers. Every key belongs to
/// one fixed section; a key may appear bare (before any header) or under its
/// own section. Unknown keys, keys under the wrong section, duplicates and
/// malformed lines raise ConfigError.
///
///   [model]    modes beta theta damping profile amplitude
///   [solver]   dt t_end scheme dealias stride
///   [analysis] order scales samples band_divisor solve_modes p q
///   [output]   out_dir
class Config {
public:
  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  /// Section owning a key; nullopt for unknown keys.
  static std::optional<std::string> section_of(std::string_view key);

  void set(const std::string& key, const std::string& value);
  /// Parses "key=value".
  void set_assignment(std::string_view assignment);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::vector<std::string> keys() const;

  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;

  /// Canonical text: sections in fixed order, keys sorted within each.
  std::string resolved() const;

private:
  std::map<std::string, std::string> values_;
};

struct SimulationConfig {
  std::size_t modes = 512;
  ModelParams params;
  std::string profile = "step";
  double amplitude = 1.0;
  double dt = 1e-3;
  double t_end = 1.0;
  std::size_t stride = 10;
  SolverOptions options;
  std::filesystem::path out_dir = ".";

  static SimulationConfig from(const Config& config);
  /// Every simulation key with its value, for config.resolved.
  Config to_config() const;
};

Trajectory run_simulation(const SimulationConfig& config);

/// t, x, re_u, im_u for every stored frame.
void write_solution_csv(const std::filesystem::path& path, const Trajectory& traj);
/// t, l2sq, residual; residual is empty where the stencil does not reach.
void write_energy_csv(const std::filesystem::path& path, const Trajectory& traj);
/// t, h_norm_N, h_norm_linear, n_modes for every stored frame.
void write_smoothing_csv(const std::filesystem::path& path, const Trajectory& traj, double order);
/// j, re_c, im_c, abs_c.
void write_revival_csv(const std::filesystem::path& path, const RevivalRepresentation& rep);
/// x, re_u, im_u, abs_u.
void write_field_csv(const std::filesystem::path& path, const SpectralField& field);
/// log_inv_eps, log_count.
void write_dimension_csv(const std::filesystem::path& path, const DimensionEstimate& est);

struct GraphSamples {
  double time;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// One frame of a solution.csv: the frame nearest `time`, or the last frame
/// when time is empty. component is "re" or "im".
GraphSamples read_solution_csv(const std::filesystem::path& path, const std::string& component,
                               std::optional<double> time = std::nullopt);

/// "a:b" -> ScaleRange{a, b}.
ScaleRange parse_scale_range(std::string_view text);

struct ExperimentConfig {
  std::string preset;
  Config overrides;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string detail;
};

struct RunReport {
  std::string preset;
  std::uint64_t seed = 0;
  std::string resolved_config;
  std::vector<std::string> files;
  std::vector<CheckResult> checks;
  double wall_seconds = 0.0;
  std::string error; ///< set when the run stopped on an exception

  bool passed() const;
  std::string to_json() const;
};

const std::vector<std::string>& preset_names();

/// Runs a preset into out_dir: config.resolved first, then the CSVs, then
/// report.json. The report is also written when the run throws; the exception
/// is rethrown afterwards. Unknown presets or keys that do not apply to the
/// preset raise ConfigError; an unwritable out_dir raises Error.
RunReport run_experiment(const ExperimentConfig& config);

} // namespace tlle
