#include "tlle/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

#include "tlle/decompose.hpp"
#include "tlle/error.hpp"
#include "tlle/experiments.hpp"
#include "tlle/profiles.hpp"

namespace tlle {
namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 4> kSections{"model", "solver", "analysis", "output"};

const std::map<std::string, std::string, std::less<>>& key_sections() {
  static const std::map<std::string, std::string, std::less<>> table{
      {"modes", "model"},         {"beta", "model"},         {"theta", "model"},
      {"damping", "model"},       {"profile", "model"},      {"amplitude", "model"},
      {"dt", "solver"},           {"t_end", "solver"},       {"scheme", "solver"},
      {"dealias", "solver"},      {"stride", "solver"},      {"order", "analysis"},
      {"scales", "analysis"},     {"samples", "analysis"},   {"band_divisor", "analysis"},
      {"solve_modes", "analysis"}, {"p", "analysis"},        {"q", "analysis"},
      {"out_dir", "output"},
  };
  return table;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ConfigError("'" + key + "' expects a number, got '" + text + "'");
  return v;
}

std::size_t parse_size(const std::string& key, const std::string& text) {
  const double v = parse_double(key, text);
  if (v < 0.0 || v != std::floor(v) || v > 1e15)
    throw ConfigError("'" + key + "' expects a non-negative integer, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

} // namespace

// ---------------------------------------------------------------- Config

std::optional<std::string> Config::section_of(std::string_view key) {
  const auto& table = key_sections();
  if (auto it = table.find(key); it != table.end()) return it->second;
  return std::nullopt;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), section) == kSections.end())
        throw ConfigError(where + ": unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto owner = section_of(key);
    if (!owner) throw ConfigError(where + ": unknown key '" + key + "'");
    if (!section.empty() && *owner != section)
      throw ConfigError(where + ": key '" + key + "' belongs to [" + *owner + "], not [" + section + "]");
    if (cfg.has(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    cfg.set(key, value);
  }
  return cfg;
}

Config Config::load(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void Config::set(const std::string& key, const std::string& value) {
  if (!section_of(key)) throw ConfigError("unknown key '" + key + "'");
  if (value.empty()) throw ConfigError("key '" + key + "' has an empty value");
  values_[key] = value;
}

void Config::set_assignment(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) throw ConfigError("expected key=value, got '" + std::string(assignment) + "'");
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

std::vector<std::string> Config::keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values_) out.push_back(k);
  return out;
}

std::string Config::get(const std::string& key, const std::string& fallback) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  return fallback;
}

double Config::get_double(const std::string& key, double fallback) const {
  if (auto it = values_.find(key); it != values_.end()) return parse_double(key, it->second);
  return fallback;
}

std::size_t Config::get_size(const std::string& key, std::size_t fallback) const {
  if (auto it = values_.find(key); it != values_.end()) return parse_size(key, it->second);
  return fallback;
}

std::string Config::resolved() const {
  std::string out;
  for (std::string_view section : kSections) {
    std::string body;
    for (const auto& [k, v] : values_)
      if (*section_of(k) == section) body += k + " = " + v + "\n";
    if (body.empty()) continue;
    if (!out.empty()) out += "\n";
    out += "[" + std::string(section) + "]\n" + body;
  }
  return out;
}

// ------------------------------------------------------------ simulation

SimulationConfig SimulationConfig::from(const Config& config) {
  SimulationConfig s;
  s.modes = config.get_size("modes", s.modes);
  s.params.beta = config.get_double("beta", s.params.beta);
  s.params.theta = config.get_double("theta", s.params.theta);
  s.params.damping = config.get_double("damping", s.params.damping);
  s.profile = config.get("profile", s.profile);
  s.amplitude = config.get_double("amplitude", s.amplitude);
  s.dt = config.get_double("dt", s.dt);
  s.t_end = config.get_double("t_end", s.t_end);
  s.stride = config.get_size("stride", s.stride);
  s.options.scheme = parse_scheme(config.get("scheme", to_string(s.options.scheme)));
  s.options.dealias = parse_dealias(config.get("dealias", to_string(s.options.dealias)));
  s.out_dir = config.get("out_dir", s.out_dir.string());
  if (!(s.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(s.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
  if (s.stride == 0) throw ConfigError("stride must be at least 1");
  return s;
}

Config SimulationConfig::to_config() const {
  Config c;
  c.set("modes", std::to_string(modes));
  c.set("beta", num(params.beta));
  c.set("theta", num(params.theta));
  c.set("damping", num(params.damping));
  c.set("profile", profile);
  c.set("amplitude", num(amplitude));
  c.set("dt", num(dt));
  c.set("t_end", num(t_end));
  c.set("stride", std::to_string(stride));
  c.set("scheme", to_string(options.scheme));
  c.set("dealias", to_string(options.dealias));
  c.set("out_dir", out_dir.string());
  return c;
}

Trajectory run_simulation(const SimulationConfig& config) {
  const FourierGrid grid(config.modes);
  const AnalyticProfile profile = profile_from_name(config.profile, config.amplitude);
  return solve(profile, grid, config.t_end, config.dt, config.params, config.stride, config.options);
}

// ------------------------------------------------------------------- CSV

void write_solution_csv(const fs::path& path, const Trajectory& traj) {
  std::ofstream out = open_output(path);
  out << "t,x,re_u,im_u\n";
  const std::vector<double> xs = traj.grid().points();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const std::vector<cplx> u = from_spectral(traj.fields[i]);
    const std::string t = num(traj.times[i]);
    for (std::size_t j = 0; j < u.size(); ++j)
      out << t << ',' << num(xs[j]) << ',' << num(u[j].real()) << ',' << num(u[j].imag()) << '\n';
  }
}

void write_energy_csv(const fs::path& path, const Trajectory& traj) {
  std::map<std::size_t, double> residual;
  if (traj.size() >= 3) {
    const EnergyResidual r = energy_balance_residual(traj);
    const std::size_t offset = traj.size() >= 5 ? 2 : 1;
    for (std::size_t i = 0; i < r.values.size(); ++i) residual[i + offset] = r.values[i];
  }
  std::ofstream out = open_output(path);
  out << "t,l2sq,residual\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << num(traj.times[i]) << ',' << num(traj.fields[i].l2_norm_sq()) << ',';
    if (auto it = residual.find(i); it != residual.end()) out << num(it->second);
    out << '\n';
  }
}

void write_smoothing_csv(const fs::path& path, const Trajectory& traj, double order) {
  const DuhamelSeries series = duhamel_part(traj);
  std::ofstream out = open_output(path);
  out << "t,h_norm_N,h_norm_linear,n_modes\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const SpectralField linear = linear_evolve(traj.initial(), traj.times[i], traj.params);
    out << num(traj.times[i]) << ',' << num(sobolev_norm(series.n_fields[i], order)) << ','
        << num(sobolev_norm(linear, order)) << ',' << traj.grid().size() << '\n';
  }
}

void write_revival_csv(const fs::path& path, const RevivalRepresentation& rep) {
  std::ofstream out = open_output(path);
  out << "j,re_c,im_c,abs_c\n";
  for (std::size_t j = 0; j < rep.coefficients.size(); ++j) {
    const cplx c = rep.coefficients[j];
    out << j << ',' << num(c.real()) << ',' << num(c.imag()) << ',' << num(std::abs(c)) << '\n';
  }
}

void write_field_csv(const fs::path& path, const SpectralField& field) {
  std::ofstream out = open_output(path);
  out << "x,re_u,im_u,abs_u\n";
  const std::vector<cplx> u = from_spectral(field);
  for (std::size_t j = 0; j < u.size(); ++j)
    out << num(field.grid().point(j)) << ',' << num(u[j].real()) << ',' << num(u[j].imag()) << ','
        << num(std::abs(u[j])) << '\n';
}

void write_dimension_csv(const fs::path& path, const DimensionEstimate& est) {
  std::ofstream out = open_output(path);
  out << "log_inv_eps,log_count\n";
  for (std::size_t i = 0; i < est.scales.size(); ++i)
    out << num(std::log(1.0 / est.scales[i])) << ',' << num(std::log(est.counts[i])) << '\n';
}

GraphSamples read_solution_csv(const fs::path& path, const std::string& component,
                               std::optional<double> time) {
  if (component != "re" && component != "im")
    throw ConfigError("component must be re or im, got '" + component + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || trim(line) != "t,x,re_u,im_u")
    throw Error(path.string() + " is not a solution CSV (expected header t,x,re_u,im_u)");

  std::map<double, GraphSamples> frames;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::array<double, 4> v{};
    std::istringstream ls(line);
    std::string cell;
    for (std::size_t c = 0; c < 4; ++c) {
      if (!std::getline(ls, cell, ',')) throw Error(path.string() + ": short row at line " + std::to_string(line_no));
      v[c] = parse_double("column " + std::to_string(c + 1), trim(cell));
    }
    GraphSamples& g = frames[v[0]];
    g.time = v[0];
    g.xs.push_back(v[1]);
    g.ys.push_back(component == "re" ? v[2] : v[3]);
  }
  if (frames.empty()) throw Error(path.string() + " holds no frames");
  if (!time) return frames.rbegin()->second;
  auto best = frames.begin();
  for (auto it = frames.begin(); it != frames.end(); ++it)
    if (std::abs(it->first - *time) < std::abs(best->first - *time)) best = it;
  return best->second;
}

ScaleRange parse_scale_range(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ConfigError("scales must look like a:b, got '" + std::string(text) + "'");
  const std::string a = trim(text.substr(0, colon)), b = trim(text.substr(colon + 1));
  const std::size_t lo = parse_size("scales", a), hi = parse_size("scales", b);
  if (lo > hi || hi > 40) throw ConfigError("scales must satisfy a <= b <= 40");
  return ScaleRange{static_cast<int>(lo), static_cast<int>(hi)};
}

// --------------------------------------------------------------- reports

bool RunReport::passed() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["preset"] = preset;
  j["seed"] = seed;
  j["passed"] = passed();
  j["resolved_config"] = resolved_config;
  j["files"] = files;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json item;
    item["name"] = c.name;
    item["pass"] = c.pass;
    if (std::isfinite(c.measured))
      item["measured"] = c.measured;
    else
      item["measured"] = nullptr;
    item["detail"] = c.detail;
    arr.push_back(item);
  }
  j["checks"] = arr;
  j["wall_seconds"] = wall_seconds;
  if (!error.empty()) j["error"] = error;
  return j.dump(2) + "\n";
}

// --------------------------------------------------------------- presets

namespace {

struct PresetContext {
  const Config& config;
  std::uint64_t seed;
  fs::path out_dir;
  RunReport& report;

  fs::path file(const std::string& name) {
    report.files.push_back(name);
    return out_dir / name;
  }
  void check(std::string name, bool pass, double measured, std::string detail) {
    report.checks.push_back({std::move(name), pass, measured, std::move(detail)});
  }
  SolverOptions options() const {
    return {parse_scheme(config.get("scheme", "etd4")), parse_dealias(config.get("dealias", "two-thirds"))};
  }
};

using PresetFn = std::function<void(PresetContext&)>;

struct Preset {
  std::string name;
  std::vector<std::pair<std::string, std::string>> defaults;
  PresetFn run;
};

// Rational branch of the dichotomy: at t = pi the free flow returns e^{-pi}
// times the datum, and at every t in pi Q it is a finite sum of translates
// whose weights are Gauss sums.
void run_revival_check(PresetContext& ctx) {
  const std::size_t modes = ctx.config.get_size("modes", 0);
  const double id_err = revival_identity_error(modes);
  ctx.check("revival_identity", id_err < 1e-10, id_err, "relative L2 error at t = pi, threshold 1e-10");

  const std::vector<GaussSumCase> cases = gauss_sum_cases(modes, 16, {1, 2});
  double worst = 0.0;
  for (const auto& c : cases) worst = std::max(worst, c.error);
  {
    std::ofstream out = open_output(ctx.file("gauss_sum.csv"));
    out << "beta,p,q,error\n";
    for (const auto& c : cases) out << c.beta << ',' << c.p << ',' << c.q << ',' << num(c.error) << '\n';
  }
  ctx.check("gauss_sum_equivalence", worst < 1e-9, worst,
            fmt::format("worst of {} cases (q <= 16, beta in {{1, 2}}), threshold 1e-9", cases.size()));

  ModelParams params;
  params.beta = ctx.config.get_double("beta", 1.0);
  const RationalTime t(static_cast<std::int64_t>(ctx.config.get_size("p", 1)),
                       static_cast<std::int64_t>(ctx.config.get_size("q", 2)));
  const AnalyticProfile profile =
      profile_from_name(ctx.config.get("profile", "step"), ctx.config.get_double("amplitude", 1.0));
  const RevivalRepresentation rep = revival_coefficients(t, params);
  write_revival_csv(ctx.file("revival.csv"), rep);
  write_field_csv(ctx.file("revival_field.csv"), revival_evolve(profile, rep.time, params, FourierGrid(modes)));
}

// Rational-time jumps survive the nonlinear flow: the largest cell increment
// at t = pi tracks e^{-pi} times the step height.
void run_quantization_jump(PresetContext& ctx) {
  const std::size_t base = ctx.config.get_size("modes", 0);
  const double height = ctx.config.get_double("amplitude", 0.0);
  const double dt = ctx.config.get_double("dt", 0.0);
  const std::vector<JumpMeasurement> jumps = quantization_jumps({base, 2 * base, 4 * base}, height, dt, ctx.options());
  std::ofstream out = open_output(ctx.file("jumps.csv"));
  out << "modes,time,jump,cell,expected,ratio\n";
  for (const auto& j : jumps) {
    const double ratio = j.jump / j.expected;
    out << j.modes << ',' << num(j.time) << ',' << num(j.jump) << ',' << j.cell << ',' << num(j.expected)
        << ',' << num(ratio) << '\n';
    ctx.check(fmt::format("jump_n{}", j.modes), std::abs(ratio - 1.0) <= 0.15, j.jump,
              fmt::format("expected {:.6e}, ratio {:.4f}, tolerance 15%", j.expected, ratio));
  }
}

// Irrational branch: the free evolution of the step is continuous, so its
// largest cell increment decays under refinement.
void run_irrational_continuity(PresetContext& ctx) {
  const std::size_t base = ctx.config.get_size("modes", 0);
  const double height = ctx.config.get_double("amplitude", 0.0);
  const double t = ctx.config.get_double("t_end", 0.0);
  std::vector<std::size_t> levels;
  for (std::size_t m = base; m <= 16 * base; m *= 2) levels.push_back(m);
  const std::vector<IncrementMeasurement> inc = irrational_increments(levels, t, height);
  std::ofstream out = open_output(ctx.file("increments.csv"));
  out << "modes,increment,same_time_jump,ratio_same_time,pi_time_jump,ratio_pi_time\n";
  bool monotone = true;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    const auto& m = inc[i];
    out << m.modes << ',' << num(m.increment) << ',' << num(m.same_time_jump) << ','
        << num(m.increment / m.same_time_jump) << ',' << num(m.pi_time_jump) << ','
        << num(m.increment / m.pi_time_jump) << '\n';
    if (i > 0 && !(m.increment < inc[i - 1].increment)) monotone = false;
  }
  ctx.check("monotone_decrease", monotone, inc.back().increment,
            fmt::format("largest increment over n = {}..{}", levels.front(), levels.back()));
  const double ratio = inc.back().increment / inc.back().same_time_jump;
  ctx.check("final_below_10pct", ratio < 0.1, ratio,
            fmt::format("increment / (e^-t height) at n = {}; against e^-pi height it is {:.4f}",
                        levels.back(), inc.back().increment / inc.back().pi_time_jump));
}

// Fractal graphs at irrational times: box dimension of Re u and Im u inside
// the window [1.25, 1.75], widened by the estimator tolerance 0.1.
void run_dimension_window(PresetContext& ctx) {
  DimensionSetup setup;
  setup.times = surrogate_irrational_times();
  setup.fine_modes = ctx.config.get_size("modes", 0);
  setup.solve_modes = ctx.config.get_size("solve_modes", 0);
  setup.dt = ctx.config.get_double("dt", 0.0);
  setup.height = ctx.config.get_double("amplitude", 0.0);
  setup.scales = parse_scale_range(ctx.config.get("scales", ""));
  setup.options = ctx.options();
  const std::vector<DimensionMeasurement> dims = dimension_window(setup);

  std::ofstream summary = open_output(ctx.file("dimension.csv"));
  std::ofstream counts = open_output(ctx.file("dimension_counts.csv"));
  summary << "time,component,slope,stderr,out_of_range\n";
  counts << "time,component,log_inv_eps,log_count\n";
  double lo = 3.0, hi = 0.0, worst_err = 0.0;
  for (const auto& d : dims) {
    for (const auto& [name, est] : {std::pair<const char*, const DimensionEstimate*>{"re", &d.re}, {"im", &d.im}}) {
      summary << num(d.time) << ',' << name << ',' << num(est->slope) << ',' << num(est->std_error) << ','
              << (est->out_of_range ? 1 : 0) << '\n';
      for (std::size_t i = 0; i < est->scales.size(); ++i)
        counts << num(d.time) << ',' << name << ',' << num(std::log(1.0 / est->scales[i])) << ','
               << num(std::log(est->counts[i])) << '\n';
      lo = std::min(lo, est->slope);
      hi = std::max(hi, est->slope);
      worst_err = std::max(worst_err, est->std_error);
    }
  }
  ctx.check("slopes_in_window", lo >= 1.15 && hi <= 1.85, lo,
            fmt::format("slopes span [{:.4f}, {:.4f}], window [1.15, 1.85]", lo, hi));
  ctx.check("stderr_below_0.05", worst_err < 0.05, worst_err, "largest regression standard error");
}

// Duhamel smoothing: ||N(t)||_{H^order} is resolution independent while the
// truncated free part grows under refinement.
void run_smoothing_gain(PresetContext& ctx) {
  const std::size_t base = ctx.config.get_size("modes", 0);
  const double order = ctx.config.get_double("order", 0.0);
  const double t = ctx.config.get_double("t_end", 0.0);
  const std::vector<SmoothingMeasurement> m =
      smoothing_gain({base, 2 * base}, order, t, ctx.config.get_double("dt", 0.0),
                     ctx.config.get_double("amplitude", 0.0), ctx.options());
  std::ofstream out = open_output(ctx.file("smoothing.csv"));
  out << "t,h_norm_N,h_norm_linear,n_modes\n";
  for (const auto& s : m) out << num(t) << ',' << num(s.duhamel_norm) << ',' << num(s.linear_norm) << ',' << s.modes << '\n';
  const double drift = std::abs(m[1].duhamel_norm / m[0].duhamel_norm - 1.0);
  const double growth = m[1].linear_norm / m[0].linear_norm;
  ctx.check("duhamel_norm_agreement", drift < 0.05, drift, "relative change of ||N||, tolerance 5%");
  ctx.check("linear_growth", growth >= 1.6, growth, "free-part norm growth per doubling, at least 1.6");
}

// Energy identity d/dt ||u||^2 = -2 ||u||^2 + 2 Re int u0 conj(u): the
// residual of the discrete solution falls at the scheme's order.
void run_energy_balance(PresetContext& ctx) {
  const double dt = ctx.config.get_double("dt", 0.0);
  const SolverOptions options = ctx.options();
  const std::vector<EnergyMeasurement> m =
      energy_convergence({dt, dt / 2.0, dt / 4.0}, ctx.config.get_size("modes", 0),
                         ctx.config.get_double("t_end", 0.0), ctx.config.get_double("amplitude", 0.0), options);
  std::ofstream out = open_output(ctx.file("energy_convergence.csv"));
  out << "dt,max_residual\n";
  std::vector<double> xs, ys;
  for (const auto& e : m) {
    out << num(e.dt) << ',' << num(e.max_residual) << '\n';
    xs.push_back(e.dt);
    ys.push_back(e.max_residual);
  }
  const double slope = log_log_slope(xs, ys);
  const double order = options.scheme == Scheme::Etd4 ? 4.0 : 2.0;
  ctx.check("residual_slope", std::abs(slope - order) <= 0.5, slope,
            fmt::format("expected {:.0f} +- 0.5 for {}", order, to_string(options.scheme)));
}

// Trilinear estimate in Bourgain norms: the ratio stays bounded across
// resolutions and relative to a single mode.
void run_trilinear_probe(PresetContext& ctx) {
  TrilinearSetup setup;
  const std::size_t base = ctx.config.get_size("modes", 0);
  setup.modes = {base, 2 * base};
  setup.samples = ctx.config.get_size("samples", 0);
  setup.band_divisor = ctx.config.get_size("band_divisor", 0);
  setup.seed = ctx.seed;
  const TrilinearProbe probe = trilinear_probe(setup);

  std::ofstream all = open_output(ctx.file("trilinear.csv"));
  std::ofstream summary = open_output(ctx.file("trilinear_summary.csv"));
  all << "modes,band,sample,ratio\n";
  summary << "modes,band,time_samples,max_ratio,baseline\n";
  double top = 0.0, bottom = INFINITY, overall = 0.0;
  for (const auto& level : probe.levels) {
    for (std::size_t i = 0; i < level.ratios.size(); ++i)
      all << level.modes << ',' << level.band << ',' << i << ',' << num(level.ratios[i]) << '\n';
    summary << level.modes << ',' << level.band << ',' << level.time_samples << ',' << num(level.max_ratio()) << ','
            << num(probe.baseline) << '\n';
    top = std::max(top, level.max_ratio());
    bottom = std::min(bottom, level.max_ratio());
    overall = std::max(overall, level.max_ratio());
  }
  ctx.check("ensemble_max_within_factor_2", top / bottom <= 2.0, top / bottom, "largest over smallest ensemble maximum");
  ctx.check("below_10x_baseline", overall <= 10.0 * probe.baseline, overall / probe.baseline,
            fmt::format("largest ratio over single-mode baseline {:.6e}", probe.baseline));
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table{
      {"revival-check",
       {{"modes", "1024"}, {"beta", "1"}, {"profile", "step"}, {"amplitude", "1"}, {"p", "1"}, {"q", "2"}},
       run_revival_check},
      {"quantization-jump",
       {{"modes", "512"}, {"amplitude", "0.1"}, {"dt", "1e-4"}, {"scheme", "etd4"}, {"dealias", "two-thirds"}},
       run_quantization_jump},
      {"irrational-continuity",
       {{"modes", "512"}, {"amplitude", "0.1"}, {"t_end", num(kPi * (std::sqrt(5.0) - 1.0) / 2.0)}},
       run_irrational_continuity},
      {"dimension-window",
       {{"modes", "16384"},
        {"solve_modes", "1024"},
        {"amplitude", "0.1"},
        {"dt", "1e-3"},
        {"scales", "5:12"},
        {"scheme", "etd4"},
        {"dealias", "two-thirds"}},
       run_dimension_window},
      {"smoothing-gain",
       {{"modes", "1024"},
        {"amplitude", "1"},
        {"order", "1.3"},
        {"t_end", "1"},
        {"dt", "1e-3"},
        {"scheme", "etd4"},
        {"dealias", "two-thirds"}},
       run_smoothing_gain},
      {"energy-balance",
       {{"modes", "64"}, {"amplitude", "1"}, {"t_end", "1"}, {"dt", "1e-3"}, {"scheme", "etd4"}, {"dealias", "two-thirds"}},
       run_energy_balance},
      {"trilinear-probe", {{"modes", "64"}, {"samples", "100"}, {"band_divisor", "16"}}, run_trilinear_probe},
  };
  return table;
}

} // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : presets()) out.push_back(p.name);
    return out;
  }();
  return names;
}

RunReport run_experiment(const ExperimentConfig& config) {
  const auto& table = presets();
  const auto it = std::find_if(table.begin(), table.end(), [&](const Preset& p) { return p.name == config.preset; });
  if (it == table.end()) throw ConfigError("unknown preset '" + config.preset + "'");

  Config resolved;
  for (const auto& [k, v] : it->defaults) resolved.set(k, v);
  for (const std::string& key : config.overrides.keys()) {
    if (key == "out_dir") continue;
    const bool applies = std::any_of(it->defaults.begin(), it->defaults.end(), [&](const auto& d) { return d.first == key; });
    if (!applies) throw ConfigError("key '" + key + "' does not apply to preset '" + config.preset + "'");
    resolved.set(key, config.overrides.get(key, ""));
  }

  fs::path out_dir = config.out_dir;
  if (out_dir.empty()) out_dir = config.overrides.get("out_dir", ".");
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error("cannot create output directory " + out_dir.string() + ": " + ec.message());

  RunReport report;
  report.preset = config.preset;
  report.seed = config.seed;
  report.resolved_config = fmt::format("# preset {}\n# seed {}\n", config.preset, config.seed) + resolved.resolved();
  {
    std::ofstream out = open_output(out_dir / "config.resolved");
    out << report.resolved_config;
  }
  report.files.push_back("config.resolved");

  PresetContext ctx{resolved, config.seed, out_dir, report};
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&] {
    report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.files.push_back("report.json");
    std::sort(report.files.begin(), report.files.end());
    std::ofstream out = open_output(out_dir / "report.json");
    out << report.to_json();
  };
  try {
    it->run(ctx);
  } catch (const std::exception& e) {
    report.error = e.what();
    report.checks.push_back({"run", false, NAN, e.what()});
    finish();
    throw;
  }
  finish();
  return report;
}

} // namespace tlle
