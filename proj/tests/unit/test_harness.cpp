#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tlle/error.hpp"
#include "tlle/harness.hpp"
#include "tlle/profiles.hpp"

using namespace tlle;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tlle_harness_" + name);
  fs::remove_all(dir);
  return dir;
}

} // namespace

TEST_CASE("config parsing accepts sections, bare keys and comments") {
  const Config c = Config::parse("modes = 64  # grid\n[solver]\ndt=0.01\n\n[model]\nbeta = 2\n");
  CHECK(c.get_size("modes", 0) == 64);
  CHECK(c.get_double("dt", 0.0) == 0.01);
  CHECK(c.get_double("beta", 0.0) == 2.0);
  CHECK(c.get("profile", "step") == "step");
  CHECK(c.resolved() == "[model]\nbeta = 2\nmodes = 64\n\n[solver]\ndt = 0.01\n");
  CHECK(Config::parse(c.resolved()).resolved() == c.resolved());
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS(Config::parse("colour = blue\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[model]\ndt = 0.1\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[physics]\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[model\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("modes 64\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("modes = 64\nmodes = 32\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("modes =\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("modes = 6x4\n").get_size("modes", 0), ConfigError);
  CHECK_THROWS_AS(Config::parse("modes = 6.5\n").get_size("modes", 0), ConfigError);
  CHECK_THROWS_AS(Config::parse("dt = fast\n").get_double("dt", 0.0), ConfigError);
  CHECK_THROWS_AS(Config::load("/nonexistent/tlle.cfg"), ConfigError);
  Config c;
  CHECK_THROWS_AS(c.set_assignment("modes"), ConfigError);
}

TEST_CASE("simulation config validates and round trips") {
  const SimulationConfig s = SimulationConfig::from(Config::parse("modes = 32\nscheme = strang2\ndealias = none\nt_end = 0.5\n"));
  CHECK(s.modes == 32);
  CHECK(s.options.scheme == Scheme::Strang2);
  CHECK(s.options.dealias == Dealias::None);
  const SimulationConfig back = SimulationConfig::from(s.to_config());
  CHECK(back.to_config().resolved() == s.to_config().resolved());
  CHECK_THROWS_AS(SimulationConfig::from(Config::parse("dt = -1\n")), ConfigError);
  CHECK_THROWS_AS(SimulationConfig::from(Config::parse("stride = 0\n")), ConfigError);
  CHECK_THROWS_AS(SimulationConfig::from(Config::parse("scheme = euler\n")), ConfigError);
}

TEST_CASE("solution CSV round trips through the dimension reader") {
  const fs::path dir = fresh_dir("csv");
  fs::create_directories(dir);
  SimulationConfig s;
  s.modes = 16;
  s.t_end = 0.1;
  s.dt = 0.01;
  s.stride = 5;
  const Trajectory traj = run_simulation(s);
  write_solution_csv(dir / "solution.csv", traj);
  const GraphSamples last = read_solution_csv(dir / "solution.csv", "im");
  CHECK(last.time == doctest::Approx(0.1));
  REQUIRE(last.xs.size() == 16);
  const std::vector<cplx> u = from_spectral(traj.fields.back());
  for (std::size_t j = 0; j < 16; ++j) CHECK(last.ys[j] == u[j].imag());
  const GraphSamples first = read_solution_csv(dir / "solution.csv", "re", 0.01);
  CHECK(first.time == 0.0);
  CHECK_THROWS_AS(read_solution_csv(dir / "solution.csv", "abs"), ConfigError);
  CHECK_THROWS_AS(read_solution_csv(dir / "missing.csv", "re"), Error);

  write_energy_csv(dir / "energy.csv", traj);
  const std::string energy = slurp(dir / "energy.csv");
  CHECK(energy.rfind("t,l2sq,residual\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("scale ranges parse as a:b") {
  const ScaleRange r = parse_scale_range("5:12");
  CHECK(r.coarse == 5);
  CHECK(r.fine == 12);
  CHECK_THROWS_AS(parse_scale_range("5-12"), ConfigError);
  CHECK_THROWS_AS(parse_scale_range("12:5"), ConfigError);
  CHECK_THROWS_AS(parse_scale_range("a:3"), ConfigError);
}

TEST_CASE("presets reject unknown names and inapplicable keys") {
  CHECK(preset_names().size() == 7);
  ExperimentConfig e;
  e.preset = "no-such-preset";
  e.out_dir = fresh_dir("unknown");
  CHECK_THROWS_AS(run_experiment(e), ConfigError);
  e.preset = "energy-balance";
  e.overrides.set("samples", "10");
  CHECK_THROWS_AS(run_experiment(e), ConfigError);
}

TEST_CASE("preset runs are byte-identical and report their checks") {
  ExperimentConfig e;
  e.preset = "energy-balance";
  e.overrides = Config::parse("modes = 16\nt_end = 0.5\ndt = 4e-3\n");
  e.seed = 7;
  const fs::path a = fresh_dir("det_a"), b = fresh_dir("det_b");
  e.out_dir = a;
  const RunReport ra = run_experiment(e);
  e.out_dir = b;
  run_experiment(e);
  for (const char* f : {"config.resolved", "energy_convergence.csv"}) CHECK(slurp(a / f) == slurp(b / f));
  CHECK(ra.checks.size() == 1);
  const auto json = nlohmann::json::parse(slurp(a / "report.json"));
  CHECK(json["preset"] == "energy-balance");
  CHECK(json["seed"] == 7);
  CHECK(json["checks"].size() == 1);
  CHECK(json["passed"] == ra.passed());
  CHECK(slurp(a / "config.resolved").find("dt = 4e-3") != std::string::npos);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("trilinear preset output depends only on the seed") {
  ExperimentConfig e;
  e.preset = "trilinear-probe";
  e.overrides = Config::parse("modes = 16\nsamples = 3\nband_divisor = 4\n");
  e.seed = 3;
  const fs::path a = fresh_dir("tri_a"), b = fresh_dir("tri_b");
  e.out_dir = a;
  run_experiment(e);
  e.out_dir = b;
  run_experiment(e);
  CHECK(slurp(a / "trilinear.csv") == slurp(b / "trilinear.csv"));
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("a failing run still leaves a report behind") {
  ExperimentConfig e;
  e.preset = "revival-check";
  e.overrides = Config::parse("modes = 64\nq = 0\n");
  e.out_dir = fresh_dir("fail");
  CHECK_THROWS_AS(run_experiment(e), UnsupportedParameters);
  const auto json = nlohmann::json::parse(slurp(e.out_dir / "report.json"));
  CHECK(json["passed"] == false);
  CHECK(json.contains("error"));
  CHECK(fs::exists(e.out_dir / "config.resolved"));
  fs::remove_all(e.out_dir);
}
