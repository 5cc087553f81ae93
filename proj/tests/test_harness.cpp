#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lorenzlab/config.hpp"
#include "lorenzlab/error.hpp"
#include "lorenzlab/experiment.hpp"
#include "lorenzlab/io.hpp"

using namespace lorenzlab;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lorenzlab_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Every regular file under `dir`, relative path -> bytes.
std::map<std::string, std::string> tree(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out[fs::relative(e.path(), dir).string()] = slurp(e.path());
  return out;
}

const char* kLorenzConfig = R"(schema_version = 1
[experiment]
kind = lorenz
seed = 3
[time]
t_end = 0.5
output_interval = 0.25
[coefficients]
diffusion = yard_sale
gamma = 0.1
[grid]
domain = positive
[lorenz]
f_count = 65
initial = quadratic
)";

}  // namespace

TEST_CASE("shortest round-trip doubles") {
  CHECK(io::format_double(0.1) == "0.1");
  CHECK(io::format_double(1.0) == "1");
  CHECK(io::format_double(-2.5e-300) == "-2.5e-300");
  CHECK(io::format_double(NAN) == "nan");
  for (double v : {1.0 / 3.0, 2.0 / 7.0, 1e-17, 6.02214076e23})
    CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("config parsing and defaults") {
  const auto c = parse_config("schema_version = 1\n[experiment]\nkind = analytic\n");
  CHECK(c.kind == ExperimentKind::analytic);
  CHECK(c.analytic.f == std::vector<double>{0.5});
  CHECK(c.tol.mass == 1e-6);

  const auto l = parse_config(kLorenzConfig);
  CHECK(l.lorenz.f_count == 65);
  CHECK(l.coeffs.is_yard_sale());
  CHECK(l.grid.domain == Domain::positive_half_line);
  CHECK_NOTHROW(l.validate());
}

TEST_CASE("config errors carry the line") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text, "exp.ini");
    } catch (const ValidationError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("[experiment]\nkind = fpe\n").find("schema_version") != std::string::npos);
  CHECK(message("schema_version = 2\n").find("exp.ini:1:") == 0);
  CHECK(message("schema_version = 1\n[grid]\nnodes = 10\nnodez = 4\n").find("exp.ini:4:") == 0);
  CHECK(message("schema_version = 1\n[grid]\nx_min = abc\n").find("exp.ini:3:") == 0);
  CHECK(message("schema_version = 1\n\n[gird]\n").find("exp.ini:3:") == 0);
  CHECK(message("schema_version = 1\n[experiment]\nkind = banana\n").find("exp.ini:3:") == 0);
  CHECK(message("schema_version = 1\n[grid\n").find("exp.ini:2:") == 0);
  CHECK_THROWS_AS(load_config("/nonexistent/exp.ini"), ValidationError);
}

TEST_CASE("overrides and canonical echo") {
  const auto c = parse_config(kLorenzConfig, "x", {{"lorenz.f_count", "33"}, {"experiment.seed", "9"}});
  CHECK(c.lorenz.f_count == 33);
  CHECK(c.seed == 9);
  const std::string echo = to_ini(c);
  const auto again = parse_config(echo);
  CHECK(to_ini(again) == echo);
  CHECK_THROWS_AS(parse_config(kLorenzConfig, "x", {{"nodot", "1"}}), ValidationError);
}

TEST_CASE("emit_plot_data writes snapshots, metrics and an index") {
  const auto dir = scratch("emit");
  std::vector<LorenzCurve> curves;
  MetricSeries m;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> v(5);
    for (std::size_t i = 0; i < 5; ++i) v[i] = std::pow(fgrid_node(i, 5), 2 + k);
    curves.emplace_back(v, 0.5 * k);
    m.push({0.5 * k, 0, 0, 1, 0, 0, 0});
  }
  const auto entries = io::emit_plot_data(std::span<const LorenzCurve>(curves), m, dir, io::Format::csv);
  CHECK(entries.size() == 4);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
  CHECK(files == 5);
  CHECK(fs::exists(dir / "curve_0002.csv"));
  const std::string metrics = slurp(dir / "metrics.csv");
  CHECK(metrics.substr(0, metrics.find('\n')) == "time,gini,hoover,mean,std,mass_error,convexity_margin");
  const auto idx = nlohmann::json::parse(slurp(dir / "index.json"));
  CHECK(idx["files"].size() == 4);
  CHECK(idx["files"][1]["time"] == 0.5);

  io::emit_plot_data(std::span<const LorenzCurve>(curves), m, dir / "b", io::Format::both);
  CHECK(fs::exists(dir / "b" / "curve_0001.json"));
  CHECK(fs::exists(dir / "b" / "curve_0001.csv"));
}

TEST_CASE("unwritable output is an OutputError") {
  const auto dir = scratch("blocked");
  io::write_text(dir / "file", "x");
  CHECK_THROWS_AS(io::write_text(dir / "file" / "sub" / "a.csv", "y"), OutputError);
}

TEST_CASE("runs are byte-identical and replayable from the manifest") {
  const auto cfg = parse_config(kLorenzConfig);
  const auto a = scratch("det_a"), b = scratch("det_b"), r = scratch("det_replay");
  run_experiment(cfg, a);
  run_experiment(cfg, b);
  CHECK(tree(a) == tree(b));

  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  const auto replay = parse_config(manifest["config"].get<std::string>(), "manifest");
  run_experiment(replay, r);
  CHECK(tree(a) == tree(r));
}

TEST_CASE("agent runs are deterministic given the seed") {
  auto cfg = parse_config(R"(schema_version = 1
[experiment]
kind = agents
seed = 17
[grid]
x_min = 0.001
x_max = 4
nodes = 401
domain = positive
[coefficients]
diffusion = yard_sale
gamma = 0.2
[initial]
kind = gaussian
mean = 1
std = 0.15
[agents]
agents = 64
transactions = 5000
record_every = 1000
replicas = 3
)");
  const auto a = scratch("ag_a"), b = scratch("ag_b");
  run_experiment(cfg, a);
  run_experiment(cfg, b);
  CHECK(tree(a) == tree(b));
  CHECK(fs::exists(a / "ensemble.csv"));
  cfg.seed = 18;
  const auto c = scratch("ag_c");
  run_experiment(cfg, c);
  CHECK(slurp(a / "metrics.csv") != slurp(c / "metrics.csv"));
}

TEST_CASE("empty time range echoes the initial state") {
  auto cfg = parse_config(kLorenzConfig, "x", {{"time.t_end", "0"}});
  const auto dir = scratch("empty");
  const auto out = run_experiment(cfg, dir);
  CHECK(fs::exists(dir / "curve_0000.csv"));
  CHECK_FALSE(fs::exists(dir / "curve_0001.csv"));
}

TEST_CASE("comparison verdicts follow the distances") {
  std::vector<double> v(9), w(9);
  for (std::size_t i = 0; i < 9; ++i) {
    v[i] = std::pow(fgrid_node(i, 9), 2);
    w[i] = v[i] + (i > 0 && i < 8 ? 0.02 : 0.0);
  }
  const std::vector<std::vector<LorenzCurve>> curves{{LorenzCurve(v, 0)}, {LorenzCurve(w, 0)}};
  const auto loose = compare_curves({"a", "b"}, curves, 0.05, 0.0, 1.0, true);
  const auto tight = compare_curves({"a", "b"}, curves, 0.01, 0.0, 1.0, true);
  CHECK(loose.pairs[0].sup[0] == doctest::Approx(0.02));
  CHECK(loose.all_pass());
  CHECK_FALSE(tight.all_pass());
  CHECK(loose.gini[0][0] == doctest::Approx(1.0 / 3.0).epsilon(2e-2));
}

#ifdef LORENZLAB_CLI_PATH
namespace {
int cli(const std::string& args) {
  const std::string cmd = std::string(LORENZLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}
}  // namespace

TEST_CASE("CLI exit codes") {
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  CHECK(cli("analytic --quiet --out " + (dir / "an").string()) == 0);
  CHECK(slurp(dir / "an" / "values.csv").find("-0.5641895835477") != std::string::npos);

  io::write_text(dir / "bad.ini", "schema_version = 1\n[grid]\nnodes = -4\n");
  CHECK(cli("validate --config " + (dir / "bad.ini").string()) == 2);
  CHECK(cli("run --config " + (dir / "missing.ini").string()) == 2);
  CHECK(cli("run") == 2);

  io::write_text(dir / "ok.ini", kLorenzConfig);
  CHECK(cli("validate --config " + (dir / "ok.ini").string()) == 0);
  io::write_text(dir / "blocker", "x");
  CHECK(cli("run --config " + (dir / "ok.ini").string() + " --out " + (dir / "blocker" / "o").string()) == 3);

  // A straight initial curve has no resolvable curvature: numerical abort.
  io::write_text(dir / "flat.ini", std::string(kLorenzConfig) + "values = 0, 0.5, 1\n");
  CHECK(cli("run --config " + (dir / "flat.ini").string() + " --set lorenz.initial=tabulated --out " +
            (dir / "flat").string()) == 3);

  // Output root override applies to relative directories.
  const std::string env = "LORENZLAB_OUTPUT_ROOT=" + dir.string() + " ";
  const std::string cmd = env + LORENZLAB_CLI_PATH + " scale-map --quiet --out rooted >/dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
  CHECK(fs::exists(dir / "rooted" / "residual.csv"));
}
#endif
