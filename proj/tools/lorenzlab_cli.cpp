// lorenzlab: command-line front end.
//
//   lorenzlab run --config exp.ini [--out DIR] [--seed N] [--format csv|json|both]
//   lorenzlab validate --config exp.ini
//   lorenzlab compare  [--config exp.ini]   (default: heat triangulation)
//   lorenzlab analytic [--config exp.ini] [--set analytic.f=0.5 ...]
//   lorenzlab scale-map [--config exp.ini]
//
// Exit codes: 0 ok, 2 validation error, 3 numerical abort or output failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lorenzlab/config.hpp"
#include "lorenzlab/error.hpp"
#include "lorenzlab/experiment.hpp"

namespace {

using namespace lorenzlab;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitAbort = 3;

// Defaults for the subcommands that can run without a config file.
const char* default_config(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::compare:
      return "schema_version = 1\n"
             "[experiment]\nkind = compare\n"
             "[grid]\nx_min = -2.5\nx_max = 4.5\nnodes = 1024\n"
             "[time]\nt_end = 0.1\noutput_interval = 0.05\n"
             "[coefficients]\ndiffusion = constant\nD = 1\n"
             "[initial]\nkind = gaussian\nmean = 1\nstd = 0.05\n"
             "[lorenz]\nf_count = 513\n";
    case ExperimentKind::analytic:
      return "schema_version = 1\n[experiment]\nkind = analytic\n";
    case ExperimentKind::scale_map:
      return "schema_version = 1\n[experiment]\nkind = scale-map\n";
    default:
      return nullptr;
  }
}

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::string format;
  std::vector<std::string> sets;
  bool quiet = false;
};

void add_common(CLI::App* sub, Options& o, bool config_required) {
  auto* c = sub->add_option("--config", o.config, "Experiment config file");
  if (config_required) c->required();
  sub->add_option("--out", o.out, "Output directory (relative paths honour LORENZLAB_OUTPUT_ROOT)");
  sub->add_option("--seed", o.seed, "Override [experiment] seed");
  sub->add_option("--format", o.format, "Snapshot format")->check(CLI::IsMember({"csv", "json", "both"}));
  sub->add_option("--set", o.sets, "Override a config value: section.key=value");
  sub->add_flag("--quiet", o.quiet, "Print nothing on success");
}

ExperimentConfig build_config(const Options& o, std::optional<ExperimentKind> forced) {
  Overrides ov;
  for (const auto& s : o.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ValidationError("--set expects section.key=value, got '" + s + "'");
    ov.emplace_back(s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.seed) ov.emplace_back("experiment.seed", std::to_string(*o.seed));
  if (!o.format.empty()) ov.emplace_back("output.format", o.format);
  if (forced) ov.emplace_back("experiment.kind", std::string(to_string(*forced)));

  ExperimentConfig cfg;
  if (!o.config.empty()) {
    cfg = load_config(o.config, ov);
  } else {
    const char* text = forced ? default_config(*forced) : nullptr;
    if (!text) throw ValidationError("--config is required for this subcommand");
    cfg = parse_config(text, "<default " + std::string(to_string(*forced)) + ">", ov);
  }
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

int execute(const Options& o, std::optional<ExperimentKind> forced, bool validate_only) {
  try {
    const ExperimentConfig cfg = build_config(o, forced);
    cfg.validate();
    if (validate_only) {
      if (!o.quiet) std::cout << "config ok: " << to_string(cfg.kind) << "\n";
      return kExitOk;
    }
    const auto dir = resolve_output_dir(cfg);
    const auto outcome = run_experiment(cfg, dir);
    if (!o.quiet) {
      std::cout << outcome.summary << "\n";
      std::cout << "wrote " << outcome.files.size() + 1 << " files to " << dir.string() << "\n";
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return kExitAbort;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitAbort;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fokker-Planck and Lorenz-curve dynamics laboratory"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "Run the experiment named in the config");
  add_common(run, o, true);
  auto* val = app.add_subcommand("validate", "Parse and validate a config, run nothing");
  add_common(val, o, true);
  auto* cmp = app.add_subcommand("compare", "Triangulate FPE, Lorenz solver and closed form");
  add_common(cmp, o, false);
  auto* ana = app.add_subcommand("analytic", "Evaluate the closed-form Lorenz curves");
  add_common(ana, o, false);
  auto* smap = app.add_subcommand("scale-map", "Check the heat to quadratic-potential map");
  add_common(smap, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (*run) return execute(o, std::nullopt, false);
  if (*val) return execute(o, std::nullopt, true);
  if (*cmp) return execute(o, ExperimentKind::compare, false);
  if (*ana) return execute(o, ExperimentKind::analytic, false);
  return execute(o, ExperimentKind::scale_map, false);
}
