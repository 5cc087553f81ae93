#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lorenzlab/agent_sim.hpp"
#include "lorenzlab/fpe_solver.hpp"
#include "lorenzlab/io.hpp"
#include "lorenzlab/lorenz_solver.hpp"

namespace lorenzlab {

inline constexpr int kSchemaVersion = 1;

enum class ExperimentKind { fpe, lorenz, agents, analytic, compare, scale_map };
std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(std::string_view s);

enum class CurveInitKind { from_density, linear, quadratic, gaussian, tabulated };
enum class BoundaryKind { fixed, ou_mean };

struct LorenzSection {
  std::size_t f_count = 513;
  CurveInitKind initial = CurveInitKind::from_density;
  double a = 0.0;        // linear curve slope
  double width = 1e-2;   // linear curve bump width
  double mean = 0.0;     // gaussian curve
  double std = 1.0;
  std::vector<double> values;  // tabulated curve
  BoundaryKind right_boundary = BoundaryKind::fixed;
  bool has_right_value = false;
  double right_value = 0.0;
  double curvature_floor = 0.0;
  double max_floor_fraction = 0.05;
};

struct AgentsSection {
  std::size_t agents = 1000;
  std::uint64_t transactions = 100000;
  std::uint64_t record_every = 0;
  double time_scale = 0.5;
  std::size_t replicas = 1;
  std::size_t lorenz_f_count = 0;
};

enum class AnalyticSolution { heat, ou };

struct AnalyticSection {
  AnalyticSolution solution = AnalyticSolution::heat;
  std::vector<double> f{0.5};
  std::vector<double> times{1.0};
  double D = 1.0;
  double a = 0.0;
  double s0 = 0.0;
  double sigma = 1.0;
  double mu = 0.0;
  std::size_t f_count = 513;
};

struct CompareSection {
  double sup_tol = 1e-2;
  double f_lo = 0.05;
  double f_hi = 0.95;
};

struct ScaleMapSection {
  std::vector<double> times{0.1, 1.0};
  double D = 1.0;
  double a = 1.0;
  std::size_t f_count = 513;
  double ds = 1e-4;
  double tol = 1e-2;
  double f_lo = 0.05;
  double f_hi = 0.95;
};

struct GridSection {
  double x_min = -8.0;
  double x_max = 8.0;
  std::size_t nodes = 512;
  Domain domain = Domain::real_line;
};

struct TimeSection {
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 0.0;
  double output_interval = 0.0;
};

/// Everything one run needs. Loaded from a sectioned key-value file; the
/// canonical echo (`to_ini`) reproduces the run exactly.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  ExperimentKind kind = ExperimentKind::fpe;
  std::uint64_t seed = 1;
  Kernel kernel = Kernel::scan;
  GridSection grid;
  TimeSection time;
  CoefficientSpec coeffs;
  InitialCondition initial = GaussianInit{};
  LorenzSection lorenz;
  AgentsSection agents;
  AnalyticSection analytic;
  CompareSection compare;
  ScaleMapSection scale_map;
  Tolerances tol;
  std::string output_dir;  // not echoed; runs are relocatable
  io::Format format = io::Format::csv;

  FpeRunConfig fpe_config() const;
  /// Right-boundary policies that need the initial mean take it from the
  /// initial curve.
  LorenzRunConfig lorenz_config() const;
  AgentRunConfig agent_config() const;

  /// Module-level validation for the selected kind.
  void validate() const;
};

/// `section.key=value` overrides applied on top of the file.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parse config text. `source` names the origin in messages; errors are
/// ValidationError with "source:line: ..." when a line is known.
ExperimentConfig parse_config(std::string_view text, std::string_view source = "<config>",
                              const Overrides& overrides = {});
ExperimentConfig load_config(const std::filesystem::path& path, const Overrides& overrides = {});

/// Canonical key-value text covering every field (except the output dir).
std::string to_ini(const ExperimentConfig& config);

/// Relative dirs are placed under $LORENZLAB_OUTPUT_ROOT when it is set.
std::filesystem::path resolve_output_dir(const ExperimentConfig& config);

}  // namespace lorenzlab
