#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "lorenzlab/config.hpp"

namespace lorenzlab {

/// Distances between two curve sources at each report time, on the band
/// f in [f_lo, f_hi].
struct PairDistance {
  std::string a, b;
  std::vector<double> sup;
  std::vector<double> l1;
  std::vector<bool> pass;  // sup <= tolerance
};

struct ComparisonReport {
  std::vector<double> times;
  std::vector<std::string> sources;
  std::vector<std::vector<double>> gini;  // [source][time]; NaN off the positive domain
  std::vector<PairDistance> pairs;
  double tolerance = 0.0;
  double f_lo = 0.0;
  double f_hi = 1.0;

  bool all_pass() const;
};

/// Every pair of sources; curves[k][t] is source k at times[t]. Verdicts
/// depend only on the distances and `tolerance`.
ComparisonReport compare_curves(const std::vector<std::string>& sources,
                                const std::vector<std::vector<LorenzCurve>>& curves,
                                double tolerance, double f_lo, double f_hi, bool positive);

std::string report_json(const ComparisonReport& report);
std::string report_csv(const ComparisonReport& report);  // time,a,b,sup,l1,pass

/// Closed-form curves for the configured physics, when one exists
/// (constant D with no drift or OU drift, Gaussian initial data with std > 0).
std::optional<std::vector<LorenzCurve>> analytic_oracle(const ExperimentConfig& config,
                                                        const std::vector<double>& times,
                                                        std::size_t f_count);

struct Triangulation {
  FpeRun fpe;
  LorenzRun lorenz;
  std::vector<LorenzCurve> fpe_curves;  // lorenz_from_density of each FPE snapshot
  std::optional<std::vector<LorenzCurve>> analytic;
  ComparisonReport report;
};

/// Evolve the density and transform, evolve the Lorenz curve from the
/// transformed initial density, and compare both (and the oracle if any).
Triangulation run_triangulation(const ExperimentConfig& config);

struct ScaleMapResult {
  std::vector<double> times;
  std::vector<double> s;
  std::vector<double> residual_sup;
  std::vector<LorenzCurve> scaled;
  double tolerance = 0.0;
  bool pass() const;
};

/// Maps the heat closed form to the quadratic-potential side and measures
/// the residual of J_s + J = -D/J_hh by a centred difference in s.
ScaleMapResult run_scale_map(const ScaleMapSection& section);

/// Sup norm of v over the nodes of an n-node f-grid that lie in [lo, hi];
/// `offset` is the f-index of v[0].
double band_sup(std::span<const double> v, std::size_t n, std::size_t offset, double lo, double hi);

struct ExperimentOutcome {
  std::vector<std::string> files;  // relative to the output dir
  std::string summary;             // one-line human summary
};

/// Runs `config.kind`, writes outputs plus manifest.json into `dir`.
/// ValidationError / NumericalAbort / OutputError propagate.
ExperimentOutcome run_experiment(const ExperimentConfig& config, const std::filesystem::path& dir);

}  // namespace lorenzlab
