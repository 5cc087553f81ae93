#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "lorenzlab/fields.hpp"

namespace lorenzlab {

/// Stream generator for one replica: mt19937_64 seeded through seed_seq from
/// (seed, stream). Draws are consumed in a fixed order: first index, second
/// index, coin.
class AgentRng {
 public:
  AgentRng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform integer in [0, n) by rejection on the raw 64-bit output, so the
  /// sequence does not depend on the standard library's distributions.
  std::uint64_t below(std::uint64_t n);
  /// +1 or -1 with equal probability.
  int coin();

 private:
  std::mt19937_64 engine_;
};

/// Yard-sale exchange: Delta = sqrt(gamma) min(w_i, w_j);
/// returns (w_i + eta Delta, w_j - eta Delta) up to rounding of the richer
/// side, chosen so the floating-point pair sum is unchanged.
std::pair<double, double> transact(double wi, double wj, double gamma, int eta);

struct AgentPopulation {
  std::vector<double> wealth;
  double gamma = 0.05;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;  // transactions performed
};

struct AgentRunConfig {
  std::size_t agents = 1000;
  double gamma = 0.05;
  std::uint64_t transactions = 0;
  std::uint64_t record_every = 0;  // 0 = only start and end
  std::size_t lorenz_f_count = 0;  // >0: also keep empirical Lorenz curves
  /// Transactions per agent per unit of mean-field time; the kinetic limit
  /// gives 1/2 (each transaction moves two agents).
  double time_scale = 0.5;

  void validate() const;
};

struct AgentRun {
  std::vector<std::vector<double>> snapshots;  // wealth at each record
  std::vector<std::uint64_t> record_steps;
  std::vector<LorenzCurve> curves;
  MetricSeries metrics;                        // times in mean-field units
  double total_initial;
  double total_final;
};

/// Deterministic given (initial wealth, seed, stream).
AgentRun run_agents(std::vector<double> initial_wealth, const AgentRunConfig& config,
                    std::uint64_t seed, std::uint64_t stream = 0, bool keep_snapshots = true);

/// Wealth vector at the mid-quantiles of a density, rescaled to mean 1.
std::vector<double> quantile_wealths(const DensityField& density, std::size_t n);

/// Sorted partial sums normalized by the total, piecewise-linear in f and
/// sampled on `f_count` nodes (0 = the natural k/N nodes).
LorenzCurve empirical_lorenz(std::span<const double> wealth, std::size_t f_count = 0);

struct EnsembleSummary {
  std::vector<double> times;
  std::vector<double> mean_gini;
  std::vector<double> stderr_gini;
  std::vector<double> max_total_drift;  // per record, max over replicas
};

/// Independent replicas (one stream each), run concurrently; aggregation in
/// replica order.
EnsembleSummary run_ensemble(const std::vector<double>& initial_wealth, const AgentRunConfig& config,
                             std::uint64_t seed, std::size_t replicas);

}  // namespace lorenzlab
