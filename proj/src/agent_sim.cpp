#include "lorenzlab/agent_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <tuple>

#include "lorenzlab/error.hpp"
#include "lorenzlab/interpolation.hpp"
#include "lorenzlab/metrics.hpp"
#include "lorenzlab/transforms.hpp"

namespace lorenzlab {

AgentRng::AgentRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::uint64_t AgentRng::below(std::uint64_t n) {
  if (n == 0) throw ValidationError("AgentRng::below: n must be > 0");
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do r = engine_();
  while (r >= limit);
  return r % n;
}

int AgentRng::coin() { return (engine_() >> 63) ? 1 : -1; }

std::pair<double, double> transact(double wi, double wj, double gamma, int eta) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("transact: gamma must lie in (0, 1)");
  if (eta != 1 && eta != -1) throw ValidationError("transact: eta must be +1 or -1");
  if (!(wi > 0.0 && wj > 0.0)) throw ValidationError("transact: wealths must be > 0");
  // The poorer side moves by sqrt(gamma) of itself, so it stays positive; the
  // richer side takes the remainder, which keeps fl(a + b) == fl(wi + wj).
  const double total = wi + wj;
  const bool i_poorer = wi <= wj;
  const double poor = i_poorer ? wi : wj;
  const double gain = i_poorer ? eta : -eta;
  double p = poor + gain * std::sqrt(gamma) * poor;
  double r = total - p;
  // total - p can round onto a tie that the re-sum breaks the other way
  for (int k = 0; r + p != total; ++k) {
    if (k == 64) throw NumericalAbort("transact: cannot split the pair total exactly");
    p = std::nextafter(p, 0.0);
    r = total - p;
  }
  if (!(p > 0.0 && r > 0.0)) throw NumericalAbort("transact: non-positive wealth");
  return i_poorer ? std::pair{p, r} : std::pair{r, p};
}

void AgentRunConfig::validate() const {
  if (agents < 2) throw ValidationError("agents: need at least 2 agents");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("agents: gamma must lie in (0, 1)");
  if (!(time_scale > 0.0)) throw ValidationError("agents: time scale must be > 0");
  if (lorenz_f_count != 0 && lorenz_f_count < 3)
    throw ValidationError("agents: lorenz f_count must be 0 or >= 3");
}

LorenzCurve empirical_lorenz(std::span<const double> wealth, std::size_t f_count) {
  if (wealth.empty()) throw ValidationError("empirical_lorenz: empty sample");
  std::vector<double> w(wealth.begin(), wealth.end());
  std::sort(w.begin(), w.end());
  if (w.front() < 0.0) throw ValidationError("empirical_lorenz: negative wealth");
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  if (!(total > 0.0)) throw ValidationError("empirical_lorenz: total wealth must be > 0");
  std::vector<double> natural(w.size() + 1, 0.0);
  for (std::size_t k = 0; k < w.size(); ++k) natural[k + 1] = natural[k] + w[k] / total;
  natural.back() = 1.0;
  if (f_count == 0) return LorenzCurve(std::move(natural), 0.0);
  std::vector<double> knots(natural.size());
  for (std::size_t k = 0; k < knots.size(); ++k) knots[k] = fgrid_node(k, knots.size());
  std::vector<double> out(f_count);
  for (std::size_t i = 0; i < f_count; ++i) out[i] = interp_linear(knots, natural, fgrid_node(i, f_count));
  out.front() = 0.0;
  out.back() = 1.0;
  return LorenzCurve(std::move(out), 0.0);
}

namespace {

MetricSeries::Record wealth_metrics(std::span<const double> w, double t, double total_initial,
                                    const LorenzCurve& curve) {
  const double n = static_cast<double>(w.size());
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const double mean = total / n;
  double ss = 0.0;
  for (double x : w) ss += (x - mean) * (x - mean);
  return {t,
          gini_pairwise(w),
          hoover_from_lorenz(curve),
          mean,
          std::sqrt(ss / n),
          (total - total_initial) / total_initial,
          curve.convexity_margin()};
}

}  // namespace

AgentRun run_agents(std::vector<double> wealth, const AgentRunConfig& config, std::uint64_t seed,
                    std::uint64_t stream, bool keep_snapshots) {
  config.validate();
  if (wealth.size() != config.agents)
    throw ValidationError("agents: initial wealth has " + std::to_string(wealth.size()) +
                          " entries, expected " + std::to_string(config.agents));
  for (double x : wealth)
    if (!(x > 0.0) || !std::isfinite(x)) throw ValidationError("agents: wealth must be positive");

  AgentRng rng(seed, stream);
  AgentRun run;
  run.total_initial = std::accumulate(wealth.begin(), wealth.end(), 0.0);
  const std::uint64_t n = config.agents;
  const double per_unit = config.time_scale * static_cast<double>(n);

  auto record = [&](std::uint64_t step) {
    const LorenzCurve natural = empirical_lorenz(wealth);
    run.metrics.push(wealth_metrics(wealth, static_cast<double>(step) / per_unit,
                                    run.total_initial, natural));
    run.record_steps.push_back(step);
    if (config.lorenz_f_count > 0) run.curves.push_back(empirical_lorenz(wealth, config.lorenz_f_count)
                                                            .with_time(run.metrics.times.back()));
    if (keep_snapshots) run.snapshots.push_back(wealth);
  };

  record(0);
  for (std::uint64_t step = 1; step <= config.transactions; ++step) {
    const std::uint64_t i = rng.below(n);
    std::uint64_t j = rng.below(n - 1);
    if (j >= i) ++j;
    const int eta = rng.coin();
    std::tie(wealth[i], wealth[j]) = transact(wealth[i], wealth[j], config.gamma, eta);
    const bool due = config.record_every > 0 && step % config.record_every == 0;
    if (due || step == config.transactions) record(step);
  }
  run.total_final = std::accumulate(wealth.begin(), wealth.end(), 0.0);
  return run;
}

std::vector<double> quantile_wealths(const DensityField& density, std::size_t n) {
  if (n < 2) throw ValidationError("quantile_wealths: need n >= 2");
  if (density.grid.domain() != Domain::positive_half_line)
    throw ValidationError("quantile_wealths: density must live on the positive half-line");
  std::vector<double> probs(n);
  for (std::size_t k = 0; k < n; ++k) probs[k] = (static_cast<double>(k) + 0.5) / static_cast<double>(n);
  auto w = quantiles(density, probs);
  const double mean = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(n);
  for (double& x : w) {
    x /= mean;
    if (!(x > 0.0)) throw ValidationError("quantile_wealths: density has mass at zero wealth");
  }
  return w;
}

EnsembleSummary run_ensemble(const std::vector<double>& initial_wealth, const AgentRunConfig& config,
                             std::uint64_t seed, std::size_t replicas) {
  config.validate();
  if (replicas == 0) throw ValidationError("ensemble: need at least one replica");
  std::vector<MetricSeries> series(replicas);
  std::vector<std::string> errors(replicas);
  const auto r_count = static_cast<std::ptrdiff_t>(replicas);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t r = 0; r < r_count; ++r) {
    try {
      series[r] = run_agents(initial_wealth, config, seed, static_cast<std::uint64_t>(r), false).metrics;
    } catch (const std::exception& e) {
      errors[r] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw ValidationError(e);

  EnsembleSummary out;
  out.times = series.front().times;
  const std::size_t m = out.times.size();
  out.mean_gini.assign(m, 0.0);
  out.stderr_gini.assign(m, 0.0);
  out.max_total_drift.assign(m, 0.0);
  const double rn = static_cast<double>(replicas);
  for (std::size_t k = 0; k < m; ++k) {
    double sum = 0.0;
    for (const auto& s : series) {
      sum += s.gini[k];
      out.max_total_drift[k] = std::max(out.max_total_drift[k], std::abs(s.mass_error[k]));
    }
    const double mean = sum / rn;
    double ss = 0.0;
    for (const auto& s : series) ss += (s.gini[k] - mean) * (s.gini[k] - mean);
    out.mean_gini[k] = mean;
    out.stderr_gini[k] = replicas > 1 ? std::sqrt(ss / (rn - 1.0) / rn) : 0.0;
  }
  return out;
}

}  // namespace lorenzlab
