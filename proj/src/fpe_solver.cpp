#include "lorenzlab/fpe_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/metrics.hpp"
#include "lorenzlab/transforms.hpp"

namespace lorenzlab {

namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double stable_dt(double dx, std::span<const double> drift, std::span<const double> diffusion) {
  const double dmax = max_abs(diffusion);
  double dt = dmax > 0.0 ? kCflFactor * dx * dx / dmax : std::numeric_limits<double>::infinity();
  // Central advection is stable while dt <= 2 D / Sigma^2 (and dt |Sigma| <= dx).
  const double smax = max_abs(drift);
  if (smax > 0.0) {
    double dmin = std::numeric_limits<double>::infinity();
    for (double d : diffusion) dmin = std::min(dmin, d);
    dt = std::min(dt, std::min(dx / smax, 2.0 * dmin / (smax * smax)));
  }
  return dt;
}

}  // namespace

double fpe_stable_dt(const DensityField& density, const CoefficientSpec& coeffs, Kernel kernel) {
  const auto drift = drift_profile(coeffs, density.grid);
  const auto diffusion = diffusion_profile(coeffs, density, kernel);
  return stable_dt(density.grid.spacing(), drift, diffusion);
}

FpeStepResult step_fpe(const DensityField& density, const CoefficientSpec& coeffs, double dt,
                       const FpeStepOptions& opts) {
  if (!(dt > 0.0)) throw ValidationError("step_fpe: dt must be > 0");
  const double dx = density.grid.spacing();
  const auto drift = drift_profile(coeffs, density.grid);
  const auto diffusion = diffusion_profile(coeffs, density, opts.kernel);
  const double bound = stable_dt(dx, drift, diffusion);
  if (dt > bound * (1.0 + 1e-12))
    throw NumericalAbort("step_fpe: dt = " + std::to_string(dt) +
                         " exceeds the stability bound " + std::to_string(bound) +
                         "; reduce the time step");

  DensityField next{density.grid, std::vector<double>(density.values.size()), density.time + dt};
  kernels::fpe_update(density.values, drift, diffusion, dx, dt, next.values, opts.kernel);

  const double peak_before = max_abs(density.values);
  const double peak_after = max_abs(next.values);
  if (!std::isfinite(peak_after) || peak_after > opts.growth_limit * peak_before)
    throw NumericalAbort("step_fpe: density grew from " + std::to_string(peak_before) + " to " +
                         std::to_string(peak_after) + " in one step; dt is unstable");

  double clipped = 0.0;
  for (std::size_t i = 0; i < next.values.size(); ++i) {
    double& v = next.values[i];
    if (v < 0.0) {
      if (v < -opts.tol.negative * std::max(peak_before, 1.0))
        throw NumericalAbort("step_fpe: density went negative (" + std::to_string(v) +
                             ") at node " + std::to_string(i) +
                             "; the grid does not resolve the solution");
      clipped -= v;
      v = 0.0;
    }
  }
  const double mass = next.mass();
  const double mass_error = mass - density.mass();
  for (double& v : next.values) v /= mass;
  return {std::move(next), mass_error, clipped};
}

SpatialGrid FpeRunConfig::grid() const { return SpatialGrid::uniform(x_min, x_max, nodes, domain); }

void FpeRunConfig::validate() const {
  if (nodes < 3) throw ValidationError("fpe: grid needs at least 3 nodes");
  if (!(x_max > x_min)) throw ValidationError("fpe: x_max must exceed x_min");
  if (domain == Domain::positive_half_line && !(x_min > 0.0))
    throw ValidationError("fpe: positive half-line grids must start above 0");
  coeffs.validate();
  if (coeffs.is_yard_sale() && domain != Domain::positive_half_line)
    throw ValidationError("fpe: yard-sale diffusion needs the positive half-line domain");
  if (!(dt >= 0.0)) throw ValidationError("fpe: dt must be >= 0");
  if (!(t_end >= 0.0)) throw ValidationError("fpe: t_end must be >= 0");
  if (!(output_interval >= 0.0)) throw ValidationError("fpe: output interval must be >= 0");
  if (metric_f_count < 5) throw ValidationError("fpe: metric f-count must be >= 5");
  const DensityField rho0 = make_initial_density(initial, grid());
  lorenzlab::validate(rho0, tol, {.check_mass = true, .check_tails = true});
  if (dt > 0.0) {
    const double bound = fpe_stable_dt(rho0, coeffs, kernel);
    if (dt > bound)
      throw ValidationError("fpe: dt = " + std::to_string(dt) + " exceeds the stability bound " +
                            std::to_string(bound) + " for the initial state");
  }
}

MetricSeries::Record density_metrics(const DensityField& density, double mass_error,
                                     std::size_t f_count, const Tolerances& tol, Kernel kernel) {
  MetricSeries::Record r{density.time, kNaN, kNaN, density.mean(), std::sqrt(std::max(density.variance(), 0.0)),
                         mass_error, kNaN};
  if (density.grid.domain() == Domain::positive_half_line) {
    const DensityField unit = normalize_wealth(density);
    r.gini = gini_from_density(unit, tol, kernel);
    const LorenzCurve curve = lorenz_from_density(density, f_count, tol).normalized();
    r.hoover = hoover_from_lorenz(curve, tol);
    r.convexity_margin = curve.convexity_margin();
  }
  return r;
}

FpeRun run_fpe(const FpeRunConfig& config) {
  config.validate();
  FpeRun run;
  DensityField rho = make_initial_density(config.initial, config.grid());
  const FpeStepOptions opts{config.tol, config.kernel};

  auto record = [&](const DensityField& d, double mass_error) {
    run.metrics.push(density_metrics(d, mass_error, config.metric_f_count, config.tol, config.kernel));
    if (config.keep_snapshots) run.snapshots.push_back(d);
  };
  record(rho, 0.0);
  if (config.t_end == 0.0) return run;

  const double interval = config.output_interval > 0.0 ? config.output_interval : config.t_end;
  std::size_t next_index = 1;
  double mass_error = 0.0;
  while (true) {
    const double t_out = std::min(config.t_end, interval * static_cast<double>(next_index));
    while (rho.time < t_out) {
      double dt = fpe_stable_dt(rho, config.coeffs, config.kernel);
      if (config.dt > 0.0) dt = std::min(dt, config.dt);
      const double remaining = t_out - rho.time;
      const bool last = dt >= remaining;
      if (last)
        dt = remaining;
      else if (dt > 0.5 * remaining)
        dt = 0.5 * remaining;
      FpeStepResult step = step_fpe(rho, config.coeffs, dt, opts);
      mass_error = step.mass_error;
      rho = std::move(step.density);
      if (last) rho.time = t_out;
      ++run.steps;
    }
    record(rho, mass_error);
    if (t_out >= config.t_end) break;
    ++next_index;
  }
  return run;
}

}  // namespace lorenzlab
