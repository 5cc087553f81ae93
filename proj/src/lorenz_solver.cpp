#include "lorenzlab/lorenz_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/interpolation.hpp"
#include "lorenzlab/lorenz_ops.hpp"
#include "lorenzlab/metrics.hpp"
#include "lorenzlab/transforms.hpp"

namespace lorenzlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

LorenzCurve make_initial_curve(const CurveInit& init, std::size_t f_count, const Tolerances& tol) {
  if (f_count < 5) throw ValidationError("lorenz: f_count must be >= 5");
  std::vector<double> v(f_count);
  auto f = [f_count](std::size_t i) { return fgrid_node(i, f_count); };
  return std::visit(
      overloaded{
          [&](const LinearCurveInit& l) {
            if (!(l.width > 0.0))
              throw ValidationError(
                  "lorenz: a linear initial curve needs width > 0 (a f alone is a delta and has "
                  "no density)");
            for (std::size_t i = 0; i < f_count; ++i)
              v[i] = (l.a - 0.5 * l.width) * f(i) + 0.5 * l.width * f(i) * f(i);
            return LorenzCurve(std::move(v), 0.0);
          },
          [&](const QuadraticCurveInit&) {
            for (std::size_t i = 0; i < f_count; ++i) v[i] = f(i) * f(i);
            return LorenzCurve(std::move(v), 0.0);
          },
          [&](const GaussianCurveInit& g) {
            return analytic::gaussian_lorenz_curve(f_count, g.mean, g.std, 0.0);
          },
          [&](const TabulatedCurveInit& t) {
            if (t.values.size() < 3) throw ValidationError("lorenz: tabulated curve needs >= 3 values");
            std::vector<double> src_f(t.values.size());
            for (std::size_t i = 0; i < src_f.size(); ++i) src_f[i] = fgrid_node(i, src_f.size());
            for (std::size_t i = 0; i < f_count; ++i) v[i] = interp_linear(src_f, t.values, f(i));
            return LorenzCurve(std::move(v), 0.0);
          },
          [&](const FromDensityInit& d) {
            const auto grid = SpatialGrid::uniform(d.x_min, d.x_max, d.nodes, d.domain);
            return lorenz_from_density(make_initial_density(d.density, grid), f_count, tol);
          }},
      init);
}

double right_boundary_at(const RightBoundary& policy, double t, double initial_value) {
  return std::visit(overloaded{[&](const FixedBoundary& b) { return b.value.value_or(initial_value); },
                               [&](const OUMeanBoundary& b) {
                                 const double decay = std::exp(-b.sigma * t);
                                 return b.a * decay + b.mu * (1.0 - decay);
                               }},
                    policy);
}

std::vector<double> solver_curvature(const LorenzCurve& curve, double floor, std::size_t* floored) {
  const std::size_t n = curve.size();
  std::vector<double> c = lorenz_curvature(curve);
  std::size_t count = 0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(c[i] > floor)) {
      c[i] = floor;
      ++count;
    }
  }
  if (floored) *floored = count;
  return c;
}

double default_curvature_floor(const LorenzCurve& curve) {
  const auto s = lorenz_slopes(curve);
  const double spread = s.back() - s.front();
  return spread > 0.0 ? 1e-8 * spread : 1e-8;
}

namespace {

constexpr double kLorenzCfl = 0.4;

// Linearizing L_t = -D~/L_ff gives an effective diffusivity D~/L_ff^2, so the
// explicit bound is 0.4 df^2 min(L_ff)^2 / max(D~).
double stable_dt_from(const LorenzCurve& curve, std::span<const double> diffusion,
                      std::span<const double> curvature, const CoefficientSpec& coeffs) {
  const std::size_t n = curve.size();
  const double h = curve.spacing();
  double cmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    cmin = std::min(cmin, curvature[i]);
    dmax = std::max(dmax, diffusion[i]);
  }
  double dt = dmax > 0.0 ? kLorenzCfl * h * h * cmin * cmin / dmax
                         : std::numeric_limits<double>::infinity();
  if (const auto* ou = std::get_if<OUDrift>(&coeffs.drift)) dt = std::min(dt, 0.5 / ou->sigma);
  return dt;
}

}  // namespace

double lorenz_stable_dt(const LorenzCurve& curve, const CoefficientSpec& coeffs,
                        const LorenzStepOptions& opts) {
  const auto diffusion = transformed_diffusion(curve, coeffs, opts.kernel);
  const auto curvature = solver_curvature(curve, opts.curvature_floor);
  return stable_dt_from(curve, diffusion, curvature, coeffs);
}

LorenzCurve step_lorenz(const LorenzCurve& curve, const CoefficientSpec& coeffs, double dt,
                        double right_boundary, const LorenzStepOptions& opts) {
  if (!(dt > 0.0)) throw ValidationError("step_lorenz: dt must be > 0");
  if (!(opts.curvature_floor > 0.0)) throw ValidationError("step_lorenz: curvature floor must be > 0");
  const std::size_t n = curve.size();
  if (curve.convexity_margin() < -opts.tol.convex)
    throw ValidationError("step_lorenz: input curve is not convex");

  std::size_t floored = 0;
  const auto curvature = solver_curvature(curve, opts.curvature_floor, &floored);
  if (static_cast<double>(floored) > opts.max_floor_fraction * static_cast<double>(n - 2))
    throw NumericalAbort("step_lorenz: curvature hit the floor at " + std::to_string(floored) +
                         " of " + std::to_string(n - 2) +
                         " nodes; the f-grid does not resolve the curve");
  const auto diffusion = transformed_diffusion(curve, coeffs, opts.kernel);
  const double bound = stable_dt_from(curve, diffusion, curvature, coeffs);
  if (dt > bound * (1.0 + 1e-12))
    throw NumericalAbort("step_lorenz: dt = " + std::to_string(dt) +
                         " exceeds the stability bound " + std::to_string(bound));
  const auto drift = transformed_drift_integral(curve, coeffs);

  std::vector<double> next(n);
  kernels::lorenz_update(curve.values(), diffusion, curvature, drift, dt, next, opts.kernel);
  next.front() = 0.0;
  next.back() = right_boundary;
  LorenzCurve out(std::move(next), curve.time() + dt);
  const double margin = out.convexity_margin();
  if (margin < -opts.tol.convex)
    throw NumericalAbort("step_lorenz: convexity lost after the step (margin " +
                         std::to_string(margin) + ")");
  return out;
}

void LorenzRunConfig::validate() const {
  if (f_count < 5) throw ValidationError("lorenz: f_count must be >= 5");
  coeffs.validate();
  if (!(dt >= 0.0)) throw ValidationError("lorenz: dt must be >= 0");
  if (!(t_end >= t_start)) throw ValidationError("lorenz: t_end must be >= t_start");
  if (!(output_interval >= 0.0)) throw ValidationError("lorenz: output interval must be >= 0");
  if (!(curvature_floor >= 0.0)) throw ValidationError("lorenz: curvature floor must be >= 0");
  if (!(max_floor_fraction >= 0.0 && max_floor_fraction <= 1.0))
    throw ValidationError("lorenz: max floor fraction must lie in [0, 1]");
  if (coeffs.is_yard_sale() && domain != Domain::positive_half_line)
    throw ValidationError("lorenz: yard-sale diffusion needs the positive half-line domain");
}

MetricSeries::Record curve_metrics(const LorenzCurve& curve, Domain domain, const Tolerances& tol) {
  const auto slopes = lorenz_slopes(curve);
  std::vector<double> sq(slopes.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = slopes[i] * slopes[i];
  const double m = curve.right_boundary();
  double second = 0.0;
  {
    const double h = curve.spacing();
    second = 0.5 * (sq.front() + sq.back());
    for (std::size_t i = 1; i + 1 < sq.size(); ++i) second += sq[i];
    second *= h;
  }
  MetricSeries::Record r{curve.time(), kNaN, kNaN, m, std::sqrt(std::max(second - m * m, 0.0)),
                         0.0, curve.convexity_margin()};
  if (domain == Domain::positive_half_line && m > 0.0) {
    const LorenzCurve unit = curve.normalized();
    r.gini = gini_from_lorenz(unit, tol);
    r.hoover = hoover_from_lorenz(unit, tol);
  }
  return r;
}

LorenzRun run_lorenz(const LorenzRunConfig& config) {
  config.validate();
  LorenzRun run;
  LorenzCurve curve = make_initial_curve(config.initial, config.f_count, config.tol)
                          .with_time(config.t_start);
  const double initial_rb = curve.right_boundary();
  LorenzStepOptions opts{config.tol, config.kernel,
                         config.curvature_floor > 0.0 ? config.curvature_floor
                                                      : default_curvature_floor(curve),
                         config.max_floor_fraction};
  require_convex(curve, -config.tol.convex, "lorenz initial curve");

  auto record = [&](const LorenzCurve& c) {
    run.metrics.push(curve_metrics(c, config.domain, config.tol));
    if (config.keep_snapshots) run.snapshots.push_back(c);
  };
  record(curve);
  if (config.t_end == config.t_start) return run;

  const double span = config.t_end - config.t_start;
  const double interval = config.output_interval > 0.0 ? config.output_interval : span;
  std::size_t next_index = 1;
  while (true) {
    const double t_out =
        std::min(config.t_end, config.t_start + interval * static_cast<double>(next_index));
    while (curve.time() < t_out) {
      double dt = lorenz_stable_dt(curve, config.coeffs, opts);
      if (!(dt > 0.0))
        throw NumericalAbort("lorenz: stability bound collapsed to " + std::to_string(dt) +
                             " at t = " + std::to_string(curve.time()) +
                             "; the curve has lost its curvature");
      if (config.dt > 0.0) dt = std::min(dt, config.dt);
      const double remaining = t_out - curve.time();
      const bool last = dt >= remaining;
      if (last)
        dt = remaining;
      else if (dt > 0.5 * remaining)
        dt = 0.5 * remaining;
      const double t_new = last ? t_out : curve.time() + dt;
      curve = step_lorenz(curve, config.coeffs, dt,
                          right_boundary_at(config.right_boundary, t_new, initial_rb), opts);
      if (last) curve = curve.with_time(t_out);
      ++run.steps;
    }
    record(curve);
    if (t_out >= config.t_end) break;
    ++next_index;
  }
  return run;
}

std::vector<double> pde_residual(const LorenzCurve& prev, const LorenzCurve& next, double dt,
                                 const CoefficientSpec& coeffs, Kernel kernel) {
  if (prev.size() != next.size()) throw ValidationError("pde_residual: curve sizes differ");
  if (!(dt > 0.0)) throw ValidationError("pde_residual: dt must be > 0");
  const std::size_t n = prev.size();
  std::vector<double> mid_values(n);
  for (std::size_t i = 0; i < n; ++i) mid_values[i] = 0.5 * (prev[i] + next[i]);
  const LorenzCurve mid(std::move(mid_values), 0.5 * (prev.time() + next.time()));
  const auto diffusion = transformed_diffusion(mid, coeffs, kernel);
  const auto curvature = lorenz_curvature(mid);
  const auto drift = transformed_drift_integral(mid, coeffs);
  std::vector<double> r(n - 2);
  for (std::size_t i = 1; i + 1 < n; ++i)
    r[i - 1] = (next[i] - prev[i]) / dt + diffusion[i] / curvature[i] - drift[i];
  return r;
}

}  // namespace lorenzlab
