#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "lorenzlab/analytic.hpp"
#include "lorenzlab/coefficients.hpp"
#include "lorenzlab/fields.hpp"
#include "lorenzlab/initial.hpp"
#include "lorenzlab/kernels.hpp"

namespace lorenzlab {

/// Narrow uniform bump of the given width centred at a:
/// L = (a - width/2) f + (width/2) f^2. width -> 0 is the delta curve a f.
struct LinearCurveInit {
  double a = 0.0;
  double width = 1e-2;
};

/// L = f^2 (uniform wealth on [0, 2]).
struct QuadraticCurveInit {};

/// Closed-form Gaussian curve.
struct GaussianCurveInit {
  double mean = 0.0;
  double std = 1.0;
};

struct TabulatedCurveInit {
  std::vector<double> values;  // resampled linearly onto the solver grid
};

/// Build a density on a grid, then transform.
struct FromDensityInit {
  InitialCondition density = GaussianInit{};
  double x_min = -5.0;
  double x_max = 5.0;
  std::size_t nodes = 1024;
  Domain domain = Domain::real_line;
};

using CurveInit = std::variant<LinearCurveInit, QuadraticCurveInit, GaussianCurveInit,
                               TabulatedCurveInit, FromDensityInit>;

LorenzCurve make_initial_curve(const CurveInit& init, std::size_t f_count,
                               const Tolerances& tol = {});

/// Right boundary L(1, t).
struct FixedBoundary {
  std::optional<double> value;  // unset: keep the initial curve's value
};
/// Prescribed OU mean a e^{-sigma t} + mu (1 - e^{-sigma t}).
struct OUMeanBoundary {
  double a = 0.0;
  double mu = 0.0;
  double sigma = 1.0;
};
using RightBoundary = std::variant<FixedBoundary, OUMeanBoundary>;

double right_boundary_at(const RightBoundary& policy, double t, double initial_value);

struct LorenzStepOptions {
  Tolerances tol{};
  Kernel kernel = Kernel::scan;
  double curvature_floor = 1e-8;     // eps_ff
  double max_floor_fraction = 0.05;  // abort when more nodes than this hit eps_ff
};

/// Largest stable dt: 0.4 df^2 min(L_ff)^2 / max(D~), further limited by the
/// drift relaxation rate.
double lorenz_stable_dt(const LorenzCurve& curve, const CoefficientSpec& coeffs,
                        const LorenzStepOptions& opts = {});

/// One explicit Euler step of L_t = -D~/L_ff + int_0^f Sigma~ dg.
/// L(0) stays 0 and L(1) is set to `right_boundary`.
LorenzCurve step_lorenz(const LorenzCurve& curve, const CoefficientSpec& coeffs, double dt,
                        double right_boundary, const LorenzStepOptions& opts = {});

/// Curvature the solver divides by: central second differences floored at
/// `floor`. Returns the number of floored interior nodes through
/// `floored`.
std::vector<double> solver_curvature(const LorenzCurve& curve, double floor,
                                     std::size_t* floored = nullptr);

/// 1e-8 times the spread of the curve's slopes (1e-8 for a straight curve).
double default_curvature_floor(const LorenzCurve& curve);

struct LorenzRunConfig {
  std::size_t f_count = 513;
  CurveInit initial = GaussianCurveInit{};
  CoefficientSpec coeffs{};
  RightBoundary right_boundary = FixedBoundary{};
  Domain domain = Domain::real_line;
  double dt = 0.0;  // largest step; 0 = stability bound only
  double t_start = 0.0;
  double t_end = 1.0;
  double output_interval = 0.0;
  bool keep_snapshots = true;
  double curvature_floor = 0.0;  // 0 = default_curvature_floor(initial)
  double max_floor_fraction = 0.05;
  Tolerances tol{};
  Kernel kernel = Kernel::scan;

  void validate() const;
};

struct LorenzRun {
  std::vector<LorenzCurve> snapshots;
  MetricSeries metrics;
  std::size_t steps = 0;
};

LorenzRun run_lorenz(const LorenzRunConfig& config);

MetricSeries::Record curve_metrics(const LorenzCurve& curve, Domain domain,
                                   const Tolerances& tol = {});

/// (L_next - L_prev)/dt + D~/L_ff - int Sigma~ at the interior nodes, with
/// the coefficients evaluated on the midpoint curve.
std::vector<double> pde_residual(const LorenzCurve& prev, const LorenzCurve& next, double dt,
                                 const CoefficientSpec& coeffs, Kernel kernel = Kernel::scan);

}  // namespace lorenzlab
