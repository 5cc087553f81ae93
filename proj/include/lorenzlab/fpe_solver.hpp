#pragma once

#include <cstddef>
#include <vector>

#include "lorenzlab/coefficients.hpp"
#include "lorenzlab/fields.hpp"
#include "lorenzlab/initial.hpp"
#include "lorenzlab/kernels.hpp"

namespace lorenzlab {

/// Explicit stability factor: dt <= kCflFactor * dx^2 / max D.
inline constexpr double kCflFactor = 0.4;

struct FpeStepOptions {
  Tolerances tol{};
  Kernel kernel = Kernel::scan;
  /// Abort when max rho grows by more than this factor in one step.
  double growth_limit = 2.0;
};

struct FpeStepResult {
  DensityField density;
  double mass_error;    // trapezoid mass after the update, before renormalizing, minus 1
  double clipped_mass;  // mass removed by clipping small negatives
};

/// Largest stable dt for the current state.
double fpe_stable_dt(const DensityField& density, const CoefficientSpec& coeffs,
                     Kernel kernel = Kernel::scan);

/// One explicit step of rho_t = -(Sigma rho)_x + (D rho)_xx, D frozen from
/// the incoming density. Boundary nodes are held at 0.
FpeStepResult step_fpe(const DensityField& density, const CoefficientSpec& coeffs, double dt,
                       const FpeStepOptions& opts = {});

struct FpeRunConfig {
  double x_min = -8.0;
  double x_max = 8.0;
  std::size_t nodes = 512;
  Domain domain = Domain::real_line;
  InitialCondition initial = GaussianInit{};
  CoefficientSpec coeffs{};
  double dt = 0.0;           // largest step; 0 = the stability bound
  double t_end = 1.0;
  double output_interval = 0.0;  // 0 = only t = 0 and t_end
  bool keep_snapshots = true;
  std::size_t metric_f_count = 513;  // f-grid for Lorenz-based metrics
  Tolerances tol{};
  Kernel kernel = Kernel::scan;

  SpatialGrid grid() const;
  void validate() const;
};

struct FpeRun {
  std::vector<DensityField> snapshots;
  MetricSeries metrics;
  std::size_t steps = 0;
};

FpeRun run_fpe(const FpeRunConfig& config);

/// Metrics row for one density. Gini and Hoover are NaN on the real line.
MetricSeries::Record density_metrics(const DensityField& density, double mass_error,
                                     std::size_t f_count, const Tolerances& tol = {},
                                     Kernel kernel = Kernel::scan);

}  // namespace lorenzlab
