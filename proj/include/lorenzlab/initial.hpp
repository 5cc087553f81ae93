#pragma once

#include <variant>
#include <vector>

#include "lorenzlab/fields.hpp"

namespace lorenzlab {

/// Gaussian(mean, std). std == 0 means a delta, regularized on the grid as a
/// Gaussian of std 3 dx.
struct GaussianInit {
  double mean = 0.0;
  double std = 1.0;
};

/// Uniform on [a, b].
struct UniformInit {
  double a = 0.0;
  double b = 1.0;
};

/// Lognormal with the given arithmetic mean and log-std.
struct LognormalInit {
  double mean = 1.0;
  double sigma_log = 0.5;
};

/// Tabulated (x, rho) pairs, linearly interpolated, zero outside.
struct TabulatedInit {
  std::vector<double> x;
  std::vector<double> rho;
};

using InitialCondition = std::variant<GaussianInit, UniformInit, LognormalInit, TabulatedInit>;

/// Sample and renormalize to unit trapezoid mass.
DensityField make_initial_density(const InitialCondition& ic, const SpatialGrid& grid);

}  // namespace lorenzlab
