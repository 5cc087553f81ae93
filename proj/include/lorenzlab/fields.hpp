#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lorenzlab/grid.hpp"

namespace lorenzlab {

/// Numerical tolerances shared across the library. Defaults are the values
/// the acceptance suite is pinned to.
struct Tolerances {
  double mass = 1e-6;        // |mass - 1| after renormalization
  double convex = 1e-10;     // absolute floor on raw second differences
  double gini = 1e-3;        // cross-formula Gini agreement at 512 nodes
  double collapse = 1e-12;   // merge consecutive CDF values closer than this
  double negative = 1e-12;   // largest negative density tolerated before clipping
  double tail = 1e-8;        // density at the outermost nodes
  double moment = 5e-3;      // mass / mean checks for the unit-wealth formulas
};

/// Probability density sampled on a spatial grid.
struct DensityField {
  SpatialGrid grid;
  std::vector<double> values;
  double time = 0.0;

  double mass() const;
  double mean() const;
  double variance() const;
  DensityField normalized() const;
};

struct DensityCheck {
  bool check_mass = true;
  bool check_tails = true;
};

/// Throws ValidationError if the density breaks its invariants.
void validate(const DensityField& density, const Tolerances& tol = {}, DensityCheck what = {});

/// Cumulative distribution function on the density's grid.
struct SampledCDF {
  SpatialGrid grid;
  std::vector<double> values;
  double time = 0.0;
};

/// Lorenz curve sampled on the uniform grid f_i = i/(n-1).
///
/// values.front() must be 0 (roundoff is zeroed, anything else throws);
/// right_boundary() is values.back().
class LorenzCurve {
 public:
  LorenzCurve() = default;
  LorenzCurve(std::vector<double> values, double time);

  std::size_t size() const { return values_.size(); }
  double spacing() const { return 1.0 / static_cast<double>(values_.size() - 1); }
  double f(std::size_t i) const { return fgrid_node(i, values_.size()); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  double time() const { return time_; }
  double right_boundary() const { return values_.back(); }

  /// Copy scaled so that right_boundary() == 1.
  LorenzCurve normalized() const;
  LorenzCurve with_time(double t) const;

  /// Smallest raw second difference L[i+1] - 2L[i] + L[i-1].
  double convexity_margin() const;

 private:
  std::vector<double> values_;
  double time_ = 0.0;
};

/// Time-indexed diagnostics. All columns share one length.
struct MetricSeries {
  std::vector<double> times;
  std::vector<double> gini;
  std::vector<double> hoover;
  std::vector<double> mean;
  std::vector<double> std;
  std::vector<double> mass_error;
  std::vector<double> convexity_margin;

  struct Record {
    double time, gini, hoover, mean, std, mass_error, convexity_margin;
  };

  void push(const Record& r);
  std::size_t size() const { return times.size(); }
  Record at(std::size_t i) const;
};

}  // namespace lorenzlab
