#pragma once

#include <span>
#include <vector>

namespace lorenzlab {

/// Piecewise cubic Hermite interpolant through (x_i, y_i) with prescribed
/// node slopes d_i. Knots must be strictly increasing.
class HermiteInterpolant {
 public:
  HermiteInterpolant(std::vector<double> knots, std::vector<double> values,
                     std::vector<double> slopes);

  double operator()(double x) const;
  /// Evaluate at increasing query points in one sweep.
  std::vector<double> evaluate_sorted(std::span<const double> xs) const;

  double front() const { return knots_.front(); }
  double back() const { return knots_.back(); }

 private:
  double eval_segment(std::size_t k, double x) const;

  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// Linear interpolation on increasing knots, clamped to the end values
/// outside [x.front(), x.back()] unless `outside` is given.
double interp_linear(std::span<const double> x, std::span<const double> y, double at);
double interp_linear(std::span<const double> x, std::span<const double> y, double at,
                     double outside);

}  // namespace lorenzlab
