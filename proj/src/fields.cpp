#include "lorenzlab/fields.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lorenzlab/error.hpp"
#include "lorenzlab/quadrature.hpp"

namespace lorenzlab {

double DensityField::mass() const { return quad::trapezoid(values, grid.nodes()); }

double DensityField::mean() const {
  return quad::linear_first_moment(values, grid.nodes()) / mass();
}

double DensityField::variance() const {
  const double m = mean();
  return quad::linear_second_moment(values, grid.nodes()) / mass() - m * m;
}

DensityField DensityField::normalized() const {
  const double m = mass();
  if (!(m > 0.0) || !std::isfinite(m)) throw ValidationError("density has no positive mass");
  DensityField out = *this;
  for (double& v : out.values) v /= m;
  return out;
}

void validate(const DensityField& density, const Tolerances& tol, DensityCheck what) {
  if (density.values.size() != density.grid.size())
    throw ValidationError("density: values/grid size mismatch");
  if (density.grid.size() < 3) throw ValidationError("density: grid needs at least 3 nodes");
  if (!(density.time >= 0.0)) throw ValidationError("density: time must be >= 0");
  for (std::size_t i = 0; i < density.values.size(); ++i) {
    const double v = density.values[i];
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("density: value at node " + std::to_string(i) +
                            " is negative or not finite");
  }
  if (what.check_mass) {
    const double m = density.mass();
    if (std::abs(m - 1.0) > tol.mass)
      throw ValidationError("density: mass " + std::to_string(m) + " is not 1 within tolerance");
  }
  if (what.check_tails) {
    const double peak = [&] {
      double p = 0.0;
      for (double v : density.values) p = std::max(p, v);
      return p;
    }();
    if (density.values.front() > tol.tail * peak || density.values.back() > tol.tail * peak)
      throw ValidationError("density: end values exceed the tail threshold; widen the grid");
  }
}

LorenzCurve::LorenzCurve(std::vector<double> values, double time)
    : values_(std::move(values)), time_(time) {
  if (values_.size() < 3) throw ValidationError("Lorenz curve needs at least 3 f-nodes");
  for (double v : values_)
    if (!std::isfinite(v)) throw ValidationError("Lorenz curve value is not finite");
  // Roundoff is absorbed; anything larger is a broken curve.
  if (std::abs(values_.front()) > 1e-12)
    throw ValidationError("Lorenz curve must start at 0 (got " + std::to_string(values_.front()) + ")");
  values_.front() = 0.0;
}

LorenzCurve LorenzCurve::normalized() const {
  const double rb = right_boundary();
  if (!(std::abs(rb) > 0.0)) throw ValidationError("cannot normalize a curve with zero mean");
  std::vector<double> v(values_);
  for (double& x : v) x /= rb;
  v.back() = 1.0;
  return LorenzCurve(std::move(v), time_);
}

LorenzCurve LorenzCurve::with_time(double t) const {
  LorenzCurve c = *this;
  c.time_ = t;
  return c;
}

double LorenzCurve::convexity_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < values_.size(); ++i)
    m = std::min(m, values_[i + 1] - 2.0 * values_[i] + values_[i - 1]);
  return m;
}

void MetricSeries::push(const Record& r) {
  times.push_back(r.time);
  gini.push_back(r.gini);
  hoover.push_back(r.hoover);
  mean.push_back(r.mean);
  std.push_back(r.std);
  mass_error.push_back(r.mass_error);
  convexity_margin.push_back(r.convexity_margin);
}

MetricSeries::Record MetricSeries::at(std::size_t i) const {
  return {times.at(i), gini.at(i), hoover.at(i), mean.at(i), std.at(i), mass_error.at(i),
          convexity_margin.at(i)};
}

}  // namespace lorenzlab
