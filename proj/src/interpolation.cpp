#include "lorenzlab/interpolation.hpp"

#include <algorithm>

#include "lorenzlab/error.hpp"

namespace lorenzlab {

HermiteInterpolant::HermiteInterpolant(std::vector<double> knots, std::vector<double> values,
                                       std::vector<double> slopes)
    : knots_(std::move(knots)), values_(std::move(values)), slopes_(std::move(slopes)) {
  if (knots_.size() < 2 || values_.size() != knots_.size() || slopes_.size() != knots_.size())
    throw ValidationError("Hermite interpolant: need >= 2 knots with matching data");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i] > knots_[i - 1]))
      throw ValidationError("Hermite interpolant: knots must be strictly increasing");
}

double HermiteInterpolant::eval_segment(std::size_t k, double x) const {
  const double h = knots_[k + 1] - knots_[k];
  const double t = (x - knots_[k]) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * values_[k] + h10 * h * slopes_[k] + h01 * values_[k + 1] +
         h11 * h * slopes_[k + 1];
}

double HermiteInterpolant::operator()(double x) const {
  if (x <= knots_.front()) return values_.front();
  if (x >= knots_.back()) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
  return eval_segment(static_cast<std::size_t>(it - knots_.begin()) - 1, x);
}

std::vector<double> HermiteInterpolant::evaluate_sorted(std::span<const double> xs) const {
  std::vector<double> out(xs.size());
  std::size_t k = 0;
  const std::size_t last = knots_.size() - 2;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    if (x <= knots_.front()) {
      out[i] = values_.front();
      continue;
    }
    if (x >= knots_.back()) {
      out[i] = values_.back();
      continue;
    }
    while (k < last && knots_[k + 1] <= x) ++k;
    out[i] = eval_segment(k, x);
  }
  return out;
}

double interp_linear(std::span<const double> x, std::span<const double> y, double at) {
  if (at <= x.front()) return y.front();
  if (at >= x.back()) return y.back();
  const auto it = std::upper_bound(x.begin(), x.end(), at);
  const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
  const double t = (at - x[k]) / (x[k + 1] - x[k]);
  return y[k] + t * (y[k + 1] - y[k]);
}

double interp_linear(std::span<const double> x, std::span<const double> y, double at,
                     double outside) {
  if (at < x.front() || at > x.back()) return outside;
  return interp_linear(x, y, at);
}

}  // namespace lorenzlab
