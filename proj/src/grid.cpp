#include "lorenzlab/grid.hpp"

#include <cmath>
#include <string>

#include "lorenzlab/error.hpp"

namespace lorenzlab {

std::string_view to_string(Domain d) {
  return d == Domain::real_line ? "real_line" : "positive_half_line";
}

Domain domain_from_string(std::string_view s) {
  if (s == "real_line" || s == "real") return Domain::real_line;
  if (s == "positive_half_line" || s == "positive") return Domain::positive_half_line;
  throw ValidationError("unknown domain tag '" + std::string(s) + "'");
}

SpatialGrid::SpatialGrid(std::vector<double> nodes, Domain domain)
    : nodes_(std::move(nodes)), domain_(domain) {
  if (nodes_.size() < 3) throw ValidationError("grid needs at least 3 nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i])) throw ValidationError("grid node is not finite");
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw ValidationError("grid nodes must be strictly increasing (node " + std::to_string(i) +
                            ")");
  }
  if (domain_ == Domain::positive_half_line && !(nodes_.front() > 0.0))
    throw ValidationError("positive half-line grid must have all nodes > 0");
}

SpatialGrid SpatialGrid::uniform(double lo, double hi, std::size_t count, Domain domain) {
  if (count < 3) throw ValidationError("grid needs at least 3 nodes");
  if (!(hi > lo)) throw ValidationError("grid upper bound must exceed lower bound");
  std::vector<double> x(count);
  const double h = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) x[i] = lo + h * static_cast<double>(i);
  x.back() = hi;
  return SpatialGrid(std::move(x), domain);
}

bool SpatialGrid::is_uniform(double rel_tol) const {
  const double h = (back() - front()) / static_cast<double>(size() - 1);
  for (std::size_t i = 1; i < size(); ++i)
    if (std::abs((nodes_[i] - nodes_[i - 1]) - h) > rel_tol * h) return false;
  return true;
}

double SpatialGrid::spacing() const {
  if (!is_uniform()) throw ValidationError("operation requires a uniform grid");
  return (back() - front()) / static_cast<double>(size() - 1);
}

}  // namespace lorenzlab
