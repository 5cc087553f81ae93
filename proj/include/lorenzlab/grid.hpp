#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace lorenzlab {

/// Which part of the line a problem lives on. Wealth problems use the
/// positive half-line; the Gaussian examples use the whole real line.
enum class Domain { real_line, positive_half_line };

std::string_view to_string(Domain d);
Domain domain_from_string(std::string_view s);

/// Strictly increasing sample coordinates (x or w).
class SpatialGrid {
 public:
  SpatialGrid() = default;
  SpatialGrid(std::vector<double> nodes, Domain domain);

  static SpatialGrid uniform(double lo, double hi, std::size_t count, Domain domain);

  std::size_t size() const { return nodes_.size(); }
  double operator[](std::size_t i) const { return nodes_[i]; }
  std::span<const double> nodes() const { return nodes_; }
  double front() const { return nodes_.front(); }
  double back() const { return nodes_.back(); }
  Domain domain() const { return domain_; }

  bool is_uniform(double rel_tol = 1e-9) const;
  /// Node spacing; throws ValidationError on a non-uniform grid.
  double spacing() const;

 private:
  std::vector<double> nodes_;
  Domain domain_ = Domain::real_line;
};

/// Coordinate of node i on the uniform f-grid with `count` nodes on [0,1].
inline double fgrid_node(std::size_t i, std::size_t count) {
  return static_cast<double>(i) / static_cast<double>(count - 1);
}

}  // namespace lorenzlab
