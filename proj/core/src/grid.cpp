#include "invguard/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "invguard/errors.hpp"

namespace invguard {

UniformGrid1D::UniformGrid1D(std::size_t n_cells, double length, Boundary boundary)
    : length_(length), boundary_(boundary) {
  if (n_cells < 2) throw ArgumentError("grid needs at least 2 cells");
  if (!(length > 0.0) || !std::isfinite(length)) throw ArgumentError("grid length must be positive");
  dx_.assign(n_cells, length / static_cast<double>(n_cells));
  centers_.resize(n_cells);
  for (std::size_t j = 0; j < n_cells; ++j)
    centers_[j] = (static_cast<double>(j) + 0.5) * dx_[j];
}

UniformGrid1D::UniformGrid1D(std::vector<double> cell_volumes, Boundary boundary)
    : dx_(std::move(cell_volumes)), boundary_(boundary) {
  if (dx_.size() < 2) throw ArgumentError("grid needs at least 2 cells");
  double x = 0.0;
  centers_.resize(dx_.size());
  for (std::size_t j = 0; j < dx_.size(); ++j) {
    if (!(dx_[j] > 0.0) || !std::isfinite(dx_[j]))
      throw ArgumentError("cell volume " + std::to_string(j) + " must be positive");
    centers_[j] = x + 0.5 * dx_[j];
    x += dx_[j];
  }
  length_ = x;
  uniform_ = std::all_of(dx_.begin(), dx_.end(), [&](double v) { return v == dx_[0]; });
}

double UniformGrid1D::dx_min() const { return *std::min_element(dx_.begin(), dx_.end()); }

UniformGrid2D::UniformGrid2D(std::size_t nx, std::size_t ny, double lx, double ly)
    : nx_(nx), ny_(ny), lx_(lx), ly_(ly) {
  if (nx < 2 || ny < 2) throw ArgumentError("2D grid needs at least 2 cells per direction");
  if (!(lx > 0.0) || !(ly > 0.0)) throw ArgumentError("2D grid extents must be positive");
}

} // namespace invguard
