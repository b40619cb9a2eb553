#ifndef INVGUARD_GRID_HPP
#define INVGUARD_GRID_HPP

#include <cstddef>
#include <vector>

namespace invguard {

enum class Boundary { Periodic, Dirichlet };

class UniformGrid1D {
public:
  UniformGrid1D(std::size_t n_cells, double length, Boundary boundary = Boundary::Periodic);
  // Non-uniform cells; length is the sum of the volumes.
  UniformGrid1D(std::vector<double> cell_volumes, Boundary boundary);

  std::size_t n_cells() const { return dx_.size(); }
  double length() const { return length_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::Periodic; }
  const std::vector<double>& cell_volumes() const { return dx_; }
  double dx(std::size_t j) const { return dx_[j]; }
  double dx_min() const;
  bool uniform() const { return uniform_; }
  // Midpoint of cell j measured from x = 0.
  double center(std::size_t j) const { return centers_[j]; }

private:
  std::vector<double> dx_;
  std::vector<double> centers_;
  double length_ = 0.0;
  Boundary boundary_ = Boundary::Periodic;
  bool uniform_ = true;
};

// Periodic rectangle. Cell (i, j) lives at index j * nx + i.
class UniformGrid2D {
public:
  UniformGrid2D(std::size_t nx, std::size_t ny, double lx, double ly);

  std::size_t nx() const { return nx_; }
  std::size_t ny() const { return ny_; }
  std::size_t size() const { return nx_ * ny_; }
  double lx() const { return lx_; }
  double ly() const { return ly_; }
  double dx() const { return lx_ / static_cast<double>(nx_); }
  double dy() const { return ly_ / static_cast<double>(ny_); }
  double cell_area() const { return dx() * dy(); }
  Boundary boundary() const { return Boundary::Periodic; }

  std::size_t idx(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  std::size_t ip(std::size_t i) const { return i + 1 == nx_ ? 0 : i + 1; }
  std::size_t im(std::size_t i) const { return i == 0 ? nx_ - 1 : i - 1; }
  std::size_t jp(std::size_t j) const { return j + 1 == ny_ ? 0 : j + 1; }
  std::size_t jm(std::size_t j) const { return j == 0 ? ny_ - 1 : j - 1; }

  double xc(std::size_t i) const { return (static_cast<double>(i) + 0.5) * dx(); }
  double yc(std::size_t j) const { return (static_cast<double>(j) + 0.5) * dy(); }

private:
  std::size_t nx_, ny_;
  double lx_, ly_;
};

} // namespace invguard

#endif
