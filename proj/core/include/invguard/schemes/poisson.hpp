#ifndef INVGUARD_SCHEMES_POISSON_HPP
#define INVGUARD_SCHEMES_POISSON_HPP

#include <memory>
#include <span>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/grid.hpp"

namespace invguard::schemes {

// Periodic solve of -lap(psi) = chi - mean(chi) with the bilinear (Q1) finite-element stiffness
// stencil acting on cell values and a lumped load. Diagonalized by a real 2D FFT.
// Not safe to share one instance between threads; create one per simulation.
class PeriodicPoissonSolver {
public:
  explicit PeriodicPoissonSolver(const UniformGrid2D& grid);
  ~PeriodicPoissonSolver();
  PeriodicPoissonSolver(const PeriodicPoissonSolver&) = delete;
  PeriodicPoissonSolver& operator=(const PeriodicPoissonSolver&) = delete;
  PeriodicPoissonSolver(PeriodicPoissonSolver&&) noexcept;
  PeriodicPoissonSolver& operator=(PeriodicPoissonSolver&&) noexcept;

  // Returns psi_bar with zero mean.
  std::vector<double> solve(std::span<const double> chi);
  const UniformGrid2D& grid() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> poisson_solve(const FvField2D& chi);

// Eigenvalue of -L for the Fourier mode with integer wavenumbers (kx, ky).
double fe_laplacian_eigenvalue(const UniformGrid2D& grid, long kx, long ky);

// Direct application of the discrete operator L (the 9-point stencil divided by the cell area).
std::vector<double> fe_laplacian_apply(std::span<const double> psi, const UniformGrid2D& grid);

} // namespace invguard::schemes

#endif
