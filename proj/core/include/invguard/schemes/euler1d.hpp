#ifndef INVGUARD_SCHEMES_EULER1D_HPP
#define INVGUARD_SCHEMES_EULER1D_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "invguard/fields.hpp"

namespace invguard::schemes {

using Triple = std::array<double, 3>;

// F[k] is the flux through face k between cells k-1 and k; N+1 faces.
struct EulerFluxes1D {
  std::vector<Triple> F;
  std::size_t size() const { return F.size(); }
};

// Dirichlet ghosts hold these conserved states (two ghosts per side).
struct EulerBoundary {
  bool periodic = true;
  Conserved left{1.0, 0.0, 2.5};
  Conserved right{1.0, 0.0, 2.5};

  static EulerBoundary periodic_bc() { return {}; }
  static EulerBoundary dirichlet(Conserved l, Conserved r) { return {false, l, r}; }
};

enum class FallbackPolicy { Throw, LaxFriedrichs };

struct RoeAverage {
  double u, H, c;
};

Triple physical_flux(const Conserved& u, double gamma);
RoeAverage roe_average(const Conserved& l, const Conserved& r, double gamma);

// Padded conserved states: index j + 2 holds cell j.
std::vector<Conserved> euler_with_ghosts(const EulerState1D& s, const EulerBoundary& bc);

// Largest |v| + c over cells and ghosts.
double euler_max_speed(const EulerState1D& s, const EulerBoundary& bc);

// Second-order MUSCL with MC limiting of local characteristic variables (Roe eigenvectors at each
// face) and a Roe flux with Harten's entropy fix. Faces whose reconstruction loses positivity either
// throw DegeneracyError or use the Lax-Friedrichs flux, per policy.
EulerFluxes1D euler1d_muscl_flux(const EulerState1D& s, const EulerBoundary& bc,
                                 FallbackPolicy policy = FallbackPolicy::LaxFriedrichs,
                                 std::size_t* n_fallback = nullptr);

// First-order Lax-Friedrichs (Rusanov) flux with a single global dissipation speed.
EulerFluxes1D euler1d_lf_flux(const EulerState1D& s, const EulerBoundary& bc);

// Per-cell RHS -(F_{j+1/2} - F_{j-1/2}) / dx_j, in component-major order (rho..., mom..., E...).
std::vector<double> euler1d_rhs(const EulerFluxes1D& f, const UniformGrid1D& grid);

} // namespace invguard::schemes

#endif
