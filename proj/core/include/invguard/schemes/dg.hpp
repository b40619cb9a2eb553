#ifndef INVGUARD_SCHEMES_DG_HPP
#define INVGUARD_SCHEMES_DG_HPP

#include <functional>
#include <span>
#include <vector>

#include "invguard/fields.hpp"

namespace invguard::schemes {

struct DgFluxRule {
  std::function<double(double u_minus, double u_plus)> numerical; // interface flux
  std::function<double(double u)> physical;                      // volume-term flux
};

DgFluxRule dg_flux_advection_upwind(double c);
DgFluxRule dg_flux_advection_centered(double c);
DgFluxRule dg_flux_burgers_godunov();
// (u- + u+)^2 / 8 at interfaces with u^2/2 in the volume. Only meant for the centered-flux demo.
DgFluxRule dg_flux_burgers_centered_demo();

// N_{jk} = -f_{j+1/2} + (-1)^k f_{j-1/2} + integral of f(u) dpsi_k/dx over cell j.
// Same layout as DgField::coeffs. Periodic grids only.
std::vector<double> dg_rhs(const DgField& a, const DgFluxRule& flux);

// Symmetric interior-penalty discretization of u_xx, penalty (p+1)^2/dx. Returns -B(u, psi_jk).
std::vector<double> dg_diffusion_rhs(const DgField& a);

// adot_{jk} = N_{jk} / (dx_j <psi_k|psi_k>)
std::vector<double> dg_coefficient_rate(std::span<const double> rhs, const DgField& a);

// sum_{jk} a_{jk} N_{jk}: the l2 rate produced by a coefficient RHS.
double dg_bracket(std::span<const double> a, std::span<const double> rhs);

// 1/2 integral of u^2.
double dg_l2(const DgField& a);

} // namespace invguard::schemes

#endif
