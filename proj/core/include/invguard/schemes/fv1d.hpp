#ifndef INVGUARD_SCHEMES_FV1D_HPP
#define INVGUARD_SCHEMES_FV1D_HPP

#include <span>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/grid.hpp"

namespace invguard::schemes {

enum class FluxScheme { Upwind, Centered, Godunov, LaxFriedrichs, MusclMc };

struct ScalarEquation {
  enum class Kind { Advection, Burgers };
  Kind kind = Kind::Advection;
  double c = 1.0; // advection speed, unused for Burgers

  static ScalarEquation advection(double speed) { return {Kind::Advection, speed}; }
  static ScalarEquation burgers() { return {Kind::Burgers, 0.0}; }

  double flux(double u) const { return kind == Kind::Advection ? c * u : 0.5 * u * u; }
};

struct FluxOptions {
  // Delta x / (2 Delta t), required by LaxFriedrichs.
  double lf_coefficient = 0.0;
  // Ghost values for Dirichlet grids.
  double left_value = 0.0;
  double right_value = 0.0;
};

// Monotonized-central limited slope.
double mc_slope(double a, double b);
double godunov_burgers(double ul, double ur);

// Face k sits between cells k-1 and k; N+1 faces. On periodic grids face 0 and face N coincide.
std::vector<double> numerical_flux_1d(FluxScheme scheme, const FvField1D& u, const ScalarEquation& eq,
                                      const FluxOptions& opt = {});

// N_j = -(f_{j+1/2} - f_{j-1/2}) / dx_j
std::vector<double> fv_rhs_1d(std::span<const double> fluxes, const UniformGrid1D& grid);

// Flux-form second difference; Neumann (zero flux) ends on bounded grids so the weighted mean vanishes.
std::vector<double> laplacian_1d(std::span<const double> u, const UniformGrid1D& grid);

// Delta u_j = -(c dt / 2 dx)(u_{j+1} - u_{j-1}), periodic.
std::vector<double> ftcs_increment(const FvField1D& u, double c, double dt);

// -u_j (du)_j with a one-sided difference taken upwind of u_j: advective-form Burgers, not mass conserving.
std::vector<double> burgers_advective_rhs(const FvField1D& u);

} // namespace invguard::schemes

#endif
