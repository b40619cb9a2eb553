#ifndef INVGUARD_CORRECTORS_FLUX_L2_HPP
#define INVGUARD_CORRECTORS_FLUX_L2_HPP

#include <span>
#include <vector>

#include "invguard/correctors/targets.hpp"
#include "invguard/fields.hpp"
#include "invguard/schemes/fv2d.hpp"

namespace invguard::correctors {

// d/dt (1/2 sum u^2 dx) produced by N+1 face fluxes (face k between cells k-1 and k).
// Periodic: sum over faces 1..N of f_k (u_k - u_{k-1}) with wraparound.
// Bounded: interior faces plus f_0 u_0 - f_N u_{N-1}.
double flux_l2_rate_1d(std::span<const double> fluxes, const FvField1D& u);

// Default weights G_k = u_k - u_{k-1} (zero on bounded-grid boundary faces).
std::vector<double> default_flux_weights_1d(const FvField1D& u);

// Adds a multiple of G to the corrected faces (all faces when periodic, interior faces otherwise)
// so the l2 rate equals the resolved target. Empty G selects the default weights.
Corrected<std::vector<double>> correct_flux_l2_1d(std::span<const double> fluxes, const FvField1D& u,
                                                  const L2RateTarget& target,
                                                  std::span<const double> G = {});

struct DirectionalRates {
  double x = 0.0;
  double y = 0.0;
};

DirectionalRates flux_l2_rates_2d(const schemes::Fluxes2D& f, const FvField2D& u);

struct Flux2DTarget {
  L2RateTarget x = L2RateTarget::clamp();
  L2RateTarget y = L2RateTarget::clamp();
  // A total rate shared equally between the two directions.
  static Flux2DTarget split(const L2RateTarget& total);
};

struct Flux2DCorrected {
  schemes::Fluxes2D value;
  DirectionalRates old_rate;
  DirectionalRates new_rate;
  bool applied_x = false;
  bool applied_y = false;
};

// Empty Gx / Gy select directional differences of u.
Flux2DCorrected correct_flux_l2_2d(const schemes::Fluxes2D& fluxes, const FvField2D& u, const Flux2DTarget& target,
                                   std::span<const double> Gx = {}, std::span<const double> Gy = {});

} // namespace invguard::correctors

#endif
