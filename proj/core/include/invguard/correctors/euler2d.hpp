#ifndef INVGUARD_CORRECTORS_EULER2D_HPP
#define INVGUARD_CORRECTORS_EULER2D_HPP

#include <span>
#include <vector>

#include "invguard/correctors/targets.hpp"
#include "invguard/fields.hpp"

namespace invguard::correctors {

struct Euler2DCorrected {
  std::vector<double> value;
  double old_rate = 0.0; // enstrophy rate of the projected RHS
  double new_rate = 0.0;
  bool applied = false;
  double coefficient = 0.0;
};

// Mass, energy and enstrophy-rate correction of a vorticity RHS. The RHS is demeaned and projected
// orthogonal to the demeaned streamfunction, then a multiple of the (equally projected) G is added.
// Empty G selects the projected 5-point Laplacian of the projected vorticity.
Euler2DCorrected correct_euler2d_mass_energy_l2(std::span<const double> rhs, const VorticityState2D& state,
                                                const L2RateTarget& target, std::span<const double> G = {});

// Energy-only variant: demean and project, no enstrophy target (used for energy-conserving MUSCL).
std::vector<double> project_euler2d_mass_energy(std::span<const double> rhs, const VorticityState2D& state);

} // namespace invguard::correctors

#endif
