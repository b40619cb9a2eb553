#ifndef INVGUARD_CORRECTORS_RHS_L2_HPP
#define INVGUARD_CORRECTORS_RHS_L2_HPP

#include <span>
#include <vector>

#include "invguard/correctors/targets.hpp"
#include "invguard/fields.hpp"

namespace invguard::correctors {

// Demeans N, then adds a multiple of the mean-free weights G so that <u|N'> hits the target.
// Empty G selects the discrete Laplacian of u.
Corrected<std::vector<double>> correct_rhs_mass_l2(std::span<const double> rhs, std::span<const double> u,
                                                   std::span<const double> volumes, const L2RateTarget& target,
                                                   std::span<const double> G);

Corrected<std::vector<double>> correct_rhs_mass_l2(std::span<const double> rhs, const FvField1D& u,
                                                   const L2RateTarget& target, std::span<const double> G = {});

struct IncrementCorrected {
  std::vector<double> value;
  double epsilon = 0.0;
  double discriminant = 0.0; // b^2 - a c of the quadratic a e^2 + 2 b e + c = 0
  double delta_l2 = 0.0;     // the change that was actually targeted
};

// Discrete-time version: returns the mean-free increment plus epsilon G so that
// 1/2<(u + du')^2> - 1/2<u^2> = delta_l2. Throws InfeasibleTarget when no real root exists.
IncrementCorrected correct_increment_mass_l2(std::span<const double> increment, std::span<const double> u,
                                             std::span<const double> volumes, double delta_l2,
                                             std::span<const double> G);

IncrementCorrected correct_increment_mass_l2(std::span<const double> increment, const FvField1D& u,
                                             double delta_l2, std::span<const double> G = {});

} // namespace invguard::correctors

#endif
