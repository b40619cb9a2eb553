#ifndef INVGUARD_CORRECTORS_DG_L2_HPP
#define INVGUARD_CORRECTORS_DG_L2_HPP

#include <span>
#include <vector>

#include "invguard/correctors/targets.hpp"
#include "invguard/fields.hpp"

namespace invguard::correctors {

// N' = N + nu N_diff with nu = (new - old) / <a|N_diff>; coefficient holds nu.
Corrected<std::vector<double>> correct_dg_l2(std::span<const double> rhs, const DgField& a,
                                             const L2RateTarget& target);

// Spectral RHS: zeroes mode 0, then adds delta G / <u|G> (2L-weighted); G_0 must be zero.
// An empty G selects -m^2 u_m.
Corrected<SpectralField> correct_spectral_mass_l2(const SpectralField& rhs, const SpectralField& u,
                                                  const L2RateTarget& target, const SpectralField* G = nullptr);

} // namespace invguard::correctors

#endif
