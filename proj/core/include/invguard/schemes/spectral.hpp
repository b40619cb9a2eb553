#ifndef INVGUARD_SCHEMES_SPECTRAL_HPP
#define INVGUARD_SCHEMES_SPECTRAL_HPP

#include "invguard/fields.hpp"

namespace invguard::schemes {

// Exact advection: N_m = -(2 pi i m c / L) u_m.
SpectralField spectral_rhs_advection(const SpectralField& u, double c);

// G_m = -m^2 u_m, the spectral diffusion direction (zero mean mode by construction).
SpectralField spectral_diffusion_direction(const SpectralField& u);

// 2L sum_{m>=1} (a_r b_r + a_i b_i) + L a_0 b_0: the l2 bracket of two coefficient sets.
double spectral_bracket(const SpectralField& a, const SpectralField& b);

// (L/2) u_0^2 + L sum_{m>=1} |u_m|^2
double spectral_l2(const SpectralField& u);

} // namespace invguard::schemes

#endif
