#include "invguard/schemes/spectral.hpp"

#include <numbers>

#include "invguard/errors.hpp"

namespace invguard::schemes {

SpectralField spectral_rhs_advection(const SpectralField& u, double c) {
  SpectralField out(u.length, u.n_modes());
  for (std::size_t m = 1; m < u.re.size(); ++m) {
    const double k = 2.0 * std::numbers::pi * static_cast<double>(m) * c / u.length;
    out.re[m] = k * u.im[m];
    out.im[m] = -k * u.re[m];
  }
  return out;
}

SpectralField spectral_diffusion_direction(const SpectralField& u) {
  SpectralField out(u.length, u.n_modes());
  for (std::size_t m = 1; m < u.re.size(); ++m) {
    const double m2 = static_cast<double>(m * m);
    out.re[m] = -m2 * u.re[m];
    out.im[m] = -m2 * u.im[m];
  }
  return out;
}

double spectral_bracket(const SpectralField& a, const SpectralField& b) {
  if (a.re.size() != b.re.size()) throw ArgumentError("spectral_bracket: mode count mismatch");
  double s = 0.0;
  for (std::size_t m = 1; m < a.re.size(); ++m) s += a.re[m] * b.re[m] + a.im[m] * b.im[m];
  return a.length * a.re[0] * b.re[0] + 2.0 * a.length * s;
}

double spectral_l2(const SpectralField& u) { return 0.5 * spectral_bracket(u, u); }

} // namespace invguard::schemes
