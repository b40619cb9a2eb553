#include "invguard/correctors/dg_l2.hpp"

#include <cmath>

#include "invguard/bracket.hpp"
#include "invguard/errors.hpp"
#include "invguard/schemes/dg.hpp"
#include "invguard/schemes/spectral.hpp"

namespace invguard::correctors {

Corrected<std::vector<double>> correct_dg_l2(std::span<const double> rhs, const DgField& a,
                                             const L2RateTarget& target) {
  if (rhs.size() != a.coeffs.size()) throw ArgumentError("correct_dg_l2: size mismatch");
  Corrected<std::vector<double>> out{std::vector<double>(rhs.begin(), rhs.end())};
  out.old_rate = schemes::dg_bracket(a.coeffs, rhs);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;

  const std::vector<double> nd = schemes::dg_diffusion_rhs(a);
  const double denom = schemes::dg_bracket(a.coeffs, nd);
  const double thr = degeneracy_threshold(a.coeffs, nd);
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_dg_l2: <a|N_diff> vanishes (constant field?)", denom, thr);
  const double nu = (out.new_rate - out.old_rate) / denom;
  for (std::size_t q = 0; q < nd.size(); ++q) out.value[q] += nu * nd[q];
  out.applied = true;
  out.coefficient = nu;
  return out;
}

Corrected<SpectralField> correct_spectral_mass_l2(const SpectralField& rhs, const SpectralField& u,
                                                  const L2RateTarget& target, const SpectralField* G) {
  if (rhs.re.size() != u.re.size()) throw ArgumentError("correct_spectral_mass_l2: mode count mismatch");
  Corrected<SpectralField> out{rhs};
  out.value.re[0] = 0.0;
  out.value.im[0] = 0.0;
  out.old_rate = schemes::spectral_bracket(u, out.value);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;

  const SpectralField g = G ? *G : schemes::spectral_diffusion_direction(u);
  if (g.re.size() != u.re.size()) throw ArgumentError("correct_spectral_mass_l2: G mode count mismatch");
  if (g.re[0] != 0.0 || g.im[0] != 0.0) throw ArgumentError("correct_spectral_mass_l2: G_0 must be zero");
  const double denom = schemes::spectral_bracket(u, g);
  const double thr = 1e-13 * std::sqrt(schemes::spectral_bracket(g, g) * schemes::spectral_bracket(u, u));
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_spectral_mass_l2: <u|G> vanishes", denom, thr);
  const double coef = (out.new_rate - out.old_rate) / denom;
  for (std::size_t m = 1; m < g.re.size(); ++m) {
    out.value.re[m] += coef * g.re[m];
    out.value.im[m] += coef * g.im[m];
  }
  out.applied = true;
  out.coefficient = coef;
  return out;
}

} // namespace invguard::correctors
