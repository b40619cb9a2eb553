#include "invguard/correctors/euler2d.hpp"

#include <cmath>

#include "invguard/bracket.hpp"
#include "invguard/errors.hpp"
#include "invguard/schemes/fv2d.hpp"

namespace invguard::correctors {

namespace {

struct Projector {
  std::vector<double> phi; // demeaned streamfunction
  double phi_norm2 = 0.0;  // <phi|phi>
  double area = 0.0;

  Projector(const VorticityState2D& s) : area(s.chi.grid.cell_area()) {
    const std::size_t n = s.chi.grid.size();
    if (s.psi_bar.size() != n) throw ArgumentError("euler2d corrector: psi_bar size mismatch");
    const double pm = mean(s.psi_bar);
    phi.resize(n);
    for (std::size_t c = 0; c < n; ++c) phi[c] = s.psi_bar[c] - pm;
    phi_norm2 = bracket(phi, phi, area);
    const double raw = bracket(s.psi_bar, s.psi_bar, area);
    if (!(phi_norm2 > 1e-26 * raw))
      throw DegenerateCorrection("euler2d corrector: streamfunction is constant", phi_norm2, 0.0);
  }

  // demean then remove the phi component
  std::vector<double> apply(std::span<const double> v) const {
    const std::size_t n = v.size();
    const double m = mean(v);
    std::vector<double> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = v[c] - m;
    const double k = bracket(out, phi, area) / phi_norm2;
    for (std::size_t c = 0; c < n; ++c) out[c] -= k * phi[c];
    return out;
  }
};

} // namespace

std::vector<double> project_euler2d_mass_energy(std::span<const double> rhs, const VorticityState2D& s) {
  if (rhs.size() != s.chi.grid.size()) throw ArgumentError("project_euler2d_mass_energy: size mismatch");
  return Projector(s).apply(rhs);
}

Euler2DCorrected correct_euler2d_mass_energy_l2(std::span<const double> rhs, const VorticityState2D& s,
                                                const L2RateTarget& target, std::span<const double> G) {
  const auto& grid = s.chi.grid;
  const std::size_t n = grid.size();
  if (rhs.size() != n) throw ArgumentError("correct_euler2d_mass_energy_l2: size mismatch");
  const Projector P(s);
  const double area = P.area;

  const std::vector<double> W = P.apply(s.chi.values);
  Euler2DCorrected out;
  out.value = P.apply(rhs);
  out.old_rate = bracket(W, out.value, area);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;

  std::vector<double> g;
  if (G.empty()) {
    g = P.apply(schemes::laplacian_5pt(W, grid));
  } else {
    if (G.size() != n) throw ArgumentError("correct_euler2d_mass_energy_l2: G size mismatch");
    g = P.apply(G);
  }
  const double denom = bracket(W, g, area);
  const double thr = 1e-13 * std::sqrt(bracket(W, W, area) * bracket(g, g, area));
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_euler2d_mass_energy_l2: <W|G> vanishes", denom, thr);
  const double coef = (out.new_rate - out.old_rate) / denom;
  for (std::size_t c = 0; c < n; ++c) out.value[c] += coef * g[c];
  out.applied = true;
  out.coefficient = coef;
  return out;
}

} // namespace invguard::correctors
