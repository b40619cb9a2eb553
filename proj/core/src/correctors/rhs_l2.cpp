#include "invguard/correctors/rhs_l2.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invguard/bracket.hpp"
#include "invguard/errors.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::correctors {

namespace {

// Checks <G> ~ 0 relative to its size and returns an exactly re-centred copy.
std::vector<double> mean_free_weights(std::span<const double> G, std::span<const double> vol, const char* who) {
  const double m = mean(G, vol);
  double gmax = 0.0;
  for (double v : G) gmax = std::max(gmax, std::abs(v));
  if (std::abs(m) > 1e-12 * std::max(gmax, 1e-300))
    throw ArgumentError(std::string(who) + ": weights G must have zero volume-weighted mean");
  std::vector<double> g(G.begin(), G.end());
  for (double& v : g) v -= m;
  return g;
}

} // namespace

Corrected<std::vector<double>> correct_rhs_mass_l2(std::span<const double> rhs, std::span<const double> u,
                                                   std::span<const double> vol, const L2RateTarget& target,
                                                   std::span<const double> G) {
  const std::size_t n = u.size();
  if (rhs.size() != n || vol.size() != n) throw ArgumentError("correct_rhs_mass_l2: size mismatch");
  if (G.empty()) throw ArgumentError("correct_rhs_mass_l2: weights required for this overload");
  if (G.size() != n) throw ArgumentError("correct_rhs_mass_l2: G size mismatch");

  const double ubar = mean(u, vol);
  const double nbar = mean(rhs, vol);
  std::vector<double> U(n);
  Corrected<std::vector<double>> out{std::vector<double>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    U[j] = u[j] - ubar;
    out.value[j] = rhs[j] - nbar;
  }
  out.old_rate = bracket(U, out.value, vol);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;

  const std::vector<double> g = mean_free_weights(G, vol, "correct_rhs_mass_l2");
  const double denom = bracket(U, g, vol);
  const double thr = 1e-13 * std::sqrt(bracket(g, g, vol) * bracket(U, U, vol));
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_rhs_mass_l2: <U|G> vanishes", denom, thr);
  const double coef = (out.new_rate - out.old_rate) / denom;
  for (std::size_t j = 0; j < n; ++j) out.value[j] += coef * g[j];
  out.applied = true;
  out.coefficient = coef;
  return out;
}

Corrected<std::vector<double>> correct_rhs_mass_l2(std::span<const double> rhs, const FvField1D& u,
                                                   const L2RateTarget& target, std::span<const double> G) {
  if (!G.empty()) return correct_rhs_mass_l2(rhs, u.values, u.grid.cell_volumes(), target, G);
  const std::vector<double> lap = schemes::laplacian_1d(u.values, u.grid);
  return correct_rhs_mass_l2(rhs, u.values, u.grid.cell_volumes(), target, lap);
}

IncrementCorrected correct_increment_mass_l2(std::span<const double> increment, std::span<const double> u,
                                             std::span<const double> vol, double delta_l2,
                                             std::span<const double> G) {
  const std::size_t n = u.size();
  if (increment.size() != n || vol.size() != n || G.size() != n)
    throw ArgumentError("correct_increment_mass_l2: size mismatch");
  if (!std::isfinite(delta_l2)) throw ArgumentError("correct_increment_mass_l2: non-finite target");

  const double dbar = mean(increment, vol);
  IncrementCorrected out;
  out.value.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.value[j] = increment[j] - dbar;
  out.delta_l2 = delta_l2;

  const std::vector<double> g = mean_free_weights(G, vol, "correct_increment_mass_l2");
  std::vector<double> upd(n);
  for (std::size_t j = 0; j < n; ++j) upd[j] = u[j] + out.value[j];
  const double a = bracket(g, g, vol);
  const double b = bracket(upd, g, vol);
  const double c0 = 2.0 * bracket(u, out.value, vol) + bracket(out.value, out.value, vol);
  const double c = c0 - 2.0 * delta_l2;
  const double disc = b * b - a * c;
  out.discriminant = disc;

  if (c == 0.0) return out; // the mean-free increment already meets the target

  if (!(a > 0.0)) throw DegenerateCorrection("correct_increment_mass_l2: G vanishes", a, 0.0);
  if (disc < 0.0) {
    const double min_delta = 0.5 * (c0 - b * b / a);
    throw InfeasibleTarget("correct_increment_mass_l2: requested l2 change is below the achievable minimum",
                           min_delta, disc);
  }
  double eps;
  if (b == 0.0) {
    eps = std::sqrt(-c / a);
  } else {
    // root of smallest magnitude, without cancellation
    eps = -c / (b * (1.0 + std::sqrt(std::max(0.0, 1.0 - a * c / (b * b)))));
  }
  for (std::size_t j = 0; j < n; ++j) out.value[j] += eps * g[j];
  out.epsilon = eps;
  return out;
}

IncrementCorrected correct_increment_mass_l2(std::span<const double> increment, const FvField1D& u,
                                             double delta_l2, std::span<const double> G) {
  if (!G.empty()) return correct_increment_mass_l2(increment, u.values, u.grid.cell_volumes(), delta_l2, G);
  const std::vector<double> lap = schemes::laplacian_1d(u.values, u.grid);
  return correct_increment_mass_l2(increment, u.values, u.grid.cell_volumes(), delta_l2, lap);
}

} // namespace invguard::correctors
