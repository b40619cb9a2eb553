#include "invguard/correctors/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invguard/errors.hpp"

namespace invguard::correctors {

using schemes::EulerBoundary;
using schemes::EulerFluxes1D;

EntropyPoint entropy_point(const Conserved& u, double gamma) {
  const double p = pressure_of(u, gamma);
  if (!(u.rho > 0.0) || !(p > 0.0)) throw PositivityViolation("entropy variables need rho > 0 and p > 0", 0);
  const double v = u.mom / u.rho;
  const double q = std::pow(p / std::pow(u.rho, gamma), 1.0 / (gamma + 1.0)); // g(s)
  EntropyPoint e{};
  e.eta = u.rho * q;
  e.psi = e.eta * v;
  e.p_star = (gamma - 1.0) / (gamma + 1.0) * q;
  const double k = e.p_star / p;
  e.w = {k * u.energy, -k * u.mom, k * u.rho};
  return e;
}

EntropyVariables1D entropy_variables_euler1d(const EulerState1D& s) {
  const std::size_t n = s.size();
  EntropyVariables1D out;
  out.w.resize(n);
  out.eta.resize(n);
  out.p_star.resize(n);
  out.psi.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    EntropyPoint e;
    try {
      e = entropy_point({s.rho[j], s.mom[j], s.energy[j]}, s.gamma);
    } catch (const PositivityViolation&) {
      throw PositivityViolation("entropy_variables_euler1d: non-positive rho or p in cell " + std::to_string(j), j);
    }
    out.w[j] = e.w;
    out.eta[j] = e.eta;
    out.p_star[j] = e.p_star;
    out.psi[j] = e.psi;
  }
  return out;
}

double total_entropy(const EulerState1D& s) {
  const auto ev = entropy_variables_euler1d(s);
  double t = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) t += ev.eta[j] * s.grid.dx(j);
  return t;
}

namespace {

double dot3(const Triple& a, const Triple& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Triple diff3(const Triple& a, const Triple& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Faces whose fluxes the corrector may change: 1..N-1, plus N (== 0) on periodic grids.
std::size_t last_corrected(std::size_t n, bool periodic) { return periodic ? n : n - 1; }

Triple dw_at(const std::vector<Triple>& w, std::size_t k, std::size_t n) {
  return k == n ? diff3(w[0], w[n - 1]) : diff3(w[k], w[k - 1]);
}

} // namespace

double entropy_rate(const EulerFluxes1D& f, const std::vector<Triple>& w, bool periodic) {
  const std::size_t n = w.size();
  if (f.size() != n + 1) throw ArgumentError("entropy_rate: expected N+1 face fluxes");
  double s = 0.0;
  for (std::size_t k = 1; k < n; ++k) s += dot3(f.F[k], diff3(w[k], w[k - 1]));
  if (periodic) return s + dot3(f.F[n], diff3(w[0], w[n - 1]));
  return s + dot3(f.F[0], w[0]) - dot3(f.F[n], w[n - 1]);
}

double estimate_boundary_entropy_flux(const EulerState1D& s, const EulerBoundary& bc) {
  if (bc.periodic) return 0.0;
  const std::size_t n = s.size();
  const double psi_bl = entropy_point(bc.left, s.gamma).psi;
  const double psi_br = entropy_point(bc.right, s.gamma).psi;
  const double psi_c0 = entropy_point({s.rho[0], s.mom[0], s.energy[0]}, s.gamma).psi;
  const double psi_cn = entropy_point({s.rho[n - 1], s.mom[n - 1], s.energy[n - 1]}, s.gamma).psi;
  return std::min(psi_bl, psi_c0) - std::min(psi_br, psi_cn);
}

double EntropyRateTarget::resolve(double old_rate) const {
  if (ratio == 1.0) return old_rate;
  return boundary_flux_estimate + ratio * (old_rate - boundary_flux_estimate);
}

std::vector<Triple> default_entropy_weights(const EulerState1D& s, bool periodic) {
  const std::size_t n = s.size();
  std::vector<Triple> g(n + 1, Triple{0.0, 0.0, 0.0});
  auto vp = [&](std::size_t j) { return std::pair<double, double>{s.velocity(j), s.pressure(j)}; };
  for (std::size_t k = 1; k <= last_corrected(n, periodic); ++k) {
    const auto [vr, pr] = vp(k == n ? 0 : k);
    const auto [vl, pl] = vp(k - 1);
    g[k] = {0.0, vr - vl, pr - pl};
  }
  return g;
}

EntropyCorrected correct_entropy_euler1d(const EulerFluxes1D& fluxes, const EulerState1D& s,
                                         const EntropyRateTarget& target, bool periodic,
                                         const std::vector<Triple>& G) {
  const std::size_t n = s.size();
  if (fluxes.size() != n + 1) throw ArgumentError("correct_entropy_euler1d: expected N+1 face fluxes");
  if (!(target.ratio >= 0.0)) throw ArgumentError("correct_entropy_euler1d: ratio R must be >= 0");
  EntropyCorrected out{fluxes};
  const auto ev = entropy_variables_euler1d(s);
  out.old_rate = entropy_rate(fluxes, ev.w, periodic);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;
  out.anti_diffusive = out.new_rate < out.old_rate;

  const std::vector<Triple> g = G.empty() ? default_entropy_weights(s, periodic) : G;
  if (g.size() != n + 1) throw ArgumentError("correct_entropy_euler1d: G must have N+1 entries");
  const std::size_t last = last_corrected(n, periodic);
  double denom = 0.0, gg = 0.0, dd = 0.0;
  for (std::size_t k = 1; k <= last; ++k) {
    const Triple dw = dw_at(ev.w, k, n);
    denom += dot3(g[k], dw);
    gg += dot3(g[k], g[k]);
    dd += dot3(dw, dw);
  }
  const double thr = 1e-13 * std::sqrt(gg * dd);
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_entropy_euler1d: sum G . dw vanishes", denom, thr);
  const double coef = (out.new_rate - out.old_rate) / denom;
  for (std::size_t k = 1; k <= last; ++k)
    for (int c = 0; c < 3; ++c) out.value.F[k][c] += coef * g[k][c];
  if (periodic) out.value.F[0] = out.value.F[n];
  out.applied = true;
  out.coefficient = coef;
  return out;
}

namespace {

bool admissible_floor(const Conserved& u, double gamma, double eps) {
  return u.rho >= eps && pressure_of(u, gamma) >= eps;
}

} // namespace

bool positivity_face_ok(const EulerFluxes1D& f, const EulerFluxes1D& lo, const EulerState1D& s, bool periodic,
                        double dt, double eps, std::size_t k, double theta) {
  const std::size_t n = s.size();
  Triple F{};
  for (int c = 0; c < 3; ++c) F[c] = theta * f.F[k][c] + (1.0 - theta) * lo.F[k][c];
  const bool has_left = periodic || k >= 1;
  const bool has_right = periodic || k < n;
  if (has_left) {
    const std::size_t j = k == 0 ? n - 1 : k - 1;
    const double lam = 2.0 * dt / s.grid.dx(j);
    const Conserved h{s.rho[j] - lam * F[0], s.mom[j] - lam * F[1], s.energy[j] - lam * F[2]};
    if (!admissible_floor(h, s.gamma, eps)) return false;
  }
  if (has_right) {
    const std::size_t j = k == n ? 0 : k;
    const double lam = 2.0 * dt / s.grid.dx(j);
    const Conserved h{s.rho[j] + lam * F[0], s.mom[j] + lam * F[1], s.energy[j] + lam * F[2]};
    if (!admissible_floor(h, s.gamma, eps)) return false;
  }
  return true;
}

PositivityLimited limit_positivity_euler1d(const EulerFluxes1D& fluxes, const EulerFluxes1D& lo,
                                           const EulerState1D& s, bool periodic, double dt, double eps) {
  const std::size_t n = s.size();
  if (fluxes.size() != n + 1 || lo.size() != n + 1)
    throw ArgumentError("limit_positivity_euler1d: expected N+1 face fluxes");
  if (!(dt > 0.0)) throw ArgumentError("limit_positivity_euler1d: dt must be positive");
  PositivityLimited out{fluxes, std::vector<double>(n + 1, 1.0)};
  const std::size_t first = periodic ? 1 : 0;
  for (std::size_t k = first; k <= n; ++k) {
    if (positivity_face_ok(fluxes, lo, s, periodic, dt, eps, k, 1.0)) continue;
    if (!positivity_face_ok(fluxes, lo, s, periodic, dt, eps, k, 0.0))
      throw CflViolation("limit_positivity_euler1d: first-order flux is not positive at face " + std::to_string(k), k);
    double a = 0.0, b = 1.0;
    while (b - a > 1e-10) {
      const double m = 0.5 * (a + b);
      if (positivity_face_ok(fluxes, lo, s, periodic, dt, eps, k, m))
        a = m;
      else
        b = m;
    }
    out.theta[k] = a;
    for (int c = 0; c < 3; ++c) out.value.F[k][c] = a * fluxes.F[k][c] + (1.0 - a) * lo.F[k][c];
    ++out.n_limited;
  }
  if (periodic) {
    out.theta[0] = out.theta[n];
    out.value.F[0] = out.value.F[n];
  }
  return out;
}

PositivityLimited limit_positivity_euler1d(const EulerFluxes1D& fluxes, const EulerState1D& s,
                                           const EulerBoundary& bc, double dt, double eps) {
  return limit_positivity_euler1d(fluxes, schemes::euler1d_lf_flux(s, bc), s, bc.periodic, dt, eps);
}

} // namespace invguard::correctors
