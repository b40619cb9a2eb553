#include "invguard/schemes/euler1d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invguard/errors.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::schemes {

namespace {

constexpr std::size_t kGhost = 2;

struct Eigen {
  double R[3][3]; // R[row][col], columns are right eigenvectors
  double L[3][3]; // rows are left eigenvectors
  double lam[3];
};

Eigen eigensystem(const RoeAverage& a, double gamma) {
  const double u = a.u, c = a.c, H = a.H;
  Eigen e{};
  const double cols[3][3] = {{1.0, u - c, H - u * c}, {1.0, u, 0.5 * u * u}, {1.0, u + c, H + u * c}};
  for (int col = 0; col < 3; ++col)
    for (int row = 0; row < 3; ++row) e.R[row][col] = cols[col][row];
  const double b1 = (gamma - 1.0) / (c * c);
  const double b2 = 0.5 * b1 * u * u;
  e.L[0][0] = 0.5 * (b2 + u / c);
  e.L[0][1] = 0.5 * (-b1 * u - 1.0 / c);
  e.L[0][2] = 0.5 * b1;
  e.L[1][0] = 1.0 - b2;
  e.L[1][1] = b1 * u;
  e.L[1][2] = -b1;
  e.L[2][0] = 0.5 * (b2 - u / c);
  e.L[2][1] = 0.5 * (-b1 * u + 1.0 / c);
  e.L[2][2] = 0.5 * b1;
  e.lam[0] = u - c;
  e.lam[1] = u;
  e.lam[2] = u + c;
  return e;
}

Triple sub(const Conserved& a, const Conserved& b) { return {a.rho - b.rho, a.mom - b.mom, a.energy - b.energy}; }

Triple mul(const double M[3][3], const Triple& v) {
  Triple r{};
  for (int i = 0; i < 3; ++i) r[i] = M[i][0] * v[0] + M[i][1] * v[1] + M[i][2] * v[2];
  return r;
}

bool admissible(const Conserved& u, double gamma) {
  return u.rho > 0.0 && pressure_of(u, gamma) > 0.0 && std::isfinite(u.energy) && std::isfinite(u.mom);
}

Triple roe_flux(const Conserved& ul, const Conserved& ur, double gamma) {
  const RoeAverage a = roe_average(ul, ur, gamma);
  const Eigen e = eigensystem(a, gamma);
  const Triple fl = physical_flux(ul, gamma), fr = physical_flux(ur, gamma);
  const Triple alpha = mul(e.L, sub(ur, ul));
  const double delta = 0.1 * (std::abs(a.u) + a.c);
  Triple f{};
  for (int i = 0; i < 3; ++i) f[i] = 0.5 * (fl[i] + fr[i]);
  for (int k = 0; k < 3; ++k) {
    double lam = std::abs(e.lam[k]);
    if (lam < delta) lam = 0.5 * (lam * lam + delta * delta) / delta;
    for (int i = 0; i < 3; ++i) f[i] -= 0.5 * lam * alpha[k] * e.R[i][k];
  }
  return f;
}

Triple lf_flux(const Conserved& ul, const Conserved& ur, double gamma, double alpha) {
  const Triple fl = physical_flux(ul, gamma), fr = physical_flux(ur, gamma);
  const Triple d = sub(ur, ul);
  Triple f{};
  for (int i = 0; i < 3; ++i) f[i] = 0.5 * (fl[i] + fr[i]) - 0.5 * alpha * d[i];
  return f;
}

} // namespace

Triple physical_flux(const Conserved& u, double gamma) {
  const double v = u.mom / u.rho;
  const double p = pressure_of(u, gamma);
  return {u.mom, u.mom * v + p, v * (u.energy + p)};
}

RoeAverage roe_average(const Conserved& l, const Conserved& r, double gamma) {
  if (!(l.rho > 0.0) || !(r.rho > 0.0)) throw DegeneracyError("roe_average: non-positive density", 0);
  const double pl = pressure_of(l, gamma), pr = pressure_of(r, gamma);
  const double sl = std::sqrt(l.rho), sr = std::sqrt(r.rho);
  const double ul = l.mom / l.rho, ur = r.mom / r.rho;
  const double hl = (l.energy + pl) / l.rho, hr = (r.energy + pr) / r.rho;
  RoeAverage a{};
  a.u = (sl * ul + sr * ur) / (sl + sr);
  a.H = (sl * hl + sr * hr) / (sl + sr);
  const double c2 = (gamma - 1.0) * (a.H - 0.5 * a.u * a.u);
  if (!(c2 > 0.0) || !std::isfinite(c2)) throw DegeneracyError("roe_average: non-positive sound speed", 0);
  a.c = std::sqrt(c2);
  return a;
}

std::vector<Conserved> euler_with_ghosts(const EulerState1D& s, const EulerBoundary& bc) {
  const std::size_t n = s.size();
  std::vector<Conserved> ext(n + 2 * kGhost);
  for (std::size_t j = 0; j < n; ++j) ext[j + kGhost] = {s.rho[j], s.mom[j], s.energy[j]};
  if (bc.periodic) {
    ext[0] = ext[n];
    ext[1] = ext[n + 1];
    ext[n + 2] = ext[2];
    ext[n + 3] = ext[3];
  } else {
    ext[0] = ext[1] = bc.left;
    ext[n + 2] = ext[n + 3] = bc.right;
  }
  return ext;
}

double euler_max_speed(const EulerState1D& s, const EulerBoundary& bc) {
  const auto ext = euler_with_ghosts(s, bc);
  double a = 0.0;
  for (const auto& u : ext) {
    const double p = pressure_of(u, s.gamma);
    const double c = std::sqrt(std::max(0.0, s.gamma * p / u.rho));
    a = std::max(a, std::abs(u.mom / u.rho) + c);
  }
  return a;
}

EulerFluxes1D euler1d_muscl_flux(const EulerState1D& s, const EulerBoundary& bc, FallbackPolicy policy,
                                 std::size_t* n_fallback) {
  const std::size_t n = s.size();
  const double gamma = s.gamma;
  if (n < 4) throw ConfigurationError("euler1d_muscl_flux: need at least 4 cells");
  const auto ext = euler_with_ghosts(s, bc);
  for (std::size_t j = 0; j < ext.size(); ++j)
    if (!admissible(ext[j], gamma))
      throw DegeneracyError("euler1d_muscl_flux: non-positive density or pressure in cell data", j);

  double alpha = -1.0;
  std::size_t fallbacks = 0;
  EulerFluxes1D out;
  out.F.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const std::size_t l = k + kGhost - 1, r = k + kGhost;
    const Conserved& ull = ext[l - 1];
    const Conserved& ul = ext[l];
    const Conserved& ur = ext[r];
    const Conserved& urr = ext[r + 1];
    try {
      const RoeAverage avg = roe_average(ul, ur, gamma);
      const Eigen e = eigensystem(avg, gamma);
      const Triple dl = mul(e.L, sub(ul, ull));
      const Triple dc = mul(e.L, sub(ur, ul));
      const Triple dr = mul(e.L, sub(urr, ur));
      Triple sl{}, sr{};
      for (int i = 0; i < 3; ++i) {
        sl[i] = 0.5 * mc_slope(dl[i], dc[i]);
        sr[i] = 0.5 * mc_slope(dc[i], dr[i]);
      }
      const Triple ql = mul(e.R, sl), qr = mul(e.R, sr);
      const Conserved a{ul.rho + ql[0], ul.mom + ql[1], ul.energy + ql[2]};
      const Conserved b{ur.rho - qr[0], ur.mom - qr[1], ur.energy - qr[2]};
      if (!admissible(a, gamma) || !admissible(b, gamma))
        throw DegeneracyError("euler1d_muscl_flux: reconstruction lost positivity", k);
      out.F[k] = roe_flux(a, b, gamma);
    } catch (const DegeneracyError&) {
      if (policy == FallbackPolicy::Throw)
        throw DegeneracyError("euler1d_muscl_flux: degenerate face " + std::to_string(k), k);
      if (alpha < 0.0) alpha = euler_max_speed(s, bc);
      out.F[k] = lf_flux(ul, ur, gamma, alpha);
      ++fallbacks;
    }
  }
  if (bc.periodic) out.F[0] = out.F[n];
  if (n_fallback) *n_fallback = fallbacks;
  return out;
}

EulerFluxes1D euler1d_lf_flux(const EulerState1D& s, const EulerBoundary& bc) {
  const std::size_t n = s.size();
  const auto ext = euler_with_ghosts(s, bc);
  const double alpha = euler_max_speed(s, bc);
  EulerFluxes1D out;
  out.F.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k) out.F[k] = lf_flux(ext[k + kGhost - 1], ext[k + kGhost], s.gamma, alpha);
  return out;
}

std::vector<double> euler1d_rhs(const EulerFluxes1D& f, const UniformGrid1D& grid) {
  const std::size_t n = grid.n_cells();
  if (f.size() != n + 1) throw ArgumentError("euler1d_rhs: expected N+1 face fluxes");
  std::vector<double> rhs(3 * n);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t j = 0; j < n; ++j) rhs[c * n + j] = -(f.F[j + 1][c] - f.F[j][c]) / grid.dx(j);
  return rhs;
}

} // namespace invguard::schemes
