#include "invguard/schemes/fv1d.hpp"

#include <algorithm>
#include <cmath>

#include "invguard/errors.hpp"

namespace invguard::schemes {

namespace {

constexpr std::size_t kGhost = 2;

// Cell values padded with two ghosts per side: ext[j + 2] = u_j.
std::vector<double> with_ghosts(const FvField1D& u, const FluxOptions& opt) {
  const std::size_t n = u.size();
  std::vector<double> ext(n + 2 * kGhost);
  for (std::size_t j = 0; j < n; ++j) ext[j + kGhost] = u[j];
  if (u.grid.periodic()) {
    ext[0] = u[n - 2];
    ext[1] = u[n - 1];
    ext[n + 2] = u[0];
    ext[n + 3] = u[1];
  } else {
    ext[0] = ext[1] = opt.left_value;
    ext[n + 2] = ext[n + 3] = opt.right_value;
  }
  return ext;
}

double upwind_advection(double c, double ul, double ur) { return c >= 0.0 ? c * ul : c * ur; }

} // namespace

double mc_slope(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  const double s = a > 0.0 ? 1.0 : -1.0;
  return s * std::min({2.0 * std::abs(a), 2.0 * std::abs(b), 0.5 * std::abs(a + b)});
}

double godunov_burgers(double ul, double ur) {
  if (ul <= ur) {
    if (ul <= 0.0 && 0.0 <= ur) return 0.0;
    return std::min(0.5 * ul * ul, 0.5 * ur * ur);
  }
  return std::max(0.5 * ul * ul, 0.5 * ur * ur);
}

std::vector<double> numerical_flux_1d(FluxScheme scheme, const FvField1D& u, const ScalarEquation& eq,
                                      const FluxOptions& opt) {
  const std::size_t n = u.size();
  const bool adv = eq.kind == ScalarEquation::Kind::Advection;
  if (scheme == FluxScheme::Upwind && !adv)
    throw ConfigurationError("Upwind flux needs a fixed wave speed; use Godunov for Burgers");
  if (scheme == FluxScheme::LaxFriedrichs && !(opt.lf_coefficient > 0.0))
    throw ConfigurationError("LaxFriedrichs flux needs a positive dx/(2dt) coefficient");
  if (scheme == FluxScheme::MusclMc && n < 4) throw ConfigurationError("MUSCL needs at least 4 cells");

  const std::vector<double> ext = with_ghosts(u, opt);
  std::vector<double> f(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    // cells k-1 and k in padded indexing
    const std::size_t l = k + kGhost - 1;
    const std::size_t r = k + kGhost;
    const double ul = ext[l];
    const double ur = ext[r];
    switch (scheme) {
    case FluxScheme::Upwind:
      f[k] = upwind_advection(eq.c, ul, ur);
      break;
    case FluxScheme::Centered:
      f[k] = 0.5 * (eq.flux(ul) + eq.flux(ur));
      break;
    case FluxScheme::Godunov:
      f[k] = adv ? upwind_advection(eq.c, ul, ur) : godunov_burgers(ul, ur);
      break;
    case FluxScheme::LaxFriedrichs:
      f[k] = 0.5 * (eq.flux(ul) + eq.flux(ur)) - opt.lf_coefficient * (ur - ul);
      break;
    case FluxScheme::MusclMc: {
      const double sl = mc_slope(ext[l] - ext[l - 1], ext[r] - ext[l]);
      const double sr = mc_slope(ext[r] - ext[l], ext[r + 1] - ext[r]);
      const double a = ul + 0.5 * sl;
      const double b = ur - 0.5 * sr;
      f[k] = adv ? upwind_advection(eq.c, a, b) : godunov_burgers(a, b);
      break;
    }
    }
  }
  if (u.grid.periodic()) f[0] = f[n];
  return f;
}

std::vector<double> fv_rhs_1d(std::span<const double> fluxes, const UniformGrid1D& grid) {
  const std::size_t n = grid.n_cells();
  if (fluxes.size() != n + 1) throw ArgumentError("fv_rhs_1d: expected N+1 interface fluxes");
  std::vector<double> rhs(n);
  for (std::size_t j = 0; j < n; ++j) rhs[j] = -(fluxes[j + 1] - fluxes[j]) / grid.dx(j);
  return rhs;
}

std::vector<double> laplacian_1d(std::span<const double> u, const UniformGrid1D& grid) {
  const std::size_t n = grid.n_cells();
  if (u.size() != n) throw ArgumentError("laplacian_1d: size mismatch");
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k)
    g[k] = (u[k] - u[k - 1]) / (0.5 * (grid.dx(k - 1) + grid.dx(k)));
  if (grid.periodic()) {
    g[0] = g[n] = (u[0] - u[n - 1]) / (0.5 * (grid.dx(n - 1) + grid.dx(0)));
  }
  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = (g[j + 1] - g[j]) / grid.dx(j);
  return out;
}

std::vector<double> ftcs_increment(const FvField1D& u, double c, double dt) {
  if (!u.grid.periodic()) throw ConfigurationError("ftcs_increment: periodic grid required");
  const std::size_t n = u.size();
  std::vector<double> du(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double up = u[(j + 1) % n];
    const double um = u[(j + n - 1) % n];
    du[j] = -(c * dt / (2.0 * u.grid.dx(j))) * (up - um);
  }
  return du;
}

std::vector<double> burgers_advective_rhs(const FvField1D& u) {
  if (!u.grid.periodic()) throw ConfigurationError("burgers_advective_rhs: periodic grid required");
  const std::size_t n = u.size();
  std::vector<double> rhs(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = u[j] >= 0.0 ? u[j] - u[(j + n - 1) % n] : u[(j + 1) % n] - u[j];
    rhs[j] = -u[j] * d / u.grid.dx(j);
  }
  return rhs;
}

} // namespace invguard::schemes
