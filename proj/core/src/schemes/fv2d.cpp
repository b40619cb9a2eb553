#include "invguard/schemes/fv2d.hpp"

#include <algorithm>
#include <cmath>

#include "invguard/errors.hpp"

namespace invguard::schemes {

std::vector<double> fv_rhs_2d(const Fluxes2D& fluxes, const UniformGrid2D& g) {
  if (fluxes.fx.size() != g.size() || fluxes.fy.size() != g.size())
    throw ArgumentError("fv_rhs_2d: flux arrays must match the grid");
  const double dx = g.dx(), dy = g.dy();
  std::vector<double> rhs(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      rhs[c] = -(fluxes.fx[c] - fluxes.fx[g.idx(g.im(i), j)]) / dx
               - (fluxes.fy[c] - fluxes.fy[g.idx(i, g.jm(j))]) / dy;
    }
  return rhs;
}

FaceVelocities face_velocities(std::span<const double> psi, const UniformGrid2D& g) {
  if (psi.size() != g.size()) throw ArgumentError("face_velocities: size mismatch");
  // corner (i+1/2, j+1/2) stored at idx(i, j)
  std::vector<double> pc(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i)
      pc[g.idx(i, j)] = 0.25 * (psi[g.idx(i, j)] + psi[g.idx(g.ip(i), j)] + psi[g.idx(i, g.jp(j))]
                                + psi[g.idx(g.ip(i), g.jp(j))]);
  FaceVelocities v{std::vector<double>(g.size()), std::vector<double>(g.size())};
  const double dx = g.dx(), dy = g.dy();
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      v.ux[c] = (pc[c] - pc[g.idx(i, g.jm(j))]) / dy;
      v.uy[c] = -(pc[c] - pc[g.idx(g.im(i), j)]) / dx;
    }
  return v;
}

std::vector<double> velocity_divergence(const FaceVelocities& v, const UniformGrid2D& g) {
  std::vector<double> d(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      d[c] = (v.ux[c] - v.ux[g.idx(g.im(i), j)]) / g.dx() + (v.uy[c] - v.uy[g.idx(i, g.jm(j))]) / g.dy();
    }
  return d;
}

namespace {

// Interface value of q on the face between cells l and r given the next neighbours ll and rr.
double face_state(FluxScheme scheme, double vel, double ll, double l, double r, double rr) {
  switch (scheme) {
  case FluxScheme::Upwind:
    return vel >= 0.0 ? l : r;
  case FluxScheme::Centered:
    return 0.5 * (l + r);
  case FluxScheme::MusclMc:
    if (vel >= 0.0) return l + 0.5 * mc_slope(l - ll, r - l);
    return r - 0.5 * mc_slope(r - l, rr - r);
  default:
    throw ConfigurationError("advective_fluxes_2d supports Upwind, Centered and MusclMc");
  }
}

} // namespace

Fluxes2D advective_fluxes_2d(const FvField2D& chi, const FaceVelocities& vel, FluxScheme scheme) {
  const auto& g = chi.grid;
  if (vel.ux.size() != g.size() || vel.uy.size() != g.size())
    throw ArgumentError("advective_fluxes_2d: velocity arrays must match the grid");
  if (scheme != FluxScheme::Upwind && scheme != FluxScheme::Centered && scheme != FluxScheme::MusclMc)
    throw ConfigurationError("advective_fluxes_2d supports Upwind, Centered and MusclMc");

  double umax = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) umax = std::max({umax, std::abs(vel.ux[c]), std::abs(vel.uy[c])});
  const double div_scale = std::max(1.0, umax / std::min(g.dx(), g.dy()));
  const auto div = velocity_divergence(vel, g);
  for (std::size_t c = 0; c < g.size(); ++c)
    if (std::abs(div[c]) > 1e-10 * div_scale)
      throw ContractViolation("advective_fluxes_2d: face velocities are not discretely divergence-free");

  Fluxes2D f{std::vector<double>(g.size()), std::vector<double>(g.size())};
  const auto& q = chi.values;
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      const std::size_t ip = g.ip(i), im = g.im(i), jp = g.jp(j), jm = g.jm(j);
      const double sx = face_state(scheme, vel.ux[c], q[g.idx(im, j)], q[c], q[g.idx(ip, j)], q[g.idx(g.ip(ip), j)]);
      const double sy = face_state(scheme, vel.uy[c], q[g.idx(i, jm)], q[c], q[g.idx(i, jp)], q[g.idx(i, g.jp(jp))]);
      f.fx[c] = vel.ux[c] * sx;
      f.fy[c] = vel.uy[c] * sy;
    }
  return f;
}

std::vector<double> laplacian_5pt(std::span<const double> u, const UniformGrid2D& g) {
  if (u.size() != g.size()) throw ArgumentError("laplacian_5pt: size mismatch");
  const double ix2 = 1.0 / (g.dx() * g.dx()), iy2 = 1.0 / (g.dy() * g.dy());
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      out[c] = (u[g.idx(g.ip(i), j)] - 2.0 * u[c] + u[g.idx(g.im(i), j)]) * ix2
               + (u[g.idx(i, g.jp(j))] - 2.0 * u[c] + u[g.idx(i, g.jm(j))]) * iy2;
    }
  return out;
}

} // namespace invguard::schemes
