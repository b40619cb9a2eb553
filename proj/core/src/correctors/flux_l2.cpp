#include "invguard/correctors/flux_l2.hpp"

#include <cmath>
#include <string>

#include "invguard/errors.hpp"

namespace invguard::correctors {

namespace {

// u_k - u_{k-1} on faces 1..N (face N wraps on periodic grids); zero elsewhere.
std::vector<double> face_differences(const FvField1D& u) {
  const std::size_t n = u.size();
  std::vector<double> d(n + 1, 0.0);
  for (std::size_t k = 1; k < n; ++k) d[k] = u[k] - u[k - 1];
  if (u.grid.periodic()) d[n] = u[0] - u[n - 1];
  return d;
}

} // namespace

double flux_l2_rate_1d(std::span<const double> f, const FvField1D& u) {
  const std::size_t n = u.size();
  if (f.size() != n + 1) throw ArgumentError("flux_l2_rate_1d: expected N+1 fluxes");
  double s = 0.0;
  for (std::size_t k = 1; k < n; ++k) s += f[k] * (u[k] - u[k - 1]);
  if (u.grid.periodic()) return s + f[n] * (u[0] - u[n - 1]);
  return s + f[0] * u[0] - f[n] * u[n - 1];
}

std::vector<double> default_flux_weights_1d(const FvField1D& u) { return face_differences(u); }

Corrected<std::vector<double>> correct_flux_l2_1d(std::span<const double> fluxes, const FvField1D& u,
                                                  const L2RateTarget& target, std::span<const double> G) {
  const std::size_t n = u.size();
  if (fluxes.size() != n + 1) throw ArgumentError("correct_flux_l2_1d: expected N+1 fluxes");
  Corrected<std::vector<double>> out{std::vector<double>(fluxes.begin(), fluxes.end())};
  out.old_rate = flux_l2_rate_1d(fluxes, u);
  out.new_rate = target.resolve(out.old_rate);
  if (out.new_rate == out.old_rate) return out;

  const std::vector<double> d = face_differences(u);
  std::vector<double> g;
  if (G.empty()) {
    g = d;
  } else {
    if (G.size() != n + 1) throw ArgumentError("correct_flux_l2_1d: G must have N+1 entries");
    g.assign(G.begin(), G.end());
  }
  const bool periodic = u.grid.periodic();
  const std::size_t last = periodic ? n : n - 1; // corrected faces are 1..last
  std::vector<double> gc(n + 1, 0.0);
  double denom = 0.0;
  for (std::size_t k = 1; k <= last; ++k) {
    gc[k] = g[k];
    denom += g[k] * d[k];
  }
  const double thr = degeneracy_threshold(gc, d);
  if (!(std::abs(denom) > thr))
    throw DegenerateCorrection("correct_flux_l2_1d: sum G (u_k - u_{k-1}) vanishes", denom, thr);

  const double coef = (out.new_rate - out.old_rate) / denom;
  for (std::size_t k = 1; k <= last; ++k) out.value[k] += coef * gc[k];
  if (periodic) out.value[0] = out.value[n];
  out.applied = true;
  out.coefficient = coef;
  return out;
}

DirectionalRates flux_l2_rates_2d(const schemes::Fluxes2D& f, const FvField2D& u) {
  const auto& g = u.grid;
  if (f.fx.size() != g.size() || f.fy.size() != g.size()) throw ArgumentError("flux_l2_rates_2d: size mismatch");
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      sx += f.fx[c] * (u.values[g.idx(g.ip(i), j)] - u.values[c]);
      sy += f.fy[c] * (u.values[g.idx(i, g.jp(j))] - u.values[c]);
    }
  return {sx * g.dy(), sy * g.dx()};
}

Flux2DTarget Flux2DTarget::split(const L2RateTarget& total) {
  if (total.mode == L2RateTarget::Mode::Clamp) return {};
  L2RateTarget half = total;
  half.rate = 0.5 * total.rate;
  return {half, half};
}

Flux2DCorrected correct_flux_l2_2d(const schemes::Fluxes2D& fluxes, const FvField2D& u, const Flux2DTarget& target,
                                   std::span<const double> Gx, std::span<const double> Gy) {
  const auto& g = u.grid;
  const std::size_t n = g.size();
  Flux2DCorrected out;
  out.value = fluxes;
  out.old_rate = flux_l2_rates_2d(fluxes, u);
  out.new_rate = {target.x.resolve(out.old_rate.x), target.y.resolve(out.old_rate.y)};

  std::vector<double> dx(n), dy(n);
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t c = g.idx(i, j);
      dx[c] = u.values[g.idx(g.ip(i), j)] - u.values[c];
      dy[c] = u.values[g.idx(i, g.jp(j))] - u.values[c];
    }

  auto apply = [&](std::vector<double>& f, const std::vector<double>& d, std::span<const double> G, double old_r,
                   double new_r, double face_len, const char* dir) {
    if (new_r == old_r) return false;
    std::span<const double> w = G.empty() ? std::span<const double>(d) : G;
    if (w.size() != n) throw ArgumentError(std::string("correct_flux_l2_2d: G") + dir + " size mismatch");
    double denom = 0.0;
    for (std::size_t c = 0; c < n; ++c) denom += w[c] * d[c];
    denom *= face_len;
    const double thr = face_len * degeneracy_threshold(w, d);
    if (!(std::abs(denom) > thr))
      throw DegenerateCorrection(std::string("correct_flux_l2_2d: degenerate ") + dir + " denominator", denom, thr);
    const double coef = (new_r - old_r) / denom;
    for (std::size_t c = 0; c < n; ++c) f[c] += coef * w[c];
    return true;
  };
  out.applied_x = apply(out.value.fx, dx, Gx, out.old_rate.x, out.new_rate.x, g.dy(), "x");
  out.applied_y = apply(out.value.fy, dy, Gy, out.old_rate.y, out.new_rate.y, g.dx(), "y");
  return out;
}

} // namespace invguard::correctors
