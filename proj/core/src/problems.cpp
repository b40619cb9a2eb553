#include "invguard/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invguard/errors.hpp"

namespace invguard::problems {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double a, double b) { return a + (b - a) * uniform(); }

long Rng::integer(long lo, long hi) {
  if (hi < lo) throw ArgumentError("Rng::integer: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(eng_() % span);
}

double Rng::normal() {
  const double u1 = 1.0 - uniform(); // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

double SumOfSines::eval(double x, double t) const {
  double s = 0.0;
  for (const auto& m : modes) s += m.amplitude * std::sin(kTwoPi * m.k * x / length - m.omega * t + m.phase);
  return s;
}

std::vector<double> SumOfSines::cell_values(const UniformGrid1D& grid, double t) const {
  std::vector<double> v(grid.n_cells());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = eval(grid.center(j), t);
  return v;
}

SumOfSines draw_sum_of_sines(double length, std::uint64_t seed, SineFamily family) {
  Rng rng(seed);
  SumOfSines s;
  s.length = length;
  if (family == SineFamily::Advection) {
    const long nmodes = rng.integer(1, 6);
    for (long i = 0; i < nmodes; ++i) {
      SineMode m;
      m.amplitude = rng.uniform(-1.0, 1.0);
      m.k = static_cast<int>(rng.integer(1, 4));
      m.phase = rng.uniform(0.0, kTwoPi);
      s.modes.push_back(m);
    }
  } else {
    for (int i = 0; i < 20; ++i) {
      SineMode m;
      m.amplitude = rng.uniform(-0.5, 0.5);
      m.k = static_cast<int>(rng.integer(3, 6));
      m.phase = rng.uniform(0.0, kTwoPi);
      m.omega = rng.uniform(-0.4, 0.4);
      s.modes.push_back(m);
    }
  }
  return s;
}

FvField1D ic_sum_of_sines(const UniformGrid1D& grid, std::uint64_t seed, SineFamily family) {
  const SumOfSines s = draw_sum_of_sines(grid.length(), seed, family);
  return FvField1D(grid, s.cell_values(grid));
}

FvField1D ic_sine(const UniformGrid1D& grid, double amplitude, int k, double phase, double offset) {
  SumOfSines s;
  s.length = grid.length();
  s.modes.push_back({amplitude, k, phase, 0.0});
  auto v = s.cell_values(grid);
  for (double& x : v) x += offset;
  return FvField1D(grid, std::move(v));
}

EulerState1D ic_euler_sines(const UniformGrid1D& grid, std::uint64_t seed, const EulerSineParams& prm) {
  Rng rng(seed);
  auto draw = [&] {
    SumOfSines s;
    s.length = grid.length();
    const double a = rng.uniform(0.0, 1.0);
    const double ph = rng.uniform(0.0, kTwoPi);
    s.modes.push_back({a, prm.k, ph, 0.0});
    return s.cell_values(grid);
  };
  std::vector<double> rho = draw(), v = draw(), p = draw();
  for (auto& r : rho) r = std::max(prm.rho_min, r);
  for (auto& q : p) q = std::max(prm.p_min, q);
  return EulerState1D::from_primitive(grid, rho, v, p, prm.gamma);
}

Conserved conserved_from_primitive(double rho, double v, double p, double gamma) {
  return {rho, rho * v, p / (gamma - 1.0) + 0.5 * rho * v * v};
}

EulerState1D ic_sod(const UniformGrid1D& grid, const SodParams& prm) {
  const std::size_t n = grid.n_cells();
  const double xj = prm.jump_fraction * grid.length();
  std::vector<double> rho(n), v(n), p(n);
  for (std::size_t j = 0; j < n; ++j) {
    const bool left = grid.center(j) < xj;
    rho[j] = left ? prm.rho_l : prm.rho_r;
    v[j] = left ? prm.v_l : prm.v_r;
    p[j] = left ? prm.p_l : prm.p_r;
  }
  return EulerState1D::from_primitive(grid, rho, v, p, prm.gamma);
}

schemes::EulerBoundary sod_boundary(const SodParams& prm) {
  return schemes::EulerBoundary::dirichlet(conserved_from_primitive(prm.rho_l, prm.v_l, prm.p_l, prm.gamma),
                                           conserved_from_primitive(prm.rho_r, prm.v_r, prm.p_r, prm.gamma));
}

double KolmogorovForcing::eval(double y, double length, double chi) const {
  const double kk = kTwoPi * k / length;
  return kk * std::cos(kk * y) - drag * chi;
}

std::vector<double> KolmogorovForcing::evaluate(const FvField2D& chi) const {
  const auto& g = chi.grid;
  std::vector<double> f(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j) {
    const double y = g.yc(j);
    for (std::size_t i = 0; i < g.nx(); ++i) f[g.idx(i, j)] = eval(y, g.ly(), chi(i, j));
  }
  return f;
}

FvField2D ic_random_vorticity(const UniformGrid2D& grid, std::uint64_t seed, int kmax) {
  if (2 * static_cast<std::size_t>(kmax) >= std::min(grid.nx(), grid.ny()))
    throw ArgumentError("ic_random_vorticity: grid too coarse for the requested band limit");
  Rng rng(seed);
  struct Mode {
    int kx, ky;
    double a, b;
  };
  std::vector<Mode> modes;
  // one representative of each +-k pair: ky > 0, or ky == 0 and kx > 0
  for (int ky = 0; ky <= kmax; ++ky)
    for (int kx = -kmax; kx <= kmax; ++kx) {
      if (ky == 0 && kx <= 0) continue;
      if (kx * kx + ky * ky > kmax * kmax) continue;
      modes.push_back({kx, ky, rng.normal(), rng.normal()});
    }
  FvField2D chi(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j) {
    const double y = grid.yc(j) / grid.ly();
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const double x = grid.xc(i) / grid.lx();
      double s = 0.0;
      for (const auto& m : modes) {
        const double th = kTwoPi * (m.kx * x + m.ky * y);
        s += m.a * std::cos(th) + m.b * std::sin(th);
      }
      chi(i, j) = s;
    }
  }
  double mean = 0.0;
  for (double v : chi.values) mean += v;
  mean /= static_cast<double>(chi.size());
  double ss = 0.0;
  for (double& v : chi.values) {
    v -= mean;
    ss += v * v;
  }
  const double rms = std::sqrt(ss / static_cast<double>(chi.size()));
  if (rms > 0.0)
    for (double& v : chi.values) v /= rms;
  return chi;
}

} // namespace invguard::problems
