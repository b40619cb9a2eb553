#include "invguard/schemes/poisson.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>

#include "invguard/errors.hpp"

namespace invguard::schemes {

namespace {

// FFTW's planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double symbol(double dx, double dy, double tx, double ty) {
  const double cx = std::cos(tx), cy = std::cos(ty);
  return (2.0 - 2.0 * cx) / dx * dy * (2.0 + cy) / 3.0 + dx * (2.0 + cx) / 3.0 * (2.0 - 2.0 * cy) / dy;
}

} // namespace

struct PeriodicPoissonSolver::Impl {
  UniformGrid2D grid;
  std::size_t nxh;
  double* real = nullptr;
  fftw_complex* spec = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> inv_symbol;

  explicit Impl(const UniformGrid2D& g) : grid(g), nxh(g.nx() / 2 + 1) {
    const std::size_t nx = g.nx(), ny = g.ny();
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      real = fftw_alloc_real(nx * ny);
      spec = fftw_alloc_complex(ny * nxh);
      fwd = fftw_plan_dft_r2c_2d(static_cast<int>(ny), static_cast<int>(nx), real, spec, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_c2r_2d(static_cast<int>(ny), static_cast<int>(nx), spec, real, FFTW_ESTIMATE);
    }
    inv_symbol.assign(ny * nxh, 0.0);
    for (std::size_t b = 0; b < ny; ++b)
      for (std::size_t a = 0; a < nxh; ++a) {
        if (a == 0 && b == 0) continue;
        const double tx = 2.0 * std::numbers::pi * static_cast<double>(a) / static_cast<double>(nx);
        const double ty = 2.0 * std::numbers::pi * static_cast<double>(b) / static_cast<double>(ny);
        inv_symbol[b * nxh + a] = 1.0 / symbol(g.dx(), g.dy(), tx, ty);
      }
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
    if (real) fftw_free(real);
    if (spec) fftw_free(spec);
  }
};

PeriodicPoissonSolver::PeriodicPoissonSolver(const UniformGrid2D& grid) : impl_(std::make_unique<Impl>(grid)) {}
PeriodicPoissonSolver::~PeriodicPoissonSolver() = default;
PeriodicPoissonSolver::PeriodicPoissonSolver(PeriodicPoissonSolver&&) noexcept = default;
PeriodicPoissonSolver& PeriodicPoissonSolver::operator=(PeriodicPoissonSolver&&) noexcept = default;

const UniformGrid2D& PeriodicPoissonSolver::grid() const { return impl_->grid; }

std::vector<double> PeriodicPoissonSolver::solve(std::span<const double> chi) {
  auto& s = *impl_;
  const std::size_t n = s.grid.size();
  if (chi.size() != n) throw ArgumentError("poisson solve: size mismatch");
  double m = 0.0;
  for (double v : chi) m += v;
  m /= static_cast<double>(n);
  const double area = s.grid.cell_area();
  for (std::size_t c = 0; c < n; ++c) s.real[c] = (chi[c] - m) * area;
  fftw_execute(s.fwd);
  const std::size_t ns = s.grid.ny() * s.nxh;
  for (std::size_t q = 0; q < ns; ++q) {
    s.spec[q][0] *= s.inv_symbol[q];
    s.spec[q][1] *= s.inv_symbol[q];
  }
  fftw_execute(s.bwd);
  std::vector<double> psi(n);
  const double inv_n = 1.0 / static_cast<double>(n);
  double pm = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    psi[c] = s.real[c] * inv_n;
    pm += psi[c];
  }
  pm *= inv_n;
  for (double& v : psi) v -= pm;
  return psi;
}

std::vector<double> poisson_solve(const FvField2D& chi) {
  PeriodicPoissonSolver solver(chi.grid);
  return solver.solve(chi.values);
}

double fe_laplacian_eigenvalue(const UniformGrid2D& g, long kx, long ky) {
  const double tx = 2.0 * std::numbers::pi * static_cast<double>(kx) / static_cast<double>(g.nx());
  const double ty = 2.0 * std::numbers::pi * static_cast<double>(ky) / static_cast<double>(g.ny());
  return symbol(g.dx(), g.dy(), tx, ty) / g.cell_area();
}

std::vector<double> fe_laplacian_apply(std::span<const double> psi, const UniformGrid2D& g) {
  if (psi.size() != g.size()) throw ArgumentError("fe_laplacian_apply: size mismatch");
  const double rx = g.dy() / g.dx(), ry = g.dx() / g.dy();
  const double kc = 4.0 / 3.0 * (rx + ry);
  const double kex = -2.0 / 3.0 * rx + 1.0 / 3.0 * ry;
  const double key = -2.0 / 3.0 * ry + 1.0 / 3.0 * rx;
  const double kk = -1.0 / 6.0 * (rx + ry);
  const double inv_area = 1.0 / g.cell_area();
  std::vector<double> out(g.size());
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t ip = g.ip(i), im = g.im(i), jp = g.jp(j), jm = g.jm(j);
      const double k = kc * psi[g.idx(i, j)]
                       + kex * (psi[g.idx(ip, j)] + psi[g.idx(im, j)])
                       + key * (psi[g.idx(i, jp)] + psi[g.idx(i, jm)])
                       + kk * (psi[g.idx(ip, jp)] + psi[g.idx(ip, jm)] + psi[g.idx(im, jp)] + psi[g.idx(im, jm)]);
      out[g.idx(i, j)] = -k * inv_area;
    }
  return out;
}

} // namespace invguard::schemes
