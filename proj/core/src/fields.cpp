#include "invguard/fields.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "invguard/errors.hpp"

namespace invguard {

namespace {

void require_finite(const std::vector<double>& v, const char* what) {
  for (std::size_t j = 0; j < v.size(); ++j)
    if (!std::isfinite(v[j]))
      throw ArgumentError(std::string(what) + ": non-finite entry at " + std::to_string(j));
}

} // namespace

FvField1D::FvField1D(UniformGrid1D g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.n_cells()) throw ArgumentError("FvField1D: value count does not match grid");
  require_finite(values, "FvField1D");
}

FvField1D::FvField1D(UniformGrid1D g) : grid(std::move(g)), values(grid.n_cells(), 0.0) {}

FvField2D::FvField2D(UniformGrid2D g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) throw ArgumentError("FvField2D: value count does not match grid");
  require_finite(values, "FvField2D");
}

FvField2D::FvField2D(UniformGrid2D g) : grid(g), values(g.size(), 0.0) {}

double legendre(int k, double xi) {
  switch (k) {
  case 0: return 1.0;
  case 1: return xi;
  case 2: return 0.5 * (3.0 * xi * xi - 1.0);
  case 3: return 0.5 * (5.0 * xi * xi * xi - 3.0 * xi);
  default: break;
  }
  double p0 = 1.0, p1 = xi;
  for (int n = 1; n < k; ++n) {
    double p2 = ((2.0 * n + 1.0) * xi * p1 - n * p0) / (n + 1.0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_derivative(int k, double xi) {
  switch (k) {
  case 0: return 0.0;
  case 1: return 1.0;
  case 2: return 3.0 * xi;
  case 3: return 0.5 * (15.0 * xi * xi - 3.0);
  default: break;
  }
  // P'_k = sum over l = k-1, k-3, ... of (2l + 1) P_l
  double d = 0.0;
  for (int l = k - 1; l >= 0; l -= 2) d += (2.0 * l + 1.0) * legendre(l, xi);
  return d;
}

DgField::DgField(UniformGrid1D g, int degree, std::vector<double> c)
    : grid(std::move(g)), p(degree), coeffs(std::move(c)) {
  if (p < 0 || p > 2) throw ConfigurationError("DG degree must be 0, 1 or 2");
  if (coeffs.size() != grid.n_cells() * n_basis()) throw ArgumentError("DgField: coefficient count mismatch");
  require_finite(coeffs, "DgField");
}

DgField::DgField(UniformGrid1D g, int degree) : grid(std::move(g)), p(degree) {
  if (p < 0 || p > 2) throw ConfigurationError("DG degree must be 0, 1 or 2");
  coeffs.assign(grid.n_cells() * n_basis(), 0.0);
}

double DgField::eval(std::size_t j, double xi) const {
  double s = 0.0;
  for (int k = 0; k <= p; ++k) s += a(j, static_cast<std::size_t>(k)) * legendre(k, xi);
  return s;
}

DgField DgField::from_cell_averages(const FvField1D& u, int degree) {
  DgField f(u.grid, degree);
  for (std::size_t j = 0; j < u.size(); ++j) f.a(j, 0) = u[j];
  return f;
}

SpectralField::SpectralField(double len, std::size_t n_modes)
    : length(len), re(n_modes + 1, 0.0), im(n_modes + 1, 0.0) {
  if (!(len > 0.0)) throw ArgumentError("SpectralField: length must be positive");
}

SpectralField::SpectralField(double len, std::vector<double> r, std::vector<double> i)
    : length(len), re(std::move(r)), im(std::move(i)) {
  if (!(len > 0.0)) throw ArgumentError("SpectralField: length must be positive");
  if (re.empty() || re.size() != im.size()) throw ArgumentError("SpectralField: re/im size mismatch");
  require_finite(re, "SpectralField re");
  require_finite(im, "SpectralField im");
  im[0] = 0.0;
}

double SpectralField::eval(double x) const {
  const double k0 = 2.0 * std::numbers::pi / length;
  double s = re[0];
  for (std::size_t m = 1; m < re.size(); ++m) {
    double th = k0 * static_cast<double>(m) * x;
    s += 2.0 * (re[m] * std::cos(th) - im[m] * std::sin(th));
  }
  return s;
}

std::vector<double> SpectralField::sample(std::size_t n_points) const {
  std::vector<double> out(n_points);
  for (std::size_t l = 0; l < n_points; ++l)
    out[l] = eval(length * static_cast<double>(l) / static_cast<double>(n_points));
  return out;
}

SpectralField SpectralField::from_samples(double len, const std::vector<double>& samples, std::size_t n_modes) {
  const std::size_t n = samples.size();
  if (n < 2 * n_modes + 1) throw ArgumentError("SpectralField::from_samples: need at least 2N+1 samples");
  SpectralField f(len, n_modes);
  for (std::size_t m = 0; m <= n_modes; ++m) {
    double sr = 0.0, si = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      double th = 2.0 * std::numbers::pi * static_cast<double>((m * l) % n) / static_cast<double>(n);
      sr += samples[l] * std::cos(th);
      si -= samples[l] * std::sin(th);
    }
    f.re[m] = sr / static_cast<double>(n);
    f.im[m] = si / static_cast<double>(n);
  }
  f.im[0] = 0.0;
  return f;
}

double pressure_of(const Conserved& u, double gamma) {
  return (gamma - 1.0) * (u.energy - 0.5 * u.mom * u.mom / u.rho);
}

EulerState1D::EulerState1D(UniformGrid1D g, std::vector<double> r, std::vector<double> m,
                           std::vector<double> e, double gam)
    : grid(std::move(g)), rho(std::move(r)), mom(std::move(m)), energy(std::move(e)), gamma(gam) {
  const std::size_t n = grid.n_cells();
  if (rho.size() != n || mom.size() != n || energy.size() != n)
    throw ArgumentError("EulerState1D: component sizes must match the grid");
  if (!(gamma > 1.0)) throw ArgumentError("EulerState1D: gamma must exceed 1");
  require_finite(rho, "EulerState1D rho");
  require_finite(mom, "EulerState1D mom");
  require_finite(energy, "EulerState1D energy");
}

double EulerState1D::pressure(std::size_t j) const {
  return pressure_of({rho[j], mom[j], energy[j]}, gamma);
}

double EulerState1D::sound_speed(std::size_t j) const {
  return std::sqrt(gamma * pressure(j) / rho[j]);
}

EulerState1D EulerState1D::from_primitive(UniformGrid1D g, const std::vector<double>& r,
                                          const std::vector<double>& v, const std::vector<double>& p,
                                          double gam) {
  const std::size_t n = r.size();
  if (v.size() != n || p.size() != n) throw ArgumentError("from_primitive: size mismatch");
  std::vector<double> m(n), e(n);
  for (std::size_t j = 0; j < n; ++j) {
    m[j] = r[j] * v[j];
    e[j] = p[j] / (gam - 1.0) + 0.5 * r[j] * v[j] * v[j];
  }
  return EulerState1D(std::move(g), r, std::move(m), std::move(e), gam);
}

} // namespace invguard
