#ifndef INVGUARD_FIELDS_HPP
#define INVGUARD_FIELDS_HPP

#include <cstddef>
#include <vector>

#include "invguard/grid.hpp"

namespace invguard {

struct FvField1D {
  FvField1D(UniformGrid1D g, std::vector<double> v);
  explicit FvField1D(UniformGrid1D g);

  UniformGrid1D grid;
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t j) const { return values[j]; }
  double& operator[](std::size_t j) { return values[j]; }
};

struct FvField2D {
  FvField2D(UniformGrid2D g, std::vector<double> v);
  explicit FvField2D(UniformGrid2D g);

  UniformGrid2D grid;
  std::vector<double> values; // row-major, index j * nx + i

  std::size_t size() const { return values.size(); }
  double operator()(std::size_t i, std::size_t j) const { return values[grid.idx(i, j)]; }
  double& operator()(std::size_t i, std::size_t j) { return values[grid.idx(i, j)]; }
};

// Legendre modal coefficients on the reference cell xi in [-1, 1].
// Coefficient a_{jk} is stored at coeffs[j * (p + 1) + k].
struct DgField {
  DgField(UniformGrid1D g, int degree, std::vector<double> c);
  DgField(UniformGrid1D g, int degree);

  UniformGrid1D grid;
  int p;
  std::vector<double> coeffs;

  std::size_t n_cells() const { return grid.n_cells(); }
  std::size_t n_basis() const { return static_cast<std::size_t>(p + 1); }
  double a(std::size_t j, std::size_t k) const { return coeffs[j * n_basis() + k]; }
  double& a(std::size_t j, std::size_t k) { return coeffs[j * n_basis() + k]; }
  double eval(std::size_t j, double xi) const;
  double left_value(std::size_t j) const { return eval(j, -1.0); }
  double right_value(std::size_t j) const { return eval(j, 1.0); }

  // Projection of cell averages onto p = 0, higher modes zero.
  static DgField from_cell_averages(const FvField1D& u, int degree);
};

// <psi_k | psi_k> on the reference cell normalized by its length 2.
inline double legendre_norm(int k) { return 1.0 / (2.0 * k + 1.0); }
double legendre(int k, double xi);
double legendre_derivative(int k, double xi);

// Real Fourier coefficients for m = 0..N of a real periodic function on [0, L):
// u(x) = sum_{m=-N}^{N} u_m exp(2 pi i m x / L), u_{-m} = conj(u_m).
struct SpectralField {
  SpectralField(double length, std::size_t n_modes);
  SpectralField(double length, std::vector<double> re, std::vector<double> im);

  double length;
  std::vector<double> re;
  std::vector<double> im;

  std::size_t n_modes() const { return re.size() - 1; }
  double eval(double x) const;
  std::vector<double> sample(std::size_t n_points) const;
  // Exact DFT of n_points >= 2N+1 equispaced point samples starting at x = 0.
  static SpectralField from_samples(double length, const std::vector<double>& samples, std::size_t n_modes);
};

struct EulerState1D {
  EulerState1D(UniformGrid1D g, std::vector<double> rho, std::vector<double> mom,
               std::vector<double> energy, double gamma);

  UniformGrid1D grid;
  std::vector<double> rho;
  std::vector<double> mom;
  std::vector<double> energy;
  double gamma;

  std::size_t size() const { return rho.size(); }
  double velocity(std::size_t j) const { return mom[j] / rho[j]; }
  double pressure(std::size_t j) const;
  double sound_speed(std::size_t j) const;

  static EulerState1D from_primitive(UniformGrid1D g, const std::vector<double>& rho,
                                     const std::vector<double>& v, const std::vector<double>& p,
                                     double gamma);
};

// Primitive / conservative triple helpers shared by the Euler code.
struct Conserved {
  double rho, mom, energy;
};
double pressure_of(const Conserved& u, double gamma);

struct VorticityState2D {
  FvField2D chi;
  std::vector<double> psi_bar;
};

} // namespace invguard

#endif
