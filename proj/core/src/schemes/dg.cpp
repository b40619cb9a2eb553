#include "invguard/schemes/dg.hpp"

#include <array>
#include <cmath>

#include "invguard/errors.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::schemes {

namespace {

struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};

Quadrature gauss_legendre(int n) {
  switch (n) {
  case 1: return {{0.0}, {2.0}};
  case 2: {
    const double a = 1.0 / std::sqrt(3.0);
    return {{-a, a}, {1.0, 1.0}};
  }
  case 3: {
    const double a = std::sqrt(0.6);
    return {{-a, 0.0, a}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
  }
  case 4: {
    const double s = 2.0 * std::sqrt(6.0 / 5.0);
    const double a = std::sqrt(3.0 / 7.0 - s / 7.0), b = std::sqrt(3.0 / 7.0 + s / 7.0);
    const double wa = (18.0 + std::sqrt(30.0)) / 36.0, wb = (18.0 - std::sqrt(30.0)) / 36.0;
    return {{-b, -a, a, b}, {wb, wa, wa, wb}};
  }
  default:
    throw ConfigurationError("gauss_legendre: unsupported point count");
  }
}

void check_dg(const DgField& a) {
  if (a.p < 0 || a.p > 2) throw ConfigurationError("DG degree must be 0, 1 or 2");
  if (!a.grid.periodic()) throw ConfigurationError("DG discretization is implemented for periodic grids only");
}

double sign_pow(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

} // namespace

DgFluxRule dg_flux_advection_upwind(double c) {
  return {[c](double um, double up) { return c >= 0.0 ? c * um : c * up; }, [c](double u) { return c * u; }};
}

DgFluxRule dg_flux_advection_centered(double c) {
  return {[c](double um, double up) { return 0.5 * (c * um + c * up); }, [c](double u) { return c * u; }};
}

DgFluxRule dg_flux_burgers_godunov() {
  return {[](double um, double up) { return godunov_burgers(um, up); }, [](double u) { return 0.5 * u * u; }};
}

DgFluxRule dg_flux_burgers_centered_demo() {
  return {[](double um, double up) { return (um + up) * (um + up) / 8.0; }, [](double u) { return 0.5 * u * u; }};
}

std::vector<double> dg_rhs(const DgField& a, const DgFluxRule& flux) {
  check_dg(a);
  const std::size_t n = a.n_cells(), nb = a.n_basis();
  // face k between cells k-1 and k, face n == face 0
  std::vector<double> f(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t l = (k + n - 1) % n;
    f[k] = flux.numerical(a.right_value(l), a.left_value(k));
  }
  f[n] = f[0];

  const Quadrature q = gauss_legendre(a.p + 2);
  std::vector<double> rhs(n * nb);
  for (std::size_t j = 0; j < n; ++j) {
    rhs[j * nb] = -(f[j + 1] - f[j]);
    if (nb == 1) continue;
    std::array<double, 4> fq{};
    for (std::size_t s = 0; s < q.x.size(); ++s) fq[s] = flux.physical(a.eval(j, q.x[s]));
    for (std::size_t k = 1; k < nb; ++k) {
      const int ki = static_cast<int>(k);
      double vol = 0.0;
      for (std::size_t s = 0; s < q.x.size(); ++s) vol += q.w[s] * fq[s] * legendre_derivative(ki, q.x[s]);
      rhs[j * nb + k] = -f[j + 1] + sign_pow(ki) * f[j] + vol;
    }
  }
  return rhs;
}

std::vector<double> dg_diffusion_rhs(const DgField& a) {
  check_dg(a);
  const std::size_t n = a.n_cells(), nb = a.n_basis();
  const int p = a.p;
  // stiffness S_kl = integral of P_k' P_l' over [-1, 1]
  const double S[3][3] = {{0.0, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 6.0}};
  std::vector<double> B(n * nb, 0.0);

  for (std::size_t j = 0; j < n; ++j) {
    const double scale = 2.0 / a.grid.dx(j);
    for (std::size_t k = 0; k < nb; ++k) {
      double s = 0.0;
      for (std::size_t l = 0; l < nb; ++l) s += S[k][l] * a.a(j, l);
      B[j * nb + k] += scale * s;
    }
  }

  const double pen = static_cast<double>((p + 1) * (p + 1));
  for (std::size_t face = 0; face < n; ++face) {
    const std::size_t L = (face + n - 1) % n, R = face;
    const double dxl = a.grid.dx(L), dxr = a.grid.dx(R);
    const double sigma = pen / (0.5 * (dxl + dxr));
    double um = 0.0, up = 0.0, dum = 0.0, dup = 0.0;
    for (std::size_t l = 0; l < nb; ++l) {
      const int li = static_cast<int>(l);
      um += a.a(L, l);
      up += a.a(R, l) * sign_pow(li);
      dum += a.a(L, l) * legendre_derivative(li, 1.0);
      dup += a.a(R, l) * legendre_derivative(li, -1.0);
    }
    dum *= 2.0 / dxl;
    dup *= 2.0 / dxr;
    const double jump_u = um - up;
    const double avg_du = 0.5 * (dum + dup);
    for (std::size_t k = 0; k < nb; ++k) {
      const int ki = static_cast<int>(k);
      // test function psi_Lk: v- = 1, v+ = 0
      {
        const double jump_v = 1.0;
        const double avg_dv = 0.5 * (2.0 / dxl) * legendre_derivative(ki, 1.0);
        B[L * nb + k] += -avg_du * jump_v - avg_dv * jump_u + sigma * jump_u * jump_v;
      }
      // test function psi_Rk: v- = 0, v+ = P_k(-1)
      {
        const double jump_v = -sign_pow(ki);
        const double avg_dv = 0.5 * (2.0 / dxr) * legendre_derivative(ki, -1.0);
        B[R * nb + k] += -avg_du * jump_v - avg_dv * jump_u + sigma * jump_u * jump_v;
      }
    }
  }
  for (double& v : B) v = -v;
  return B;
}

std::vector<double> dg_coefficient_rate(std::span<const double> rhs, const DgField& a) {
  if (rhs.size() != a.coeffs.size()) throw ArgumentError("dg_coefficient_rate: size mismatch");
  const std::size_t nb = a.n_basis();
  std::vector<double> out(rhs.size());
  for (std::size_t j = 0; j < a.n_cells(); ++j)
    for (std::size_t k = 0; k < nb; ++k)
      out[j * nb + k] = rhs[j * nb + k] / (a.grid.dx(j) * legendre_norm(static_cast<int>(k)));
  return out;
}

double dg_bracket(std::span<const double> a, std::span<const double> rhs) {
  if (a.size() != rhs.size()) throw ArgumentError("dg_bracket: size mismatch");
  double s = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) s += a[q] * rhs[q];
  return s;
}

double dg_l2(const DgField& a) {
  const std::size_t nb = a.n_basis();
  double s = 0.0;
  for (std::size_t j = 0; j < a.n_cells(); ++j)
    for (std::size_t k = 0; k < nb; ++k)
      s += a.a(j, k) * a.a(j, k) * a.grid.dx(j) * legendre_norm(static_cast<int>(k));
  return 0.5 * s;
}

} // namespace invguard::schemes
