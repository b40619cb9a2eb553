#ifndef INVGUARD_PROBLEMS_HPP
#define INVGUARD_PROBLEMS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/schemes/euler1d.hpp"

namespace invguard::problems {

// mt19937_64 with hand-written conversions so draws are identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform();                    // [0, 1)
  double uniform(double a, double b);  // [a, b)
  long integer(long lo, long hi);      // inclusive
  double normal();

private:
  std::mt19937_64 eng_;
};

struct SineMode {
  double amplitude = 0.0;
  int k = 1;
  double phase = 0.0;
  double omega = 0.0;
};

// sum_i A_i sin(2 pi k_i x / L - omega_i t + phi_i)
struct SumOfSines {
  double length = 1.0;
  std::vector<SineMode> modes;
  double eval(double x, double t = 0.0) const;
  // Midpoint-rule cell averages.
  std::vector<double> cell_values(const UniformGrid1D& grid, double t = 0.0) const;
};

enum class SineFamily { Advection, BurgersForcing };

// Advection: 1..6 modes, k in 1..4, A in [-1, 1], phi in [0, 2 pi].
// Burgers forcing: 20 modes, k in 3..6, A in [-0.5, 0.5], omega in [-0.4, 0.4], phi in [0, 2 pi].
SumOfSines draw_sum_of_sines(double length, std::uint64_t seed, SineFamily family);

FvField1D ic_sum_of_sines(const UniformGrid1D& grid, std::uint64_t seed, SineFamily family = SineFamily::Advection);

// offset + amplitude sin(2 pi k x / L + phase), midpoint rule.
FvField1D ic_sine(const UniformGrid1D& grid, double amplitude = 1.0, int k = 1, double phase = 0.0,
                  double offset = 0.0);

struct EulerSineParams {
  double rho_min = 0.75;
  double p_min = 0.5;
  double gamma = 1.4;
  int k = 1;
};

// rho = max(rho_min, A sin(..)), v = A sin(..), p = max(p_min, A sin(..)); independent A in [0,1]
// and phases per field.
EulerState1D ic_euler_sines(const UniformGrid1D& grid, std::uint64_t seed, const EulerSineParams& prm = {});

struct SodParams {
  double rho_l = 1.0, v_l = 0.0, p_l = 1.0;
  double rho_r = 0.125, v_r = 0.0, p_r = 0.1;
  double gamma = 1.4;
  double jump_fraction = 0.5;
};

EulerState1D ic_sod(const UniformGrid1D& grid, const SodParams& prm = {});
schemes::EulerBoundary sod_boundary(const SodParams& prm = {});
Conserved conserved_from_primitive(double rho, double v, double p, double gamma);

struct KolmogorovForcing {
  int k = 4;
  double drag = 0.1;
  double nu = 1e-3;

  // (2 pi k / L) cos(2 pi k y / L) - drag chi
  double eval(double y, double length, double chi) const;
  // Midpoint values for the whole grid, drag applied with the given chi.
  std::vector<double> evaluate(const FvField2D& chi) const;
};

// Zero-mean Gaussian random field with a flat spectrum on 1 <= |k| <= kmax, unit rms.
FvField2D ic_random_vorticity(const UniformGrid2D& grid, std::uint64_t seed, int kmax = 8);

} // namespace invguard::problems

#endif
