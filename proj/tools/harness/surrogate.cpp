#include "harness/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "invguard/errors.hpp"
#include "invguard/problems.hpp"

namespace invguard::harness {

SurrogateFluxRule::SurrogateFluxRule(const UniformGrid1D& grid, double amplitude, std::uint64_t seed, int kmax,
                                     schemes::FluxScheme base)
    : alpha_(amplitude), base_(base) {
  if (kmax < 0) throw ArgumentError("SurrogateFluxRule: kmax must be >= 0");
  if (!grid.periodic()) throw ConfigurationError("SurrogateFluxRule: periodic grid required");
  problems::Rng rng(seed);
  std::vector<double> a(kmax), b(kmax);
  for (int m = 0; m < kmax; ++m) {
    a[m] = rng.normal();
    b[m] = rng.normal();
  }
  const std::size_t n = grid.n_cells();
  if (kmax == 0) {
    // the constant field: a uniform rescaling of the base flux
    s_.assign(n + 1, 1.0);
    return;
  }
  s_.assign(n + 1, 0.0);
  double x = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    double v = 0.0;
    for (int m = 0; m < kmax; ++m) {
      const double th = 2.0 * std::numbers::pi * (m + 1) * x / grid.length();
      v += a[m] * std::cos(th) + b[m] * std::sin(th);
    }
    s_[k] = v;
    x += grid.dx(k);
  }
  s_[n] = s_[0];
  double smax = 0.0;
  for (double v : s_) smax = std::max(smax, std::abs(v));
  for (double& v : s_) v /= smax;
}

std::vector<double> SurrogateFluxRule::fluxes(const FvField1D& u, const schemes::ScalarEquation& eq,
                                              const schemes::FluxOptions& opt) const {
  auto f = schemes::numerical_flux_1d(base_, u, eq, opt);
  perturb(f);
  return f;
}

void SurrogateFluxRule::perturb(std::span<double> f) const {
  if (f.size() != s_.size()) throw ArgumentError("SurrogateFluxRule: flux count does not match the grid");
  if (alpha_ == 0.0) return;
  for (std::size_t k = 0; k < f.size(); ++k) f[k] *= 1.0 + alpha_ * s_[k];
}

double SurrogateFluxRule::max_factor() const {
  double m = 0.0;
  for (double v : s_) m = std::max(m, std::abs(1.0 + alpha_ * v));
  return m;
}

} // namespace invguard::harness
