#ifndef INVGUARD_HARNESS_SURROGATE_HPP
#define INVGUARD_HARNESS_SURROGATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::harness {

// Stand-in for a learned flux: the base scheme's face fluxes times (1 + alpha s_k), with s a
// seeded random Fourier series on 1 <= m <= kmax sampled at the faces and scaled to max |s| = 1.
// kmax = 0 gives s = 1, a uniform rescaling of the base flux.
// s is periodic, so f_0 == f_N survives and mass is still conserved.
class SurrogateFluxRule {
public:
  SurrogateFluxRule(const UniformGrid1D& grid, double amplitude, std::uint64_t seed, int kmax = 4,
                    schemes::FluxScheme base = schemes::FluxScheme::MusclMc);

  std::vector<double> fluxes(const FvField1D& u, const schemes::ScalarEquation& eq,
                             const schemes::FluxOptions& opt = {}) const;
  // Multiplies in place; used when the base fluxes come from elsewhere.
  void perturb(std::span<double> f) const;

  double amplitude() const { return alpha_; }
  const std::vector<double>& shape() const { return s_; }
  // Largest multiplier magnitude, for CFL estimates.
  double max_factor() const;

private:
  double alpha_;
  schemes::FluxScheme base_;
  std::vector<double> s_;
};

} // namespace invguard::harness

#endif
