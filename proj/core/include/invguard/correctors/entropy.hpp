#ifndef INVGUARD_CORRECTORS_ENTROPY_HPP
#define INVGUARD_CORRECTORS_ENTROPY_HPP

#include <vector>

#include "invguard/fields.hpp"
#include "invguard/schemes/euler1d.hpp"

namespace invguard::correctors {

using schemes::Triple;

// eta = rho g(s) with s = log(p / rho^gamma), g(s) = exp(s / (gamma + 1)); psi = eta v;
// p* = ((gamma - 1)/(gamma + 1)) (p / rho^gamma)^(1/(gamma + 1)); w = (p*/p)(E, -rho v, rho).
struct EntropyPoint {
  double eta, psi, p_star;
  Triple w;
};

// Throws PositivityViolation for non-positive rho or p.
EntropyPoint entropy_point(const Conserved& u, double gamma);

struct EntropyVariables1D {
  std::vector<Triple> w;
  std::vector<double> eta;
  std::vector<double> p_star;
  std::vector<double> psi;
};

EntropyVariables1D entropy_variables_euler1d(const EulerState1D& s);

// sum_j eta_j dx_j
double total_entropy(const EulerState1D& s);

// d/dt sum eta dx implied by the face fluxes, by summation by parts.
double entropy_rate(const schemes::EulerFluxes1D& f, const std::vector<Triple>& w, bool periodic);

// psi(0) - psi(L); psi at each end is the smaller of the boundary-state and adjacent-cell values.
double estimate_boundary_entropy_flux(const EulerState1D& s, const schemes::EulerBoundary& bc);

struct EntropyRateTarget {
  double boundary_flux_estimate = 0.0;
  double ratio = 1.0; // R >= 0
  double resolve(double old_rate) const;
};

struct EntropyCorrected {
  schemes::EulerFluxes1D value;
  double old_rate = 0.0;
  double new_rate = 0.0;
  bool applied = false;
  bool anti_diffusive = false; // target below the uncorrected rate
  double coefficient = 0.0;
};

// Default G on interior faces: (0, v_k - v_{k-1}, p_k - p_{k-1}).
std::vector<Triple> default_entropy_weights(const EulerState1D& s, bool periodic);

// Adjusts interior (or, when periodic, all) face fluxes along G so the entropy rate matches the target.
// An empty G selects the default weights.
EntropyCorrected correct_entropy_euler1d(const schemes::EulerFluxes1D& fluxes, const EulerState1D& s,
                                         const EntropyRateTarget& target, bool periodic,
                                         const std::vector<Triple>& G = {});

struct PositivityLimited {
  schemes::EulerFluxes1D value;
  std::vector<double> theta; // per face
  std::size_t n_limited = 0;
};

// Per-face blend theta F + (1 - theta) F_LF with the largest theta (bisection to 1e-10) keeping the
// two half-states of each face above eps_pos in density and pressure after a forward-Euler step of dt.
PositivityLimited limit_positivity_euler1d(const schemes::EulerFluxes1D& fluxes, const EulerState1D& s,
                                           const schemes::EulerBoundary& bc, double dt, double eps_pos);

// Same, against a caller-supplied low-order flux.
PositivityLimited limit_positivity_euler1d(const schemes::EulerFluxes1D& fluxes,
                                           const schemes::EulerFluxes1D& low_order, const EulerState1D& s,
                                           bool periodic, double dt, double eps_pos);

// True when both half-states of face k are admissible at blend theta.
bool positivity_face_ok(const schemes::EulerFluxes1D& fluxes, const schemes::EulerFluxes1D& low_order,
                        const EulerState1D& s, bool periodic, double dt, double eps_pos, std::size_t k, double theta);

} // namespace invguard::correctors

#endif
