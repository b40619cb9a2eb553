#ifndef INVGUARD_HARNESS_VERIFY_HPP
#define INVGUARD_HARNESS_VERIFY_HPP

#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "invguard/correctors.hpp"

namespace invguard::harness {

// The correctors under test. The suite only calls through this table, so a fixture can swap in a
// broken implementation and check that the suite notices.
struct CorrectorTable {
  std::function<correctors::Corrected<std::vector<double>>(std::span<const double>, const FvField1D&,
                                                           const correctors::L2RateTarget&)>
      flux_l2_1d;
  std::function<correctors::Flux2DCorrected(const schemes::Fluxes2D&, const FvField2D&, const correctors::Flux2DTarget&)>
      flux_l2_2d;
  std::function<correctors::Corrected<std::vector<double>>(std::span<const double>, const FvField1D&,
                                                           const correctors::L2RateTarget&)>
      rhs_l2;
  std::function<correctors::IncrementCorrected(std::span<const double>, const FvField1D&, double,
                                               std::span<const double>)>
      increment_l2;
  std::function<correctors::Corrected<std::vector<double>>(std::span<const double>, const DgField&,
                                                           const correctors::L2RateTarget&)>
      dg_l2;
  std::function<correctors::Corrected<SpectralField>(const SpectralField&, const SpectralField&,
                                                     const correctors::L2RateTarget&)>
      spectral_l2;
  std::function<correctors::Euler2DCorrected(std::span<const double>, const VorticityState2D&,
                                             const correctors::L2RateTarget&)>
      euler2d;
  std::function<correctors::EntropyCorrected(const schemes::EulerFluxes1D&, const EulerState1D&,
                                             const correctors::EntropyRateTarget&, bool)>
      entropy;
  std::function<correctors::PositivityLimited(const schemes::EulerFluxes1D&, const schemes::EulerFluxes1D&,
                                              const EulerState1D&, bool, double, double)>
      positivity;

  static CorrectorTable defaults();
};

// Replaces one corrector by a version that applies its correction with the opposite sign.
// Known names: flux_l2_1d, rhs_l2, dg_l2, euler2d.
CorrectorTable with_sign_flip(CorrectorTable table, const std::string& which);

struct PropertyResult {
  std::string corrector;
  std::string property;
  long cases = 0;
  long failures = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  std::string note;
  bool pass() const { return failures == 0; }
};

struct VerifyReport {
  std::vector<PropertyResult> properties;
  std::size_t corrector_count = 0;
  bool all_pass() const;
};

VerifyReport run_verify(const VerifyConfig& cfg, const CorrectorTable& table = CorrectorTable::defaults());
void print_verify_table(std::ostream& out, const VerifyReport& report);

} // namespace invguard::harness

#endif
