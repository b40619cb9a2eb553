#ifndef INVGUARD_DIAGNOSTICS_HPP
#define INVGUARD_DIAGNOSTICS_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invguard/fields.hpp"

namespace invguard::diagnostics {

struct InvariantReport {
  double t = 0.0;
  std::optional<double> mass;
  std::optional<double> l2;
  std::optional<double> tv;
  std::optional<double> energy;
  std::optional<double> enstrophy;
  std::optional<double> entropy_total;
  std::optional<double> min_rho;
  std::optional<double> min_p;
};

// Column order is fixed: t,mass,l2,tv,energy,enstrophy,entropy_total,min_rho,min_p. Absent fields are empty.
const std::vector<std::string>& report_columns();
void write_report_header(std::ostream& out);
void write_report_row(std::ostream& out, const InvariantReport& r);

double total_variation(std::span<const double> u, bool periodic);

InvariantReport invariant_report(const FvField1D& u, double t = 0.0);
InvariantReport invariant_report(const DgField& a, double t = 0.0);
InvariantReport invariant_report(const SpectralField& u, double t = 0.0);
// psi_bar is recomputed from chi when empty.
InvariantReport invariant_report(const FvField2D& chi, std::span<const double> psi_bar, double t = 0.0);
// Entropy fields are only filled when every cell has positive density and pressure.
InvariantReport invariant_report(const EulerState1D& s, double t = 0.0);

enum class ErrorMetric { NormalizedMse, Mae, VorticityCorrelation };

// One snapshot as a flat vector of cell values.
struct SeriesPoint {
  double t;
  std::vector<double> values;
};

double normalized_mse(std::span<const double> cand, std::span<const double> ref);
double mean_absolute_error(std::span<const double> cand, std::span<const double> ref);
double pearson_correlation(std::span<const double> a, std::span<const double> b);

// Per-snapshot metric; times and sizes must match (times to 1e-9 relative).
std::vector<double> error_metrics(const std::vector<SeriesPoint>& candidate, const std::vector<SeriesPoint>& reference,
                                  ErrorMetric kind);

} // namespace invguard::diagnostics

#endif
