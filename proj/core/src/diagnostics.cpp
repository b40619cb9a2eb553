#include "invguard/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "invguard/bracket.hpp"
#include "invguard/correctors/entropy.hpp"
#include "invguard/errors.hpp"
#include "invguard/schemes/dg.hpp"
#include "invguard/schemes/poisson.hpp"
#include "invguard/schemes/spectral.hpp"

namespace invguard::diagnostics {

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> cols = {"t",         "mass",          "l2",      "tv",   "energy",
                                                "enstrophy", "entropy_total", "min_rho", "min_p"};
  return cols;
}

void write_report_header(std::ostream& out) {
  const auto& c = report_columns();
  for (std::size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
  out << '\n';
}

void write_report_row(std::ostream& out, const InvariantReport& r) {
  const auto old_prec = out.precision(17);
  auto opt = [&](const std::optional<double>& v) {
    out << ',';
    if (v) out << *v;
  };
  out << r.t;
  opt(r.mass);
  opt(r.l2);
  opt(r.tv);
  opt(r.energy);
  opt(r.enstrophy);
  opt(r.entropy_total);
  opt(r.min_rho);
  opt(r.min_p);
  out << '\n';
  out.precision(old_prec);
}

double total_variation(std::span<const double> u, bool periodic) {
  double tv = 0.0;
  for (std::size_t j = 1; j < u.size(); ++j) tv += std::abs(u[j] - u[j - 1]);
  if (periodic && u.size() > 1) tv += std::abs(u.front() - u.back());
  return tv;
}

InvariantReport invariant_report(const FvField1D& u, double t) {
  InvariantReport r;
  r.t = t;
  const auto& vol = u.grid.cell_volumes();
  r.mass = bracket(u.values, std::vector<double>(u.size(), 1.0), vol);
  r.l2 = 0.5 * bracket(u.values, u.values, vol);
  r.tv = total_variation(u.values, u.grid.periodic());
  return r;
}

InvariantReport invariant_report(const DgField& a, double t) {
  InvariantReport r;
  r.t = t;
  double m = 0.0;
  std::vector<double> means(a.n_cells());
  for (std::size_t j = 0; j < a.n_cells(); ++j) {
    m += a.a(j, 0) * a.grid.dx(j);
    means[j] = a.a(j, 0);
  }
  r.mass = m;
  r.l2 = schemes::dg_l2(a);
  r.tv = total_variation(means, a.grid.periodic());
  return r;
}

InvariantReport invariant_report(const SpectralField& u, double t) {
  InvariantReport r;
  r.t = t;
  r.mass = u.re[0] * u.length;
  r.l2 = schemes::spectral_l2(u);
  return r;
}

InvariantReport invariant_report(const FvField2D& chi, std::span<const double> psi_bar, double t) {
  InvariantReport r;
  r.t = t;
  const double area = chi.grid.cell_area();
  std::vector<double> psi;
  if (psi_bar.empty()) {
    psi = schemes::poisson_solve(chi);
    psi_bar = psi;
  }
  double m = 0.0;
  for (double v : chi.values) m += v;
  r.mass = m * area;
  r.enstrophy = 0.5 * bracket(chi.values, chi.values, area);
  r.l2 = r.enstrophy;
  r.energy = 0.5 * bracket(chi.values, psi_bar, area);
  return r;
}

InvariantReport invariant_report(const EulerState1D& s, double t) {
  InvariantReport r;
  r.t = t;
  const auto& vol = s.grid.cell_volumes();
  const std::vector<double> ones(s.size(), 1.0);
  r.mass = bracket(s.rho, ones, vol);
  r.tv = total_variation(s.rho, s.grid.periodic());
  double mr = s.rho[0], mp = s.pressure(0);
  bool positive = true;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double p = s.pressure(j);
    mr = std::min(mr, s.rho[j]);
    mp = std::min(mp, p);
    if (!(s.rho[j] > 0.0) || !(p > 0.0)) positive = false;
  }
  r.min_rho = mr;
  r.min_p = mp;
  if (positive) r.entropy_total = correctors::total_entropy(s);
  return r;
}

namespace {

void check_sizes(std::span<const double> a, std::span<const double> b, const char* who) {
  if (a.size() != b.size() || a.empty()) throw ArgumentError(std::string(who) + ": size mismatch");
}

} // namespace

double normalized_mse(std::span<const double> cand, std::span<const double> ref) {
  check_sizes(cand, ref, "normalized_mse");
  double se = 0.0, sr = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    se += (cand[i] - ref[i]) * (cand[i] - ref[i]);
    sr += ref[i] * ref[i];
  }
  if (sr == 0.0) return se == 0.0 ? 0.0 : INFINITY;
  return se / sr;
}

double mean_absolute_error(std::span<const double> cand, std::span<const double> ref) {
  check_sizes(cand, ref, "mean_absolute_error");
  double s = 0.0;
  for (std::size_t i = 0; i < cand.size(); ++i) s += std::abs(cand[i] - ref[i]);
  return s / static_cast<double>(cand.size());
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  check_sizes(a, b, "pearson_correlation");
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double x = a[i] - ma, y = b[i] - mb;
    sab += x * y;
    saa += x * x;
    sbb += y * y;
  }
  if (saa == 0.0 || sbb == 0.0) return NAN;
  return sab / std::sqrt(saa * sbb);
}

std::vector<double> error_metrics(const std::vector<SeriesPoint>& cand, const std::vector<SeriesPoint>& ref,
                                  ErrorMetric kind) {
  if (cand.size() != ref.size()) throw ArgumentError("error_metrics: snapshot count mismatch");
  std::vector<double> out(cand.size());
  for (std::size_t s = 0; s < cand.size(); ++s) {
    const double ta = cand[s].t, tb = ref[s].t;
    if (std::abs(ta - tb) > 1e-9 * std::max(1.0, std::abs(tb)))
      throw ArgumentError("error_metrics: snapshot times differ");
    if (cand[s].values.size() != ref[s].values.size()) throw ArgumentError("error_metrics: grid mismatch");
    switch (kind) {
    case ErrorMetric::NormalizedMse: out[s] = normalized_mse(cand[s].values, ref[s].values); break;
    case ErrorMetric::Mae: out[s] = mean_absolute_error(cand[s].values, ref[s].values); break;
    case ErrorMetric::VorticityCorrelation: out[s] = pearson_correlation(cand[s].values, ref[s].values); break;
    }
  }
  return out;
}

} // namespace invguard::diagnostics
