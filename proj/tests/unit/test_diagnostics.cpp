#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "invguard/bracket.hpp"
#include "invguard/correctors/entropy.hpp"
#include "invguard/diagnostics.hpp"
#include "invguard/errors.hpp"
#include "invguard/problems.hpp"
#include "invguard/schemes.hpp"
#include "invguard/timeloop.hpp"
#include "test_util.hpp"

using namespace invguard;
using namespace invguard::diagnostics;

TEST(Report, ZeroField) {
  auto r = invariant_report(FvField1D(UniformGrid1D(8, 1.0)));
  EXPECT_EQ(*r.mass, 0.0);
  EXPECT_EQ(*r.l2, 0.0);
  EXPECT_EQ(*r.tv, 0.0);
  EXPECT_FALSE(r.entropy_total);
  EXPECT_FALSE(r.energy);
  auto r2 = invariant_report(FvField2D(UniformGrid2D(4, 4, 1.0, 1.0)), {});
  EXPECT_EQ(*r2.energy, 0.0);
  EXPECT_EQ(*r2.enstrophy, 0.0);
}

TEST(Report, SineL2IsQuarterLength) {
  for (double L : {1.0, 3.0}) {
    auto u = problems::ic_sine(UniformGrid1D(40, L));
    EXPECT_NEAR(*invariant_report(u).l2, L / 4.0, 1e-14);
  }
}

TEST(Report, TotalVariation) {
  std::vector<double> u{0.0, 2.0, 1.0, 3.0};
  EXPECT_DOUBLE_EQ(total_variation(u, false), 5.0);
  EXPECT_DOUBLE_EQ(total_variation(u, true), 8.0);
}

TEST(Report, DgAndSpectralL2) {
  DgField a(UniformGrid1D(5, 2.0), 2, testutil::random_vector(15, 2));
  double ref = 0.0;
  for (std::size_t j = 0; j < 5; ++j)
    for (int k = 0; k <= 2; ++k) ref += 0.5 * 0.4 * a.a(j, k) * a.a(j, k) / (2.0 * k + 1.0);
  EXPECT_NEAR(*invariant_report(a).l2, ref, 1e-14);

  SpectralField s(3.0, testutil::random_vector(5, 3), testutil::random_vector(5, 4));
  auto samples = s.sample(32);
  double q = 0.0;
  for (double v : samples) q += 0.5 * v * v * 3.0 / 32.0;
  EXPECT_NEAR(*invariant_report(s).l2, q, 1e-13);
  EXPECT_NEAR(*invariant_report(s).mass, s.re[0] * 3.0, 1e-15);
}

TEST(Report, TwoDEnergyAndEnstrophy) {
  UniformGrid2D g(16, 16, 1.0, 1.0);
  auto chi = problems::ic_random_vorticity(g, 2, 4);
  auto psi = schemes::poisson_solve(chi);
  auto r = invariant_report(chi, psi);
  double e = 0.0, z = 0.0;
  for (std::size_t c = 0; c < g.size(); ++c) {
    e += 0.5 * chi.values[c] * psi[c] * g.cell_area();
    z += 0.5 * chi.values[c] * chi.values[c] * g.cell_area();
  }
  EXPECT_NEAR(*r.energy, e, 1e-14);
  EXPECT_NEAR(*r.enstrophy, z, 1e-14);
  EXPECT_GT(*r.energy, 0.0);
  EXPECT_NEAR(*invariant_report(chi, {}).energy, e, 1e-14);
}

TEST(Report, SodEntropy) {
  auto s = problems::ic_sod(UniformGrid1D(20, 1.0, Boundary::Dirichlet));
  auto r = invariant_report(s);
  double ref = 0.0;
  for (std::size_t j = 0; j < 20; ++j) {
    const double p = s.pressure(j);
    ref += s.rho[j] * std::pow(p / std::pow(s.rho[j], 1.4), 1.0 / 2.4) * s.grid.dx(j);
  }
  ASSERT_TRUE(r.entropy_total);
  EXPECT_NEAR(*r.entropy_total, ref, 1e-14);
  EXPECT_NEAR(*r.entropy_total, correctors::total_entropy(s), 1e-15);
  EXPECT_NEAR(*r.min_rho, 0.125, 1e-15);
  EXPECT_NEAR(*r.min_p, 0.1, 1e-15);
  EXPECT_NEAR(*r.mass, 0.5625, 1e-14);
}

TEST(Report, CsvLayout) {
  std::ostringstream out;
  write_report_header(out);
  InvariantReport r;
  r.t = 0.5;
  r.mass = 1.0;
  r.min_p = 0.25;
  write_report_row(out, r);
  EXPECT_EQ(out.str(), "t,mass,l2,tv,energy,enstrophy,entropy_total,min_rho,min_p\n0.5,1,,,,,,,0.25\n");
}

TEST(Report, MassConstantAlongFluxFormTrajectory) {
  auto u0 = problems::ic_sine(UniformGrid1D(64, 1.0), 0.5, 2, 0.3, 1.0);
  const auto& g = u0.grid;
  timeloop::Simulation sim;
  sim.y0 = u0.values;
  sim.dt_fn = [&](const timeloop::State& y, double) {
    return timeloop::cfl_dt(FvField1D(g, y), schemes::ScalarEquation::burgers(), 0.3, 1.0);
  };
  sim.rhs = [&](const timeloop::State& y, double, double) {
    FvField1D u(g, y);
    return schemes::fv_rhs_1d(schemes::numerical_flux_1d(schemes::FluxScheme::MusclMc, u,
                                                         schemes::ScalarEquation::burgers()), g);
  };
  timeloop::StepPlan plan;
  plan.t_end = 0.5;
  plan.snapshot_interval = 0.05;
  auto tr = timeloop::run(plan, sim);
  ASSERT_FALSE(tr.error);
  const double m0 = *invariant_report(u0).mass;
  for (const auto& s : tr.snapshots)
    EXPECT_LE(std::abs(*invariant_report(FvField1D(g, s.y)).mass - m0), 1e-13 * std::abs(m0));
}

TEST(Metrics, IdentityAndNegation) {
  auto a = testutil::random_vector(50, 1);
  std::vector<double> neg(a);
  for (auto& x : neg) x = -x;
  EXPECT_EQ(normalized_mse(a, a), 0.0);
  EXPECT_EQ(mean_absolute_error(a, a), 0.0);
  EXPECT_NEAR(pearson_correlation(a, a), 1.0, 1e-15);
  EXPECT_NEAR(pearson_correlation(neg, a), -1.0, 1e-15);
}

TEST(Metrics, HandThreeCells) {
  std::vector<double> ref{1.0, 2.0, 3.0}, cand{1.0, 2.0, 4.0};
  // MSE 1/3 over mean square 14/3
  EXPECT_NEAR(normalized_mse(cand, ref), 1.0 / 14.0, 1e-15);
  EXPECT_NEAR(mean_absolute_error(cand, ref), 1.0 / 3.0, 1e-15);
}

TEST(Metrics, CorrelationAffineInvariance) {
  auto a = testutil::random_vector(40, 5), b = testutil::random_vector(40, 6);
  std::vector<double> a2(a), b2(b);
  for (auto& x : a2) x = 3.0 * x + 1.0;
  for (auto& x : b2) x = 3.0 * x + 1.0;
  EXPECT_NEAR(pearson_correlation(a2, b2), pearson_correlation(a, b), 1e-14);
}

TEST(Metrics, SeriesAndMismatch) {
  std::vector<SeriesPoint> ref{{0.0, {1.0, 2.0}}, {1.0, {2.0, 2.0}}};
  std::vector<SeriesPoint> cand{{0.0, {1.0, 2.0}}, {1.0, {2.0, 0.0}}};
  auto m = error_metrics(cand, ref, ErrorMetric::NormalizedMse);
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0], 0.0);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
  auto bad_t = cand;
  bad_t[1].t = 1.1;
  EXPECT_THROW(error_metrics(bad_t, ref, ErrorMetric::Mae), ArgumentError);
  auto bad_n = cand;
  bad_n[1].values.push_back(0.0);
  EXPECT_THROW(error_metrics(bad_n, ref, ErrorMetric::Mae), ArgumentError);
  cand.pop_back();
  EXPECT_THROW(error_metrics(cand, ref, ErrorMetric::VorticityCorrelation), ArgumentError);
}

TEST(Metrics, CoarseGrainedComparison) {
  // a fine-grid sine compared with its own coarse-grained version after averaging
  auto fine = problems::ic_sine(UniformGrid1D(128, 1.0));
  auto coarse = coarse_grain(fine, 4);
  auto direct = problems::ic_sine(UniformGrid1D(32, 1.0));
  EXPECT_LT(normalized_mse(direct.values, coarse.values), 1e-3);
  EXPECT_GT(pearson_correlation(direct.values, coarse.values), 0.999);
}
