#include "harness/models.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

#include "harness/surrogate.hpp"
#include "invguard/bracket.hpp"
#include "invguard/correctors.hpp"
#include "invguard/errors.hpp"
#include "invguard/problems.hpp"
#include "invguard/schemes.hpp"

namespace invguard::harness {

namespace {

using timeloop::State;
namespace cr = correctors;
namespace sc = schemes;

[[noreturn]] void bad(const VariantSpec& v, const std::string& msg) {
  throw ConfigurationError("variant '" + v.label + "': " + msg);
}

bool has(const VariantSpec& v, Corrector c) { return std::find(v.chain.begin(), v.chain.end(), c) != v.chain.end(); }

void allow_only(const VariantSpec& v, std::initializer_list<Corrector> ok, const std::string& model) {
  for (auto c : v.chain)
    if (std::find(ok.begin(), ok.end(), c) == ok.end())
      bad(v, "corrector " + corrector_name(c) + " does not apply to the " + model + " model");
}

// Resolves the configured target at time t.
struct TargetFn {
  TargetSpec spec;
  std::shared_ptr<const cr::TrackedRateSeries> tracked;

  cr::L2RateTarget operator()(double t) const {
    switch (spec.kind) {
    case TargetSpec::Kind::Clamp: return cr::L2RateTarget::clamp();
    case TargetSpec::Kind::Fixed: return cr::L2RateTarget::fixed(spec.rate);
    case TargetSpec::Kind::Tracked: return tracked->target(t);
    }
    return cr::L2RateTarget::clamp();
  }

  // A tracked rate covers the whole dynamics; the corrected part only gets what is left after the
  // terms added outside the corrector (forcing, viscosity). The clamp applies to that remainder.
  cr::L2RateTarget operator()(double t, double external) const {
    if (spec.kind != TargetSpec::Kind::Tracked) return (*this)(t);
    return cr::L2RateTarget::tracked(std::min(tracked->raw(t) - external, 0.0));
  }
};

TargetFn make_target(const VariantSpec& v, const ModelOptions& opt) {
  TargetFn f{v.target, opt.tracked};
  if (v.target.kind == TargetSpec::Kind::Tracked && (!f.tracked || f.tracked->empty()))
    bad(v, "tracked target without a rate series");
  return f;
}

void log_stage(const std::shared_ptr<std::vector<StageRecord>>& log, const StageRecord& r) {
  if (log) log->push_back(r);
}

std::function<double(double)> analytic_ic(const ProblemSpec& p) {
  switch (p.ic) {
  case InitialCondition::Zero: return [](double) { return 0.0; };
  case InitialCondition::Sine: {
    const double A = p.amplitude, k = p.wavenumber, ph = p.phase, off = p.offset, L = p.length;
    return [=](double x) { return off + A * std::sin(2.0 * std::numbers::pi * k * x / L + ph); };
  }
  case InitialCondition::SumOfSines: {
    auto s = problems::draw_sum_of_sines(p.length, p.ic_seed, problems::SineFamily::Advection);
    return [s](double x) { return s.eval(x); };
  }
  default: throw ConfigurationError("initial condition has no analytic scalar form");
  }
}

// Exact cell averages of the sine-type initial condition translated by `shift`.
std::vector<double> sine_cell_averages(const ProblemSpec& p, std::size_t n, double shift) {
  problems::SumOfSines s;
  s.length = p.length;
  if (p.ic == InitialCondition::Sine) {
    s.modes.push_back({p.amplitude, p.wavenumber, p.phase, 0.0});
  } else if (p.ic == InitialCondition::SumOfSines) {
    s = problems::draw_sum_of_sines(p.length, p.ic_seed, problems::SineFamily::Advection);
  } else if (p.ic != InitialCondition::Zero) {
    throw ConfigurationError("initial condition is not sine-type");
  }
  const double dx = p.length / static_cast<double>(n);
  std::vector<double> out(n, p.ic == InitialCondition::Sine ? p.offset : 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double a = static_cast<double>(j) * dx - shift, b = a + dx;
    for (const auto& m : s.modes) {
      const double w = 2.0 * std::numbers::pi * m.k / p.length;
      out[j] += -m.amplitude * (std::cos(w * b + m.phase) - std::cos(w * a + m.phase)) / (w * dx);
    }
  }
  return out;
}

// Cell averages, so a coarse run and the coarse-grained reference start from the same state.
FvField1D scalar_ic(const ProblemSpec& p, const UniformGrid1D& g) {
  switch (p.ic) {
  case InitialCondition::Zero:
  case InitialCondition::Sine:
  case InitialCondition::SumOfSines: return FvField1D(g, sine_cell_averages(p, g.n_cells(), 0.0));
  default: throw ConfigurationError("initial condition does not apply to scalar 1D problems");
  }
}

sc::ScalarEquation scalar_equation(const ProblemSpec& p) {
  return p.equation == Equation::Advection ? sc::ScalarEquation::advection(p.speed) : sc::ScalarEquation::burgers();
}

sc::FluxScheme flux_scheme(const VariantSpec& v) {
  switch (v.scheme) {
  case Scheme::Centered: return sc::FluxScheme::Centered;
  case Scheme::Upwind: return sc::FluxScheme::Upwind;
  case Scheme::Godunov: return sc::FluxScheme::Godunov;
  case Scheme::LaxFriedrichs: return sc::FluxScheme::LaxFriedrichs;
  case Scheme::Muscl:
  case Scheme::Surrogate: return sc::FluxScheme::MusclMc;
  default: bad(v, "scheme " + scheme_name(v.scheme) + " is not a face-flux scheme");
  }
}

void common_scalar_outputs(Model& m, const UniformGrid1D& g) {
  m.report = [g](const State& y, double t) { return diagnostics::invariant_report(FvField1D(g, y), t); };
  m.observable = [](const State& y) { return y; };
  m.tracked_quantity = [](const diagnostics::InvariantReport& r) { return r.l2.value_or(0.0); };
  m.fields = [](const State& y) { return FieldColumns{{"u"}, {y}}; };
}

Model scalar_fv_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  const UniformGrid1D g(n, p.length, p.boundary);
  const auto eq = scalar_equation(p);
  const bool advective = v.scheme == Scheme::Advective;
  if (advective) {
    if (p.equation == Equation::Advection) bad(v, "the advective scheme is Burgers-only");
    allow_only(v, {Corrector::RhsL2}, "advective finite-difference");
  } else {
    allow_only(v, {Corrector::FluxL2, Corrector::RhsL2}, "scalar finite-volume");
    flux_scheme(v);
  }
  std::shared_ptr<SurrogateFluxRule> surrogate;
  if (v.scheme == Scheme::Surrogate)
    surrogate = std::make_shared<SurrogateFluxRule>(g, v.surrogate.amplitude, v.surrogate.seed, v.surrogate.kmax);

  const auto target = make_target(v, opt);
  const bool forced = p.equation == Equation::BurgersForced;
  const double nu = p.nu;
  std::shared_ptr<problems::SumOfSines> forcing;
  if (forced)
    forcing = std::make_shared<problems::SumOfSines>(
        problems::draw_sum_of_sines(p.length, p.forcing_seed, problems::SineFamily::BurgersForcing));
  const bool flux_corr = has(v, Corrector::FluxL2), rhs_corr = has(v, Corrector::RhsL2);
  const auto log = m.stages;
  const auto scheme = advective ? sc::FluxScheme::Upwind : flux_scheme(v);

  m.sim.y0 = opt.initial ? *opt.initial : scalar_ic(p, g).values;
  m.sim.rhs = [=](const State& y, double t, double dt) {
    FvField1D u(g, y);
    StageRecord rec;
    rec.t = t;
    rec.dt = dt;
    State extra;
    if (nu > 0.0) {
      extra = sc::laplacian_1d(y, g);
      for (double& e : extra) e *= nu;
    }
    if (forcing) {
      auto F = forcing->cell_values(g, t);
      if (extra.empty()) extra.assign(F.size(), 0.0);
      for (std::size_t j = 0; j < F.size(); ++j) extra[j] += F[j];
    }
    const double external = extra.empty() ? 0.0 : bracket(y, extra, g.cell_volumes());
    State N;
    if (advective) {
      N = sc::burgers_advective_rhs(u);
    } else {
      sc::FluxOptions fo;
      if (scheme == sc::FluxScheme::LaxFriedrichs) fo.lf_coefficient = g.dx_min() / (2.0 * dt);
      auto f = surrogate ? surrogate->fluxes(u, eq, fo) : sc::numerical_flux_1d(scheme, u, eq, fo);
      if (flux_corr) {
        auto c = cr::correct_flux_l2_1d(f, u, target(t, external));
        f = std::move(c.value);
        rec.old_rate = c.old_rate;
        rec.new_rate = c.new_rate;
        rec.applied = c.applied;
      }
      N = sc::fv_rhs_1d(f, g);
    }
    if (rhs_corr) {
      auto c = cr::correct_rhs_mass_l2(N, u, target(t, external));
      N = std::move(c.value);
      rec.old_rate = c.old_rate;
      rec.new_rate = c.new_rate;
      rec.applied = c.applied;
    }
    rec.target = rec.new_rate;
    rec.measured = bracket(y, N, g.cell_volumes());
    if (flux_corr || rhs_corr) log_stage(log, rec);
    for (std::size_t j = 0; j < extra.size(); ++j) N[j] += extra[j];
    return N;
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  const double factor = surrogate ? std::max(1.0, surrogate->max_factor()) : 1.0;
  m.sim.dt_fn = [=](const State& y, double) {
    double dt = timeloop::cfl_dt(FvField1D(g, y), eq, cfl / factor, dt_max);
    if (nu > 0.0) dt = std::min(dt, cfl * g.dx_min() * g.dx_min() / nu);
    return dt;
  };
  common_scalar_outputs(m, g);
  return m;
}

Model ftcs_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  if (p.equation != Equation::Advection) bad(v, "ftcs is advection-only");
  if (p.boundary != Boundary::Periodic) bad(v, "ftcs needs a periodic grid");
  allow_only(v, {Corrector::IncrementL2}, "ftcs");
  const UniformGrid1D g(n, p.length, p.boundary);
  const double c = p.speed;
  const auto target = make_target(v, opt);
  const bool corr = has(v, Corrector::IncrementL2);
  const auto log = m.stages;
  auto warned = std::make_shared<std::atomic<bool>>(false);
  m.sim.y0 = opt.initial ? *opt.initial : scalar_ic(p, g).values;
  m.sim.increment = [=](const State& y, double t, double dt) {
    FvField1D u(g, y);
    auto du = sc::ftcs_increment(u, c, dt);
    if (!corr) return du;
    // the uncorrected change decides a clamp target
    double old_delta = 0.0;
    for (std::size_t j = 0; j < n; ++j) old_delta += (y[j] * du[j] + 0.5 * du[j] * du[j]) * g.dx(j);
    const double delta = target(t).resolve(old_delta / dt) * dt;
    cr::IncrementCorrected res;
    try {
      res = cr::correct_increment_mass_l2(du, u, delta);
    } catch (const InfeasibleTarget& e) {
      // Below the reachable minimum: take the vertex value, nudged up so the discriminant stays >= 0.
      double l2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) l2 += 0.5 * y[j] * y[j] * g.dx(j);
      const double floor = e.min_achievable + 1e-12 * std::max(std::abs(e.min_achievable), l2);
      if (!warned->exchange(true))
        std::cerr << "warning: " << v.label << ": l2 change " << delta << " is not reachable at t=" << t
                  << "; using " << floor << " (further occurrences not reported)\n";
      res = cr::correct_increment_mass_l2(du, u, floor);
    }
    StageRecord rec;
    rec.t = t;
    rec.dt = dt;
    rec.old_rate = old_delta;
    rec.target = delta;
    rec.new_rate = res.delta_l2;
    double measured = 0.0;
    for (std::size_t j = 0; j < n; ++j) measured += (y[j] * res.value[j] + 0.5 * res.value[j] * res.value[j]) * g.dx(j);
    rec.measured = measured;
    rec.applied = true;
    log_stage(log, rec);
    return res.value;
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  m.sim.dt_fn = [=](const State&, double) { return timeloop::cfl_dt(cfl, g.dx_min(), std::abs(c), dt_max); };
  common_scalar_outputs(m, g);
  return m;
}

DgField project_dg(const ProblemSpec& p, const UniformGrid1D& g, int degree) {
  auto f = analytic_ic(p);
  DgField a(g, degree);
  double left = 0.0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    const double h = g.dx(j);
    for (int k = 0; k <= degree; ++k) {
      auto integrand = [&](double xi) { return f(left + 0.5 * h * (xi + 1.0)) * legendre(k, xi); };
      a.a(j, k) = boost::math::quadrature::gauss<double, 10>::integrate(integrand, -1.0, 1.0) / (2.0 * legendre_norm(k));
    }
    left += h;
  }
  return a;
}

Model dg_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  if (p.boundary != Boundary::Periodic) bad(v, "dg needs a periodic grid");
  if (p.equation == Equation::BurgersForced) bad(v, "dg does not support forcing");
  allow_only(v, {Corrector::DgL2}, "dg");
  if (opt.initial) bad(v, "dg runs cannot start from a coarse-grained state");
  const UniformGrid1D g(n, p.length);
  const int deg = v.degree;
  sc::DgFluxRule rule;
  if (p.equation == Equation::Advection)
    rule = v.dg_centered ? sc::dg_flux_advection_centered(p.speed) : sc::dg_flux_advection_upwind(p.speed);
  else
    rule = v.dg_centered ? sc::dg_flux_burgers_centered_demo() : sc::dg_flux_burgers_godunov();
  const auto target = make_target(v, opt);
  const bool corr = has(v, Corrector::DgL2);
  const auto log = m.stages;
  m.sim.y0 = project_dg(p, g, deg).coeffs;
  m.sim.rhs = [=](const State& y, double t, double dt) {
    DgField a(g, deg, y);
    auto N = sc::dg_rhs(a, rule);
    if (corr) {
      auto c = cr::correct_dg_l2(N, a, target(t));
      N = std::move(c.value);
      StageRecord rec{t, dt, c.old_rate, c.new_rate, c.new_rate, sc::dg_bracket(y, N), c.applied};
      log_stage(log, rec);
    }
    return sc::dg_coefficient_rate(N, a);
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  const bool advection = p.equation == Equation::Advection;
  const double c = p.speed;
  m.sim.dt_fn = [=](const State& y, double) {
    DgField a(g, deg, y);
    double s = 0.0;
    if (advection) {
      s = std::abs(c);
    } else {
      for (std::size_t j = 0; j < n; ++j)
        s = std::max({s, std::abs(a.left_value(j)), std::abs(a.right_value(j)), std::abs(a.a(j, 0))});
    }
    return timeloop::cfl_dt(cfl / (2.0 * deg + 1.0), g.dx_min(), s, dt_max);
  };
  m.report = [g, deg](const State& y, double t) { return diagnostics::invariant_report(DgField(g, deg, y), t); };
  m.observable = [g, deg](const State& y) {
    DgField a(g, deg, y);
    std::vector<double> avg(g.n_cells());
    for (std::size_t j = 0; j < avg.size(); ++j) avg[j] = a.a(j, 0);
    return avg;
  };
  m.tracked_quantity = [](const diagnostics::InvariantReport& r) { return r.l2.value_or(0.0); };
  m.fields = [g, deg](const State& y) {
    DgField a(g, deg, y);
    FieldColumns fc;
    for (int k = 0; k <= deg; ++k) {
      fc.names.push_back("a" + std::to_string(k));
      std::vector<double> col(g.n_cells());
      for (std::size_t j = 0; j < col.size(); ++j) col[j] = a.a(j, k);
      fc.columns.push_back(std::move(col));
    }
    return fc;
  };
  return m;
}

SpectralField unpack_spectral(double L, const State& y) {
  const std::size_t h = y.size() / 2;
  return SpectralField(L, {y.begin(), y.begin() + h}, {y.begin() + h, y.end()});
}

State pack_spectral(const SpectralField& s) {
  State y(s.re);
  y.insert(y.end(), s.im.begin(), s.im.end());
  return y;
}

Model spectral_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  if (p.equation != Equation::Advection) bad(v, "spectral is advection-only");
  if (p.boundary != Boundary::Periodic) bad(v, "spectral needs a periodic domain");
  allow_only(v, {Corrector::SpectralL2}, "spectral");
  if (opt.initial) bad(v, "spectral runs cannot start from a coarse-grained state");
  const double L = p.length, c = p.speed;
  auto f = analytic_ic(p);
  const std::size_t np = 4 * n + 4;
  std::vector<double> samples(np);
  for (std::size_t i = 0; i < np; ++i) samples[i] = f(L * static_cast<double>(i) / static_cast<double>(np));
  m.sim.y0 = pack_spectral(SpectralField::from_samples(L, samples, n));
  const auto target = make_target(v, opt);
  const bool corr = has(v, Corrector::SpectralL2);
  const auto log = m.stages;
  m.sim.rhs = [=](const State& y, double t, double dt) {
    auto u = unpack_spectral(L, y);
    auto N = sc::spectral_rhs_advection(u, c);
    if (corr) {
      auto r = cr::correct_spectral_mass_l2(N, u, target(t));
      N = std::move(r.value);
      StageRecord rec{t, dt, r.old_rate, r.new_rate, r.new_rate, sc::spectral_bracket(u, N), r.applied};
      log_stage(log, rec);
    }
    return pack_spectral(N);
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  m.sim.dt_fn = [=](const State&, double) {
    return timeloop::cfl_dt(cfl, L / (2.0 * static_cast<double>(n) + 1.0), std::abs(c), dt_max);
  };
  m.report = [L](const State& y, double t) { return diagnostics::invariant_report(unpack_spectral(L, y), t); };
  m.observable = [L, n](const State& y) { return unpack_spectral(L, y).sample(2 * n + 1); };
  m.tracked_quantity = [](const diagnostics::InvariantReport& r) { return r.l2.value_or(0.0); };
  m.fields = [L](const State& y) {
    auto s = unpack_spectral(L, y);
    return FieldColumns{{"re", "im"}, {s.re, s.im}};
  };
  return m;
}

Model euler2d_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  allow_only(v, {Corrector::FluxL2, Corrector::Energy, Corrector::Euler2D}, "2D Euler");
  sc::FluxScheme scheme;
  switch (v.scheme) {
  case Scheme::Muscl: scheme = sc::FluxScheme::MusclMc; break;
  case Scheme::Upwind: scheme = sc::FluxScheme::Upwind; break;
  case Scheme::Centered: scheme = sc::FluxScheme::Centered; break;
  default: bad(v, "2D Euler supports muscl, upwind and centered");
  }
  const UniformGrid2D g(n, n, p.length, p.length);
  auto solver = std::make_shared<sc::PeriodicPoissonSolver>(g);
  const auto target = make_target(v, opt);
  const bool flux_corr = has(v, Corrector::FluxL2), energy = has(v, Corrector::Energy),
             full = has(v, Corrector::Euler2D);
  const bool forcing = p.forcing;
  problems::KolmogorovForcing kf;
  kf.k = p.kolmogorov_k;
  kf.drag = p.drag;
  kf.nu = p.nu;
  const auto log = m.stages;
  m.sim.y0 = opt.initial ? *opt.initial : problems::ic_random_vorticity(g, p.ic_seed, p.vorticity_kmax).values;
  m.sim.rhs = [=](const State& y, double t, double dt) {
    FvField2D chi(g, y);
    auto psi = solver->solve(y);
    auto vel = sc::face_velocities(psi, g);
    auto F = sc::advective_fluxes_2d(chi, vel, scheme);
    StageRecord rec;
    rec.t = t;
    rec.dt = dt;
    const double area = g.cell_area();
    State extra;
    if (forcing) {
      extra = kf.evaluate(chi);
      auto lap = sc::laplacian_5pt(y, g);
      for (std::size_t i = 0; i < extra.size(); ++i) extra[i] += kf.nu * lap[i];
    }
    const double external = extra.empty() ? 0.0 : bracket(y, extra, area);
    if (flux_corr) {
      auto c = cr::correct_flux_l2_2d(F, chi, cr::Flux2DTarget::split(target(t, external)));
      F = std::move(c.value);
      rec.old_rate = c.old_rate.x + c.old_rate.y;
      rec.new_rate = c.new_rate.x + c.new_rate.y;
      rec.applied = c.applied_x || c.applied_y;
    }
    auto N = sc::fv_rhs_2d(F, g);
    if (energy || full) {
      VorticityState2D st{chi, psi};
      if (full) {
        auto c = cr::correct_euler2d_mass_energy_l2(N, st, target(t, external));
        N = std::move(c.value);
        rec.old_rate = c.old_rate;
        rec.new_rate = c.new_rate;
        rec.applied = c.applied;
      } else {
        N = cr::project_euler2d_mass_energy(N, st);
      }
    }
    rec.target = rec.new_rate;
    rec.measured = bracket(y, N, area);
    rec.energy_rate = bracket(psi, N, area);
    double scale = 0.0, mass = 0.0;
    for (std::size_t i = 0; i < N.size(); ++i) {
      scale += std::abs(psi[i] * N[i]) * area;
      mass += N[i] * area;
    }
    rec.energy_scale = scale;
    rec.mass_rate = mass;
    log_stage(log, rec);
    for (std::size_t i = 0; i < extra.size(); ++i) N[i] += extra[i];
    return N;
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  m.sim.dt_fn = [=](const State& y, double) {
    auto vel = sc::face_velocities(solver->solve(y), g);
    double ux = 0.0, uy = 0.0;
    for (double a : vel.ux) ux = std::max(ux, std::abs(a));
    for (double a : vel.uy) uy = std::max(uy, std::abs(a));
    return timeloop::cfl_dt_2d(cfl, g.dx(), g.dy(), ux, uy, dt_max);
  };
  m.report = [g, solver](const State& y, double t) {
    return diagnostics::invariant_report(FvField2D(g, y), solver->solve(y), t);
  };
  m.observable = [](const State& y) { return y; };
  m.tracked_quantity = [](const diagnostics::InvariantReport& r) { return r.enstrophy.value_or(0.0); };
  m.fields = [solver](const State& y) { return FieldColumns{{"chi", "psi"}, {y, solver->solve(y)}}; };
  return m;
}

EulerState1D unpack_euler(const UniformGrid1D& g, const State& y, double gamma) {
  const std::size_t n = g.n_cells();
  return EulerState1D(g, {y.begin(), y.begin() + n}, {y.begin() + n, y.begin() + 2 * n}, {y.begin() + 2 * n, y.end()},
                      gamma);
}

Model euler1d_model(const ProblemSpec& p, const VariantSpec& v, std::size_t n, const ModelOptions& opt, Model m) {
  allow_only(v, {Corrector::Positivity, Corrector::Entropy}, "1D Euler");
  if (v.scheme != Scheme::Muscl && v.scheme != Scheme::LaxFriedrichs) bad(v, "1D Euler supports muscl and lax_friedrichs");
  if (v.target.kind == TargetSpec::Kind::Tracked) bad(v, "1D Euler uses the entropy ratio, not an l2 target");
  const bool sod = p.ic == InitialCondition::Sod;
  if (sod != (p.boundary == Boundary::Dirichlet)) bad(v, "sod needs dirichlet boundaries; euler_sines needs periodic");
  const UniformGrid1D g(n, p.length, p.boundary);
  problems::SodParams sp;
  sp.gamma = p.gamma;
  const auto bc = sod ? problems::sod_boundary(sp) : sc::EulerBoundary::periodic_bc();
  const double gamma = p.gamma;
  EulerState1D s0 = sod ? problems::ic_sod(g, sp) : problems::ic_euler_sines(g, p.ic_seed, {0.75, 0.5, gamma, 1});
  State y0(s0.rho);
  y0.insert(y0.end(), s0.mom.begin(), s0.mom.end());
  y0.insert(y0.end(), s0.energy.begin(), s0.energy.end());
  m.sim.y0 = opt.initial ? *opt.initial : y0;

  const bool lf = v.scheme == Scheme::LaxFriedrichs;
  const bool pos = has(v, Corrector::Positivity), ent = has(v, Corrector::Entropy);
  double eps = v.eps_pos;
  if (eps <= 0.0) {
    // default floor: 1e-12 of the largest initial density or pressure
    double top = 0.0;
    const auto s = unpack_euler(g, m.sim.y0, gamma);
    for (std::size_t j = 0; j < n; ++j)
      top = std::max({top, s.rho[j], pressure_of(Conserved{s.rho[j], s.mom[j], s.energy[j]}, gamma)});
    eps = 1e-12 * top;
  }
  m.eps_pos = eps;
  const double ratio = v.ratio;
  const auto log = m.stages;
  m.sim.rhs = [=](const State& y, double t, double dt) {
    auto s = unpack_euler(g, y, gamma);
    auto F = lf ? sc::euler1d_lf_flux(s, bc) : sc::euler1d_muscl_flux(s, bc, sc::FallbackPolicy::LaxFriedrichs);
    StageRecord rec;
    rec.t = t;
    rec.dt = dt;
    if (pos) {
      auto lim = cr::limit_positivity_euler1d(F, s, bc, dt, eps);
      F = std::move(lim.value);
      rec.limited_faces = lim.n_limited;
    }
    if (ent) {
      const cr::EntropyRateTarget target{cr::estimate_boundary_entropy_flux(s, bc), ratio};
      auto c = cr::correct_entropy_euler1d(F, s, target, bc.periodic);
      F = std::move(c.value);
      rec.old_rate = c.old_rate;
      rec.target = target.resolve(c.old_rate);
      rec.new_rate = c.new_rate;
      rec.applied = c.applied;
      rec.measured = cr::entropy_rate(F, cr::entropy_variables_euler1d(s).w, bc.periodic);
    }
    if (pos || ent) log_stage(log, rec);
    return sc::euler1d_rhs(F, g);
  };
  const double cfl = m.plan.cfl, dt_max = m.plan.effective_dt_max();
  m.sim.dt_fn = [=](const State& y, double) { return timeloop::cfl_dt(unpack_euler(g, y, gamma), bc, cfl, dt_max); };
  m.report = [g, gamma](const State& y, double t) { return diagnostics::invariant_report(unpack_euler(g, y, gamma), t); };
  m.observable = [n](const State& y) { return std::vector<double>(y.begin(), y.begin() + n); };
  m.tracked_quantity = [](const diagnostics::InvariantReport& r) { return r.entropy_total.value_or(0.0); };
  m.fields = [g, gamma](const State& y) {
    auto s = unpack_euler(g, y, gamma);
    std::vector<double> vel(s.size()), pr(s.size());
    for (std::size_t j = 0; j < s.size(); ++j) {
      vel[j] = s.velocity(j);
      pr[j] = s.pressure(j);
    }
    return FieldColumns{{"rho", "v", "p"}, {s.rho, vel, pr}};
  };
  return m;
}

} // namespace

Model build_model(const ProblemSpec& problem, const VariantSpec& variant, std::size_t n,
                  const timeloop::StepPlan& plan, const ModelOptions& opt) {
  Model m;
  m.label = variant.label;
  m.resolution = n;
  m.plan = plan;
  if (opt.log_stages) m.stages = std::make_shared<std::vector<StageRecord>>();
  switch (problem.equation) {
  case Equation::Euler2D: return euler2d_model(problem, variant, n, opt, std::move(m));
  case Equation::Euler1D: return euler1d_model(problem, variant, n, opt, std::move(m));
  default: break;
  }
  switch (variant.scheme) {
  case Scheme::Ftcs: return ftcs_model(problem, variant, n, opt, std::move(m));
  case Scheme::Dg: return dg_model(problem, variant, n, opt, std::move(m));
  case Scheme::Spectral: return spectral_model(problem, variant, n, opt, std::move(m));
  default: return scalar_fv_model(problem, variant, n, opt, std::move(m));
  }
}

timeloop::State coarse_grain_state(const ProblemSpec& problem, const timeloop::State& fine, std::size_t fine_n,
                                   std::size_t n) {
  if (fine_n % n != 0) throw ArgumentError("coarse_grain_state: resolution does not divide the fine grid");
  const std::size_t f = fine_n / n;
  switch (problem.equation) {
  case Equation::Euler2D: {
    UniformGrid2D g(fine_n, fine_n, problem.length, problem.length);
    return coarse_grain(FvField2D(g, fine), f).values;
  }
  case Equation::Euler1D: {
    UniformGrid1D g(fine_n, problem.length, problem.boundary);
    State out;
    for (std::size_t c = 0; c < 3; ++c) {
      FvField1D part(g, {fine.begin() + c * fine_n, fine.begin() + (c + 1) * fine_n});
      auto cg = coarse_grain(part, f);
      out.insert(out.end(), cg.values.begin(), cg.values.end());
    }
    return out;
  }
  default: {
    if (fine.size() != fine_n) throw ArgumentError("coarse_grain_state: state is not a cell-value field");
    UniformGrid1D g(fine_n, problem.length, problem.boundary);
    return coarse_grain(FvField1D(g, fine), f).values;
  }
  }
}

std::string tracked_quantity_name(const ProblemSpec& problem) {
  switch (problem.equation) {
  case Equation::Euler2D: return "enstrophy";
  case Equation::Euler1D: return "entropy_total";
  default: return "l2";
  }
}

std::vector<double> exact_advection_cell_averages(const ProblemSpec& p, std::size_t n, double t) {
  if (p.equation != Equation::Advection || p.boundary != Boundary::Periodic)
    throw ConfigurationError("exact solution exists only for periodic advection");
  return sine_cell_averages(p, n, p.speed * t);
}

} // namespace invguard::harness
