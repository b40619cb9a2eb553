#include "harness/config.hpp"

#include <fstream>
#include <sstream>

namespace invguard::harness {

namespace {

template <class E>
E lookup(const IniDocument& doc, const std::string& s, const std::string& key,
         const std::vector<std::pair<std::string, E>>& table, E fallback) {
  if (!doc.has(s, key)) return fallback;
  const auto v = doc.get_string(s, key);
  std::string known;
  for (const auto& [name, e] : table) {
    if (name == v) return e;
    known += (known.empty() ? "" : ", ") + name;
  }
  doc.fail(s, key, "unknown value '" + v + "' (expected one of: " + known + ")");
}

const std::vector<std::pair<std::string, Scheme>> kSchemes{
    {"centered", Scheme::Centered}, {"upwind", Scheme::Upwind},       {"godunov", Scheme::Godunov},
    {"lax_friedrichs", Scheme::LaxFriedrichs}, {"muscl", Scheme::Muscl}, {"surrogate", Scheme::Surrogate},
    {"ftcs", Scheme::Ftcs},         {"advective", Scheme::Advective}, {"dg", Scheme::Dg},
    {"spectral", Scheme::Spectral}};

const std::vector<std::pair<std::string, Corrector>> kCorrectors{
    {"flux_l2", Corrector::FluxL2},         {"rhs_l2", Corrector::RhsL2},
    {"increment_l2", Corrector::IncrementL2}, {"dg_l2", Corrector::DgL2},
    {"spectral_l2", Corrector::SpectralL2}, {"energy", Corrector::Energy},
    {"euler2d", Corrector::Euler2D},         {"positivity", Corrector::Positivity},
    {"entropy", Corrector::Entropy}};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError(path, 0, "", "", "cannot open config file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

VariantSpec parse_variant(const IniDocument& doc, const std::string& sec, const std::string& label) {
  doc.require_known(sec, {"scheme", "degree", "dg_flux", "correctors", "target", "tracked_file", "ratio", "eps_pos",
                          "surrogate_amplitude", "surrogate_seed", "surrogate_kmax", "expect_blowup"});
  VariantSpec v;
  v.label = label;
  v.line = doc.line_of(sec, "");
  v.scheme = lookup(doc, sec, "scheme", kSchemes, Scheme::Muscl);
  v.degree = static_cast<int>(doc.get_long(sec, "degree", 1));
  if (v.scheme == Scheme::Dg && (v.degree < 0 || v.degree > 4)) doc.fail(sec, "degree", "DG degree must be in 0..4");
  const auto dgf = doc.get_string(sec, "dg_flux", "centered");
  if (dgf != "centered" && dgf != "upwind") doc.fail(sec, "dg_flux", "expected centered or upwind");
  v.dg_centered = dgf == "centered";
  for (const auto& name : doc.get_list(sec, "correctors")) {
    bool found = false;
    for (const auto& [n, c] : kCorrectors)
      if (n == name) {
        v.chain.push_back(c);
        found = true;
      }
    if (!found) doc.fail(sec, "correctors", "unknown corrector '" + name + "'");
  }
  const auto t = doc.get_string(sec, "target", "clamp");
  if (t == "clamp") {
    v.target.kind = TargetSpec::Kind::Clamp;
  } else if (t == "tracked") {
    v.target.kind = TargetSpec::Kind::Tracked;
    v.target.tracked_file = doc.get_string(sec, "tracked_file", "");
  } else {
    v.target.kind = TargetSpec::Kind::Fixed;
    v.target.rate = doc.get_double(sec, "target");
    if (v.target.rate > 0.0) doc.fail(sec, "target", "a fixed rate must be <= 0");
  }
  v.ratio = doc.get_double(sec, "ratio", 1.0);
  if (v.ratio < 0.0) doc.fail(sec, "ratio", "R must be >= 0");
  v.eps_pos = doc.get_double(sec, "eps_pos", 0.0);
  if (doc.has(sec, "eps_pos") && v.eps_pos <= 0.0) doc.fail(sec, "eps_pos", "must be positive");
  v.surrogate.amplitude = doc.get_double(sec, "surrogate_amplitude", 0.0);
  v.surrogate.seed = doc.get_seed(sec, "surrogate_seed", 0);
  v.surrogate.kmax = static_cast<int>(doc.get_long(sec, "surrogate_kmax", 4));
  if (v.surrogate.kmax < 0) doc.fail(sec, "surrogate_kmax", "must be >= 0");
  v.expect_blowup = doc.get_bool(sec, "expect_blowup", false);
  return v;
}

} // namespace

std::string scheme_name(Scheme s) {
  for (const auto& [n, e] : kSchemes)
    if (e == s) return n;
  return "?";
}

std::string corrector_name(Corrector c) {
  for (const auto& [n, e] : kCorrectors)
    if (e == c) return n;
  return "?";
}

ExperimentConfig parse_experiment(const IniDocument& doc) {
  ExperimentConfig cfg;
  cfg.origin = doc.origin();
  doc.require_known("", {"name"});
  cfg.name = doc.get_string("", "name", "experiment");

  for (const auto& s : doc.sections())
    if (s != "problem" && s != "plan" && s != "run" && s != "reference" && s.rfind("variant.", 0) != 0)
      doc.fail(s, "", "unknown section");

  const std::string P = "problem";
  if (!doc.has_section(P)) doc.fail(P, "", "missing section");
  doc.require_known(P, {"equation", "speed", "length", "boundary", "nu", "forcing_seed", "forcing", "kolmogorov_k",
                        "drag", "gamma", "ic", "ic_seed", "amplitude", "wavenumber", "phase", "offset",
                        "vorticity_kmax", "spinup"});
  auto& p = cfg.problem;
  p.equation = lookup(doc, P, "equation",
                      {{"advection", Equation::Advection}, {"burgers", Equation::Burgers},
                       {"burgers_forced", Equation::BurgersForced}, {"euler2d", Equation::Euler2D},
                       {"euler1d", Equation::Euler1D}},
                      Equation::Advection);
  if (!doc.has(P, "equation")) doc.fail(P, "equation", "missing required key");
  p.speed = doc.get_double(P, "speed", 1.0);
  p.length = doc.get_double(P, "length", 1.0);
  if (!(p.length > 0.0)) doc.fail(P, "length", "must be positive");
  p.boundary = lookup(doc, P, "boundary", {{"periodic", Boundary::Periodic}, {"dirichlet", Boundary::Dirichlet}},
                      Boundary::Periodic);
  p.nu = doc.get_double(P, "nu", 0.0);
  if (p.nu < 0.0) doc.fail(P, "nu", "viscosity must be >= 0");
  p.forcing_seed = doc.get_seed(P, "forcing_seed", 0);
  p.forcing = doc.get_bool(P, "forcing", false);
  p.kolmogorov_k = static_cast<int>(doc.get_long(P, "kolmogorov_k", 4));
  p.drag = doc.get_double(P, "drag", 0.1);
  p.gamma = doc.get_double(P, "gamma", 1.4);
  if (!(p.gamma > 1.0)) doc.fail(P, "gamma", "gamma must be > 1");
  p.ic = lookup(doc, P, "ic",
                {{"zero", InitialCondition::Zero}, {"sine", InitialCondition::Sine},
                 {"sum_of_sines", InitialCondition::SumOfSines}, {"random_vorticity", InitialCondition::RandomVorticity},
                 {"sod", InitialCondition::Sod}, {"euler_sines", InitialCondition::EulerSines}},
                InitialCondition::Sine);
  p.ic_seed = doc.get_seed(P, "ic_seed", 0);
  p.amplitude = doc.get_double(P, "amplitude", 1.0);
  p.wavenumber = static_cast<int>(doc.get_long(P, "wavenumber", 1));
  p.phase = doc.get_double(P, "phase", 0.0);
  p.offset = doc.get_double(P, "offset", 0.0);
  p.vorticity_kmax = static_cast<int>(doc.get_long(P, "vorticity_kmax", 8));
  p.spinup = doc.get_double(P, "spinup", 0.0);
  if (p.spinup < 0.0) doc.fail(P, "spinup", "must be >= 0");

  const bool euler1d = p.equation == Equation::Euler1D;
  const bool euler2d = p.equation == Equation::Euler2D;
  if (euler2d && p.boundary != Boundary::Periodic) doc.fail(P, "boundary", "2D grids are periodic only");
  if ((p.ic == InitialCondition::Sod || p.ic == InitialCondition::EulerSines) != euler1d)
    doc.fail(P, "ic", "initial condition does not match the equation");
  if ((p.ic == InitialCondition::RandomVorticity) != euler2d)
    doc.fail(P, "ic", "initial condition does not match the equation");

  const std::string T = "plan";
  doc.require_known(T, {"integrator", "cfl", "t_end", "dt_max", "snapshot_interval", "max_steps"});
  auto& plan = cfg.plan;
  plan.integrator = lookup(doc, T, "integrator",
                           {{"ssprk3", timeloop::Integrator::SSPRK3},
                            {"forward_euler", timeloop::Integrator::ForwardEuler},
                            {"discrete", timeloop::Integrator::DiscreteUpdate}},
                           timeloop::Integrator::SSPRK3);
  plan.cfl = doc.get_double(T, "cfl", 0.3);
  if (!(plan.cfl > 0.0)) doc.fail(T, "cfl", "must be positive");
  plan.t_end = doc.get_double(T, "t_end", 1.0);
  if (plan.t_end < 0.0) doc.fail(T, "t_end", "must be >= 0");
  plan.dt_max = doc.get_double(T, "dt_max", 0.0);
  plan.snapshot_interval = doc.get_double(T, "snapshot_interval", 0.0);
  plan.max_steps = doc.get_long(T, "max_steps", plan.max_steps);

  const std::string R = "run";
  doc.require_known(R, {"resolutions", "reference_resolution", "output", "log_stages"});
  for (long n : doc.get_long_list(R, "resolutions")) {
    if (n < 2) doc.fail(R, "resolutions", "resolutions must be >= 2");
    cfg.resolutions.push_back(static_cast<std::size_t>(n));
  }
  const long ref = doc.get_long(R, "reference_resolution", 0);
  if (ref < 0) doc.fail(R, "reference_resolution", "must be >= 0");
  cfg.reference_resolution = static_cast<std::size_t>(ref);
  for (auto n : cfg.resolutions)
    if (cfg.reference_resolution && cfg.reference_resolution % n != 0)
      doc.fail(R, "reference_resolution", "must be divisible by every resolution (" + std::to_string(n) + ")");
  cfg.output = doc.get_string(R, "output", cfg.name);
  cfg.log_stages = doc.get_bool(R, "log_stages", false);

  cfg.reference = doc.has_section("reference") ? parse_variant(doc, "reference", "reference") : VariantSpec{};
  cfg.reference.label = "reference";
  if (!cfg.reference.chain.empty()) doc.fail("reference", "correctors", "the reference run is uncorrected");

  for (const auto& s : doc.sections()) {
    if (s.rfind("variant.", 0) != 0) continue;
    const auto label = s.substr(8);
    if (label.empty() || label.find_first_of("/\\ ") != std::string::npos) doc.fail(s, "", "invalid variant label");
    auto v = parse_variant(doc, s, label);
    if (v.target.kind == TargetSpec::Kind::Tracked && v.target.tracked_file.empty() && !cfg.reference_resolution)
      doc.fail(s, "target", "tracked target needs a reference run or tracked_file");
    if (v.scheme == Scheme::Ftcs && plan.integrator != timeloop::Integrator::DiscreteUpdate)
      doc.fail(s, "scheme", "ftcs requires integrator = discrete");
    if (v.scheme != Scheme::Ftcs && plan.integrator == timeloop::Integrator::DiscreteUpdate)
      doc.fail(s, "scheme", "integrator = discrete supports only the ftcs scheme");
    cfg.variants.push_back(std::move(v));
  }
  if (cfg.resolutions.empty() && !cfg.variants.empty()) doc.fail(R, "resolutions", "missing required key");
  return cfg;
}

ExperimentConfig load_experiment(const std::string& path) {
  const auto bytes = read_file(path);
  std::istringstream in(bytes);
  auto cfg = parse_experiment(IniDocument::parse(in, path));
  cfg.hash = fnv1a(bytes);
  return cfg;
}

VerifyConfig parse_verify(const IniDocument& doc) {
  VerifyConfig v;
  v.origin = doc.origin();
  doc.require_known("", {"name"});
  for (const auto& s : doc.sections())
    if (s != "verify") doc.fail(s, "", "unknown section");
  const std::string S = "verify";
  doc.require_known(S, {"cases", "seed", "sizes_1d", "sizes_2d", "dg_degrees", "spectral_modes", "tolerance",
                        "mass_tolerance", "noop_tolerance"});
  v.cases = doc.get_long(S, "cases", v.cases);
  if (v.cases < 1) doc.fail(S, "cases", "must be >= 1");
  v.seed = doc.get_seed(S, "seed", v.seed);
  auto sizes = [&](const std::string& key, std::size_t min, auto& out) {
    if (!doc.has(S, key)) return;
    out.clear();
    for (long n : doc.get_long_list(S, key)) {
      if (n < static_cast<long>(min)) doc.fail(S, key, "sizes must be >= " + std::to_string(min));
      out.push_back(static_cast<std::remove_reference_t<decltype(out[0])>>(n));
    }
  };
  sizes("sizes_1d", 3, v.sizes_1d);
  sizes("sizes_2d", 4, v.sizes_2d);
  sizes("dg_degrees", 0, v.dg_degrees);
  sizes("spectral_modes", 1, v.spectral_modes);
  v.tolerance = doc.get_double(S, "tolerance", v.tolerance);
  v.mass_tolerance = doc.get_double(S, "mass_tolerance", v.mass_tolerance);
  v.noop_tolerance = doc.get_double(S, "noop_tolerance", v.noop_tolerance);
  return v;
}

VerifyConfig load_verify(const std::string& path) {
  const auto bytes = read_file(path);
  std::istringstream in(bytes);
  auto v = parse_verify(IniDocument::parse(in, path));
  v.hash = fnv1a(bytes);
  return v;
}

} // namespace invguard::harness
