#ifndef INVGUARD_HARNESS_CONFIG_HPP
#define INVGUARD_HARNESS_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harness/ini.hpp"
#include "invguard/diagnostics.hpp"
#include "invguard/grid.hpp"
#include "invguard/timeloop.hpp"

namespace invguard::harness {

enum class Equation { Advection, Burgers, BurgersForced, Euler2D, Euler1D };
enum class InitialCondition { Zero, Sine, SumOfSines, RandomVorticity, Sod, EulerSines };

struct ProblemSpec {
  Equation equation = Equation::Advection;
  double speed = 1.0;
  double length = 1.0;
  Boundary boundary = Boundary::Periodic;
  double nu = 0.0;
  std::uint64_t forcing_seed = 0;
  // 2D: Kolmogorov forcing, drag and viscosity switched together
  bool forcing = false;
  int kolmogorov_k = 4;
  double drag = 0.1;
  double gamma = 1.4;

  InitialCondition ic = InitialCondition::Sine;
  std::uint64_t ic_seed = 0;
  double amplitude = 1.0;
  int wavenumber = 1;
  double phase = 0.0;
  double offset = 0.0;
  int vorticity_kmax = 8;
  // Reference run evolves this long before t = 0 (2D decaying/forced turbulence spin-up).
  double spinup = 0.0;
};

enum class Scheme { Centered, Upwind, Godunov, LaxFriedrichs, Muscl, Surrogate, Ftcs, Advective, Dg, Spectral };
enum class Corrector { FluxL2, RhsL2, IncrementL2, DgL2, SpectralL2, Energy, Euler2D, Positivity, Entropy };

struct TargetSpec {
  enum class Kind { Clamp, Fixed, Tracked };
  Kind kind = Kind::Clamp;
  double rate = 0.0;
  std::string tracked_file; // empty: rates from this config's reference run
};

struct SurrogateSpec {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  int kmax = 4;
};

struct VariantSpec {
  std::string label;
  Scheme scheme = Scheme::Muscl;
  int degree = 1;
  // DG interface flux: centered (the unstable demo flux) or upwind (Godunov for Burgers)
  bool dg_centered = true;
  std::vector<Corrector> chain;
  TargetSpec target;
  double ratio = 1.0;   // entropy R
  double eps_pos = 0.0; // <= 0: 1e-12 of the largest initial density or pressure
  SurrogateSpec surrogate;
  bool expect_blowup = false;
  int line = 0;
};

struct ExperimentConfig {
  std::string origin;
  std::uint64_t hash = 0;
  std::string name;
  ProblemSpec problem;
  timeloop::StepPlan plan;
  std::vector<std::size_t> resolutions;
  std::size_t reference_resolution = 0; // 0: no reference run
  VariantSpec reference;
  std::vector<VariantSpec> variants;
  std::string output = "out";
  bool log_stages = false;
};

struct VerifyConfig {
  std::string origin;
  std::uint64_t hash = 0;
  long cases = 200;
  std::uint64_t seed = 1;
  std::vector<std::size_t> sizes_1d{4, 8, 32, 128};
  std::vector<std::size_t> sizes_2d{4, 8, 16, 32};
  std::vector<int> dg_degrees{1, 2};
  std::vector<std::size_t> spectral_modes{4, 16};
  double tolerance = 1e-12;
  double mass_tolerance = 1e-13;
  double noop_tolerance = 1e-14;
};

// Parses [problem], [plan], [run], [reference] and every [variant.<label>] section.
ExperimentConfig parse_experiment(const IniDocument& doc);
ExperimentConfig load_experiment(const std::string& path);
VerifyConfig load_verify(const std::string& path);
VerifyConfig parse_verify(const IniDocument& doc);

std::string scheme_name(Scheme s);
std::string corrector_name(Corrector c);

} // namespace invguard::harness

#endif
