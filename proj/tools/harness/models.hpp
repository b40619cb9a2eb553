#ifndef INVGUARD_HARNESS_MODELS_HPP
#define INVGUARD_HARNESS_MODELS_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "invguard/correctors/targets.hpp"
#include "invguard/diagnostics.hpp"
#include "invguard/timeloop.hpp"

namespace invguard::harness {

// One corrected RHS evaluation (or one discrete increment).
struct StageRecord {
  double t = 0.0;
  double dt = 0.0;
  // Rates of the corrected invariant: l2 for scalar models, enstrophy for 2D, entropy for Euler 1D.
  double old_rate = 0.0;
  double target = 0.0;
  double new_rate = 0.0;
  double measured = 0.0; // recomputed from the final RHS / increment
  bool applied = false;
  // 2D only: <psi_bar | N> of the inviscid RHS and sum |psi_bar| |N| |cell|
  double energy_rate = 0.0;
  double energy_scale = 0.0;
  // 2D only: sum of the inviscid RHS times the cell area
  double mass_rate = 0.0;
  std::size_t limited_faces = 0;
};

struct FieldColumns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
};

struct Model {
  std::string label;
  std::size_t resolution = 0;
  timeloop::StepPlan plan;
  timeloop::Simulation sim;
  std::function<diagnostics::InvariantReport(const timeloop::State&, double)> report;
  // Cell values compared against the coarse-grained reference (u, chi, rho or DG cell averages).
  std::function<std::vector<double>(const timeloop::State&)> observable;
  // The invariant a tracked target follows.
  std::function<double(const diagnostics::InvariantReport&)> tracked_quantity;
  std::function<FieldColumns(const timeloop::State&)> fields;
  std::shared_ptr<std::vector<StageRecord>> stages;
  // 1D Euler: the positivity floor in use
  double eps_pos = 0.0;
};

struct ModelOptions {
  // Rates for Tracked targets.
  std::shared_ptr<const correctors::TrackedRateSeries> tracked;
  bool log_stages = false;
  // Replaces the initial condition (same layout as the model state).
  const timeloop::State* initial = nullptr;
};

Model build_model(const ProblemSpec& problem, const VariantSpec& variant, std::size_t n,
                  const timeloop::StepPlan& plan, const ModelOptions& opt = {});

// Average a fine state down to resolution n; DG and spectral states are not supported.
timeloop::State coarse_grain_state(const ProblemSpec& problem, const timeloop::State& fine, std::size_t fine_n,
                                   std::size_t n);

// Name of the invariant a model's tracked quantity refers to.
std::string tracked_quantity_name(const ProblemSpec& problem);

// Exact periodic advection of the problem's analytic initial condition, as cell averages.
std::vector<double> exact_advection_cell_averages(const ProblemSpec& problem, std::size_t n, double t);

} // namespace invguard::harness

#endif
