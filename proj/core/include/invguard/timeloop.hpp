#ifndef INVGUARD_TIMELOOP_HPP
#define INVGUARD_TIMELOOP_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "invguard/fields.hpp"
#include "invguard/schemes/euler1d.hpp"
#include "invguard/schemes/fv1d.hpp"

namespace invguard::timeloop {

using State = std::vector<double>;

// Returns dy/dt at (y, t); dt is the step size of the enclosing step (for LF coefficients and
// positivity limiting). Correctors are applied inside this function, once per stage.
using RhsFn = std::function<State(const State& y, double t, double dt)>;
// Returns the full increment Delta y for one discrete step.
using IncrementFn = std::function<State(const State& y, double t, double dt)>;

enum class Integrator { SSPRK3, ForwardEuler, DiscreteUpdate };

State ssprk3_step(const State& y, double t, double dt, const RhsFn& f);
State forward_euler_step(const State& y, double t, double dt, const RhsFn& f);
State discrete_step(const State& y, double t, double dt, const IncrementFn& inc);

// dt = cfl * dx_min / max_speed, or dt_max when the speed vanishes.
double cfl_dt(double cfl, double dx_min, double max_speed, double dt_max);
double cfl_dt_2d(double cfl, double dx, double dy, double max_ux, double max_uy, double dt_max);
double cfl_dt(const FvField1D& u, const schemes::ScalarEquation& eq, double cfl, double dt_max);
double cfl_dt(const EulerState1D& s, const schemes::EulerBoundary& bc, double cfl, double dt_max);

struct StepPlan {
  Integrator integrator = Integrator::SSPRK3;
  double cfl = 0.3;
  double t_end = 1.0;
  double dt_max = 0.0;            // <= 0 selects 0.1 * t_end
  double snapshot_interval = 0.0; // <= 0: initial and final snapshots only
  long max_steps = 10000000;

  double effective_dt_max() const { return dt_max > 0.0 ? dt_max : 0.1 * t_end; }
};

struct Simulation {
  State y0;
  // Stable step for the current state, already including the CFL number.
  std::function<double(const State& y, double t)> dt_fn;
  RhsFn rhs;           // SSPRK3 / ForwardEuler
  IncrementFn increment; // DiscreteUpdate
};

struct Snapshot {
  double t;
  State y;
};

struct StepEvent {
  long step;
  double t_before;
  double dt;
  const State& y_before;
  const State& y_after;
};

struct Trajectory {
  std::vector<Snapshot> snapshots;
  long steps = 0;
  double t_final = 0.0;
  std::optional<std::string> error; // set when a step failed; snapshots hold everything before it
  double t_error = 0.0;
};

using StepObserver = std::function<void(const StepEvent&)>;

// Advances to plan.t_end, truncating dt to land on snapshot times. Errors thrown by the RHS or by a
// non-finite state are caught and reported in Trajectory::error.
Trajectory run(const StepPlan& plan, const Simulation& sim, const StepObserver& observer = {});

} // namespace invguard::timeloop

#endif
