#include "invguard/timeloop.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invguard/errors.hpp"

namespace invguard::timeloop {

namespace {

void check_finite(const State& y, double t) {
  for (double v : y)
    if (!std::isfinite(v)) throw NumericalBlowup("non-finite value in state", -1, t);
}

State axpy(const State& y, double a, const State& k) {
  if (k.size() != y.size()) throw ArgumentError("rhs returned a vector of the wrong size");
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] + a * k[i];
  return out;
}

} // namespace

State ssprk3_step(const State& y, double t, double dt, const RhsFn& f) {
  const State u1 = axpy(y, dt, f(y, t, dt));
  const State k2 = f(u1, t + dt, dt);
  State u2(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) u2[i] = 0.75 * y[i] + 0.25 * (u1[i] + dt * k2[i]);
  const State k3 = f(u2, t + 0.5 * dt, dt);
  State out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * k3[i]);
  return out;
}

State forward_euler_step(const State& y, double t, double dt, const RhsFn& f) { return axpy(y, dt, f(y, t, dt)); }

State discrete_step(const State& y, double t, double dt, const IncrementFn& inc) { return axpy(y, 1.0, inc(y, t, dt)); }

double cfl_dt(double cfl, double dx_min, double max_speed, double dt_max) {
  if (!(cfl > 0.0)) throw ArgumentError("cfl must be positive");
  if (!(max_speed > 0.0)) return dt_max;
  return std::min(cfl * dx_min / max_speed, dt_max);
}

double cfl_dt_2d(double cfl, double dx, double dy, double max_ux, double max_uy, double dt_max) {
  if (!(cfl > 0.0)) throw ArgumentError("cfl must be positive");
  const double s = std::abs(max_ux) / dx + std::abs(max_uy) / dy;
  if (!(s > 0.0)) return dt_max;
  return std::min(cfl / s, dt_max);
}

double cfl_dt(const FvField1D& u, const schemes::ScalarEquation& eq, double cfl, double dt_max) {
  double speed = 0.0;
  if (eq.kind == schemes::ScalarEquation::Kind::Advection) {
    speed = std::abs(eq.c);
  } else {
    for (double v : u.values) speed = std::max(speed, std::abs(v));
  }
  return cfl_dt(cfl, u.grid.dx_min(), speed, dt_max);
}

double cfl_dt(const EulerState1D& s, const schemes::EulerBoundary& bc, double cfl, double dt_max) {
  return cfl_dt(cfl, s.grid.dx_min(), schemes::euler_max_speed(s, bc), dt_max);
}

Trajectory run(const StepPlan& plan, const Simulation& sim, const StepObserver& observer) {
  if (!(plan.t_end >= 0.0)) throw ArgumentError("t_end must be non-negative");
  if (plan.integrator == Integrator::DiscreteUpdate ? !sim.increment : !sim.rhs)
    throw ArgumentError("simulation lacks the update function required by the integrator");
  if (!sim.dt_fn) throw ArgumentError("simulation lacks a dt function");

  Trajectory tr;
  State y = sim.y0;
  double t = 0.0;
  tr.snapshots.push_back({0.0, y});

  std::vector<double> marks;
  if (plan.snapshot_interval > 0.0) {
    for (long k = 1;; ++k) {
      const double tm = static_cast<double>(k) * plan.snapshot_interval;
      if (tm >= plan.t_end * (1.0 - 1e-12)) break;
      marks.push_back(tm);
    }
  }
  if (plan.t_end > 0.0) marks.push_back(plan.t_end);
  std::size_t next = 0;
  const double dt_max = plan.effective_dt_max();

  long step = 0;
  try {
    while (next < marks.size()) {
      if (step >= plan.max_steps) throw NumericalBlowup("step limit reached", step, t);
      double dt = std::min(sim.dt_fn(y, t), dt_max);
      if (!(dt > 0.0) || !std::isfinite(dt)) throw NumericalBlowup("non-positive or non-finite dt", step, t);
      const double target = marks[next];
      bool hit = false;
      if (t + dt >= target - 1e-12 * std::max(1.0, target)) {
        dt = target - t;
        hit = true;
      }
      State y_new;
      switch (plan.integrator) {
      case Integrator::SSPRK3: y_new = ssprk3_step(y, t, dt, sim.rhs); break;
      case Integrator::ForwardEuler: y_new = forward_euler_step(y, t, dt, sim.rhs); break;
      case Integrator::DiscreteUpdate: y_new = discrete_step(y, t, dt, sim.increment); break;
      }
      try {
        check_finite(y_new, t + dt);
      } catch (const NumericalBlowup&) {
        throw NumericalBlowup("non-finite value in state after step " + std::to_string(step), step, t + dt);
      }
      if (observer) observer(StepEvent{step, t, dt, y, y_new});
      y = std::move(y_new);
      t = hit ? target : t + dt;
      ++step;
      if (hit) {
        tr.snapshots.push_back({t, y});
        ++next;
      }
    }
  } catch (const std::exception& e) {
    tr.error = std::string(e.what()) + " (step " + std::to_string(step) + ", t = " + std::to_string(t) + ")";
    tr.t_error = t;
  }
  tr.steps = step;
  tr.t_final = t;
  return tr;
}

} // namespace invguard::timeloop
