#include "harness/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <ostream>

#include <fmt/format.h>

#include "invguard/bracket.hpp"
#include "invguard/errors.hpp"

#ifndef INVGUARD_VERSION
#define INVGUARD_VERSION "unknown"
#endif

namespace invguard::harness {

namespace fs = std::filesystem;
using timeloop::State;

namespace {

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::ofstream open_out(const fs::path& file) {
  fs::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

std::vector<double> coarse_observable(const ProblemSpec& p, const std::vector<double>& fine, std::size_t fine_n,
                                      std::size_t n) {
  const std::size_t f = fine_n / n;
  if (p.equation == Equation::Euler2D)
    return coarse_grain(FvField2D(UniformGrid2D(fine_n, fine_n, p.length, p.length), fine), f).values;
  return coarse_grain(FvField1D(UniformGrid1D(fine_n, p.length, p.boundary), fine), f).values;
}

std::string status_of(const RunOutcome& r) {
  if (r.ok()) return "ok";
  return r.expect_blowup ? "failed (expected)" : "failed";
}

void log_line(const RunOptions& opt, const std::string& s) {
  if (opt.log) *opt.log << s << '\n' << std::flush;
}

struct Spun {
  std::optional<State> fine; // spun-up fine state, when spinup > 0
};

// Runs the reference-resolution model for the spin-up interval and returns its final state.
Spun spin_up(const ExperimentConfig& cfg, const RunOptions& opt) {
  Spun s;
  if (cfg.problem.spinup <= 0.0) return s;
  if (!cfg.reference_resolution) throw ConfigurationError("spinup requires a reference_resolution");
  auto plan = cfg.plan;
  plan.t_end = cfg.problem.spinup;
  plan.snapshot_interval = 0.0;
  plan.dt_max = cfg.plan.dt_max;
  auto m = build_model(cfg.problem, cfg.reference, cfg.reference_resolution, plan);
  log_line(opt, fmt::format("spin-up: N={} to t={}", cfg.reference_resolution, plan.t_end));
  auto tr = timeloop::run(plan, m.sim);
  if (tr.error) throw NumericalBlowup("spin-up failed: " + *tr.error, tr.steps, tr.t_error);
  s.fine = tr.snapshots.back().y;
  return s;
}

std::string manifest_header(const std::string& command, const ExperimentConfig& cfg) {
  std::string s = "invariant-guard manifest\n";
  s += "command = " + command + "\n";
  s += "config = " + cfg.origin + "\n";
  s += "name = " + cfg.name + "\n";
  s += fmt::format("config_hash = fnv1a64:{:016x}\n", cfg.hash);
  s += std::string("version = ") + INVGUARD_VERSION + "\n";
#ifdef __VERSION__
  s += std::string("compiler = ") + __VERSION__ + "\n";
#endif
  return s;
}

std::string manifest_run_line(const std::string& path, const RunOutcome& r) {
  std::string s = fmt::format("run {} status={} steps={} t_final={}", path, status_of(r), r.trajectory.steps,
                              num(r.trajectory.t_final));
  if (r.trajectory.error) s += " error=\"" + *r.trajectory.error + "\"";
  return s + "\n";
}

void write_manifest(const fs::path& file, const std::string& text) {
  auto out = open_out(file);
  out << text;
}

} // namespace

RunOutcome execute(const Model& m, bool expect_blowup) {
  RunOutcome r;
  r.label = m.label;
  r.resolution = m.resolution;
  r.expect_blowup = expect_blowup;
  r.trajectory = timeloop::run(m.plan, m.sim);
  for (const auto& s : r.trajectory.snapshots) r.reports.push_back(m.report(s.y, s.t));
  if (m.stages) r.stages = *m.stages;
  return r;
}

namespace {

// The tracked quantity of a reference snapshot after coarse graining to n cells.
double coarse_reference_quantity(const ProblemSpec& problem, const State& fine, std::size_t fine_n, std::size_t n,
                                 double t) {
  auto cs = coarse_grain_state(problem, fine, fine_n, n);
  switch (problem.equation) {
  case Equation::Euler2D:
    return diagnostics::invariant_report(FvField2D(UniformGrid2D(n, n, problem.length, problem.length), cs), {}, t)
        .enstrophy.value_or(0.0);
  case Equation::Euler1D: {
    UniformGrid1D g(n, problem.length, problem.boundary);
    EulerState1D s(g, {cs.begin(), cs.begin() + n}, {cs.begin() + n, cs.begin() + 2 * n}, {cs.begin() + 2 * n, cs.end()},
                   problem.gamma);
    return diagnostics::invariant_report(s, t).entropy_total.value_or(0.0);
  }
  default:
    return diagnostics::invariant_report(FvField1D(UniformGrid1D(n, problem.length, problem.boundary), cs), t)
        .l2.value_or(0.0);
  }
}

} // namespace

correctors::TrackedRateSeries tracked_rates(const ProblemSpec& problem, const RunOutcome& reference, std::size_t n) {
  const auto& snaps = reference.trajectory.snapshots;
  if (snaps.size() < 2) throw ArgumentError("tracked_rates: the reference needs at least two snapshots");
  if (problem.equation == Equation::Euler1D) throw ConfigurationError("tracked targets are not defined for 1D Euler");
  std::vector<double> t, q;
  for (const auto& s : snaps) {
    q.push_back(coarse_reference_quantity(problem, s.y, reference.resolution, n, s.t));
    t.push_back(s.t);
  }
  const std::size_t m = t.size();
  std::vector<double> rate(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t a = i == 0 ? 0 : i - 1, b = i + 1 == m ? i : i + 1;
    rate[i] = (q[b] - q[a]) / (t[b] - t[a]);
  }
  return correctors::TrackedRateSeries(t, rate);
}

std::vector<MetricRow> compare_to_reference(const ProblemSpec& problem, const Model& candidate, const RunOutcome& run,
                                            const Model& reference_model, const RunOutcome& reference) {
  std::vector<MetricRow> rows;
  const auto& cs = run.trajectory.snapshots;
  const auto& rs = reference.trajectory.snapshots;
  const std::size_t count = std::min(cs.size(), rs.size());
  for (std::size_t i = 0; i < count; ++i) {
    if (std::abs(cs[i].t - rs[i].t) > 1e-9 * std::max(1.0, std::abs(rs[i].t)))
      throw ArgumentError("compare_to_reference: snapshot times differ");
    auto cand = candidate.observable(cs[i].y);
    auto ref = coarse_observable(problem, reference_model.observable(rs[i].y), reference.resolution, run.resolution);
    MetricRow row;
    row.t = cs[i].t;
    row.normalized_mse = diagnostics::normalized_mse(cand, ref);
    row.mae = diagnostics::mean_absolute_error(cand, ref);
    row.correlation = diagnostics::pearson_correlation(cand, ref);
    row.invariant = candidate.tracked_quantity(run.reports[i]);
    // the reference invariant is measured after coarse graining, on the candidate's grid
    row.reference_invariant =
        coarse_reference_quantity(problem, rs[i].y, reference.resolution, run.resolution, rs[i].t);
    rows.push_back(row);
  }
  return rows;
}

fs::path output_root() {
  const char* env = std::getenv("INVARIANT_GUARD_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::current_path();
}

void write_trajectory_csv(const fs::path& file, const Model& m, const RunOutcome& r) {
  auto out = open_out(file);
  std::string head = "t,index";
  if (!r.trajectory.snapshots.empty())
    for (const auto& n : m.fields(r.trajectory.snapshots.front().y).names) head += "," + n;
  out << head << '\n';
  for (const auto& s : r.trajectory.snapshots) {
    auto fc = m.fields(s.y);
    const std::size_t rows = fc.columns.empty() ? 0 : fc.columns.front().size();
    for (std::size_t i = 0; i < rows; ++i) {
      std::string line = num(s.t) + "," + std::to_string(i);
      for (const auto& c : fc.columns) line += "," + num(c[i]);
      out << line << '\n';
    }
  }
}

void write_invariants_csv(const fs::path& file, const RunOutcome& r) {
  auto out = open_out(file);
  diagnostics::write_report_header(out);
  for (const auto& rep : r.reports) diagnostics::write_report_row(out, rep);
}

void write_metrics_csv(const fs::path& file, const std::vector<MetricRow>& rows) {
  auto out = open_out(file);
  out << "t,normalized_mse,mae,correlation,invariant,reference_invariant,invariant_error\n";
  for (const auto& r : rows)
    out << fmt::format("{},{},{},{},{},{},{}\n", num(r.t), num(r.normalized_mse), num(r.mae), num(r.correlation),
                       num(r.invariant), num(r.reference_invariant), num(std::abs(r.invariant - r.reference_invariant)));
}

void write_stages_csv(const fs::path& file, const std::vector<StageRecord>& stages) {
  auto out = open_out(file);
  out << "t,dt,old_rate,target,new_rate,measured,applied,energy_rate,energy_scale,mass_rate,limited_faces\n";
  for (const auto& s : stages)
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", num(s.t), num(s.dt), num(s.old_rate), num(s.target),
                       num(s.new_rate), num(s.measured), s.applied ? 1 : 0, num(s.energy_rate), num(s.energy_scale),
                       num(s.mass_rate), s.limited_faces);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt) {
  ExperimentResult res;
  res.output_dir = output_root() / cfg.output;
  const bool spectral = std::any_of(cfg.variants.begin(), cfg.variants.end(),
                                    [](const VariantSpec& v) { return v.scheme == Scheme::Spectral; });
  if (spectral && cfg.reference_resolution)
    throw ConfigurationError("spectral variants have no cell-average reference; drop reference_resolution");

  const auto spun = spin_up(cfg, opt);
  std::string manifest = manifest_header("run", cfg);

  std::optional<Model> ref_model;
  if (cfg.reference_resolution) {
    ModelOptions mo;
    if (spun.fine) mo.initial = &*spun.fine;
    ref_model = build_model(cfg.problem, cfg.reference, cfg.reference_resolution, cfg.plan, mo);
    log_line(opt, fmt::format("reference: N={} scheme={}", cfg.reference_resolution, scheme_name(cfg.reference.scheme)));
    res.reference = execute(*ref_model);
    const auto dir = res.output_dir / "reference" / fmt::format("N{}", cfg.reference_resolution);
    if (opt.write) {
      write_trajectory_csv(dir / "trajectory.csv", *ref_model, *res.reference);
      write_invariants_csv(dir / "invariants.csv", *res.reference);
    }
    manifest += manifest_run_line(fmt::format("reference/N{}", cfg.reference_resolution), *res.reference);
    if (!res.reference->ok()) {
      log_line(opt, "reference run failed: " + *res.reference->trajectory.error);
      res.exit_code = 2;
      if (opt.write) write_manifest(res.output_dir / "manifest.txt", manifest);
      return res;
    }
  }

  // Models are built up front on this thread (FFTW planning is not thread-safe); runs go concurrent.
  std::vector<Model> models;
  std::vector<std::shared_ptr<const correctors::TrackedRateSeries>> per_n_rates;
  std::vector<State> initial_states;
  initial_states.reserve(cfg.resolutions.size());
  for (std::size_t n : cfg.resolutions) {
    std::shared_ptr<const correctors::TrackedRateSeries> rates;
    const bool needs = std::any_of(cfg.variants.begin(), cfg.variants.end(), [](const VariantSpec& v) {
      return v.target.kind == TargetSpec::Kind::Tracked && v.target.tracked_file.empty();
    });
    if (needs) {
      rates = std::make_shared<correctors::TrackedRateSeries>(tracked_rates(cfg.problem, *res.reference, n));
      if (opt.write) {
        auto out = open_out(res.output_dir / fmt::format("N{}", n) / "tracked_rates.csv");
        rates->write_csv(out);
      }
    }
    const State* init = nullptr;
    if (spun.fine) {
      initial_states.push_back(coarse_grain_state(cfg.problem, *spun.fine, cfg.reference_resolution, n));
      init = &initial_states.back();
    }
    for (const auto& v : cfg.variants) {
      ModelOptions mo;
      mo.log_stages = cfg.log_stages;
      mo.initial = init;
      if (v.target.kind == TargetSpec::Kind::Tracked) {
        if (v.target.tracked_file.empty()) {
          mo.tracked = rates;
        } else {
          fs::path p(v.target.tracked_file);
          if (p.is_relative()) p = fs::path(cfg.origin).parent_path() / p;
          mo.tracked = std::make_shared<correctors::TrackedRateSeries>(correctors::TrackedRateSeries::read_csv(p.string()));
        }
      }
      models.push_back(build_model(cfg.problem, v, n, cfg.plan, mo));
    }
  }

  std::vector<std::future<RunOutcome>> futures;
  const std::size_t nv = cfg.variants.size();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const bool expect = cfg.variants[i % nv].expect_blowup;
    futures.push_back(std::async(std::launch::async, [&models, i, expect] { return execute(models[i], expect); }));
  }
  for (auto& f : futures) res.runs.push_back(f.get());

  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& r = res.runs[i];
    const auto dir = res.output_dir / fmt::format("N{}", r.resolution) / r.label;
    std::vector<MetricRow> rows;
    if (res.reference) rows = compare_to_reference(cfg.problem, models[i], r, *ref_model, *res.reference);
    res.metrics.push_back(rows);
    if (opt.write) {
      write_trajectory_csv(dir / "trajectory.csv", models[i], r);
      write_invariants_csv(dir / "invariants.csv", r);
      if (res.reference) write_metrics_csv(dir / "metrics.csv", rows);
      if (cfg.log_stages) write_stages_csv(dir / "stages.csv", r.stages);
    }
    manifest += manifest_run_line(fmt::format("N{}/{}", r.resolution, r.label), r);
    log_line(opt, fmt::format("N={} {}: {} ({} steps, t={})", r.resolution, r.label, status_of(r), r.trajectory.steps,
                              num(r.trajectory.t_final)) +
                      (r.trajectory.error ? " - " + *r.trajectory.error : ""));
    if (!r.ok() && !r.expect_blowup) res.exit_code = 2;
  }
  if (opt.write) write_manifest(res.output_dir / "manifest.txt", manifest);
  return res;
}

SweepResult run_sweep(const ExperimentConfig& cfg, const RunOptions& opt) {
  SweepResult res;
  res.output_dir = output_root() / cfg.output;
  const bool exact = cfg.problem.equation == Equation::Advection && cfg.problem.boundary == Boundary::Periodic &&
                     !cfg.reference_resolution;
  if (!exact && !cfg.reference_resolution)
    throw ConfigurationError("sweep needs periodic advection (exact solution) or a reference_resolution");
  std::string manifest = manifest_header("sweep", cfg);

  std::optional<Model> ref_model;
  std::optional<RunOutcome> reference;
  if (!exact) {
    ref_model = build_model(cfg.problem, cfg.reference, cfg.reference_resolution, cfg.plan);
    reference = execute(*ref_model);
    manifest += manifest_run_line(fmt::format("reference/N{}", cfg.reference_resolution), *reference);
    if (!reference->ok()) {
      res.exit_code = 2;
      if (opt.write) write_manifest(res.output_dir / "manifest.txt", manifest);
      return res;
    }
  }

  std::vector<Model> models;
  for (const auto& v : cfg.variants) {
    if (v.target.kind == TargetSpec::Kind::Tracked) throw ConfigurationError("sweep variants cannot use tracked targets");
    for (std::size_t n : cfg.resolutions) models.push_back(build_model(cfg.problem, v, n, cfg.plan));
  }
  std::vector<std::future<RunOutcome>> futures;
  const std::size_t nr = cfg.resolutions.size();
  for (std::size_t i = 0; i < models.size(); ++i) {
    const bool expect = cfg.variants[i / nr].expect_blowup;
    futures.push_back(std::async(std::launch::async, [&models, i, expect] { return execute(models[i], expect); }));
  }
  for (auto& f : futures) res.runs.push_back(f.get());

  std::string series = "variant,N,t,normalized_mse,mae,l2\n";
  for (std::size_t i = 0; i < models.size(); ++i) {
    const auto& r = res.runs[i];
    const auto& m = models[i];
    SweepRow row;
    row.variant = r.label;
    row.resolution = r.resolution;
    row.status = status_of(r);
    double mse_sum = 0.0;
    std::size_t count = 0;
    const auto& snaps = r.trajectory.snapshots;
    for (std::size_t k = 0; k < snaps.size(); ++k) {
      std::vector<double> ref;
      if (exact) {
        ref = exact_advection_cell_averages(cfg.problem, r.resolution, snaps[k].t);
      } else {
        if (k >= reference->trajectory.snapshots.size()) break;
        ref = coarse_observable(cfg.problem, ref_model->observable(reference->trajectory.snapshots[k].y),
                                cfg.reference_resolution, r.resolution);
      }
      auto cand = m.observable(snaps[k].y);
      const double mse = diagnostics::normalized_mse(cand, ref);
      const double mae = diagnostics::mean_absolute_error(cand, ref);
      const double l2 = m.tracked_quantity(r.reports[k]);
      series += fmt::format("{},{},{},{},{},{}\n", r.label, r.resolution, num(snaps[k].t), num(mse), num(mae), num(l2));
      mse_sum += mse;
      ++count;
      row.mae_final = mae;
    }
    row.normalized_mse = count ? mse_sum / static_cast<double>(count) : 0.0;
    if (!r.reports.empty()) {
      row.l2_initial = m.tracked_quantity(r.reports.front());
      row.l2_final = m.tracked_quantity(r.reports.back());
    }
    if (i % nr != 0 && res.rows.back().mae_final > 0.0 && row.mae_final > 0.0)
      row.error_ratio = res.rows.back().mae_final / row.mae_final;
    if (!r.ok() && !r.expect_blowup) res.exit_code = 2;
    manifest += manifest_run_line(fmt::format("N{}/{}", r.resolution, r.label), r);
    log_line(opt, fmt::format("{:<18} N={:<5} nmse={:.4e} mae_final={:.4e} ratio={:.3f} l2 {:.4e} -> {:.4e} [{}]",
                              row.variant, row.resolution, row.normalized_mse, row.mae_final, row.error_ratio,
                              row.l2_initial, row.l2_final, row.status));
    res.rows.push_back(row);
  }
  if (opt.write) {
    auto out = open_out(res.output_dir / "sweep.csv");
    out << "variant,N,normalized_mse,mae_final,error_ratio,l2_initial,l2_final,l2_growth,status\n";
    for (const auto& r : res.rows)
      out << fmt::format("{},{},{},{},{},{},{},{},{}\n", r.variant, r.resolution, num(r.normalized_mse),
                         num(r.mae_final), num(r.error_ratio), num(r.l2_initial), num(r.l2_final),
                         num(r.l2_initial > 0.0 ? r.l2_final / r.l2_initial : 0.0), r.status);
    auto s = open_out(res.output_dir / "sweep_series.csv");
    s << series;
    write_manifest(res.output_dir / "manifest.txt", manifest);
  }
  return res;
}

} // namespace invguard::harness
