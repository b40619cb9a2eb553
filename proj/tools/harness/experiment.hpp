#ifndef INVGUARD_HARNESS_EXPERIMENT_HPP
#define INVGUARD_HARNESS_EXPERIMENT_HPP

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "harness/config.hpp"
#include "harness/models.hpp"
#include "invguard/correctors/targets.hpp"

namespace invguard::harness {

struct RunOutcome {
  std::string label;
  std::size_t resolution = 0;
  timeloop::Trajectory trajectory;
  std::vector<diagnostics::InvariantReport> reports; // one per snapshot
  std::vector<StageRecord> stages;
  bool expect_blowup = false;
  bool ok() const { return !trajectory.error.has_value(); }
};

struct MetricRow {
  double t = 0.0;
  double normalized_mse = 0.0;
  double mae = 0.0;
  double correlation = 0.0;
  double invariant = 0.0;
  double reference_invariant = 0.0;
};

struct ExperimentResult {
  std::optional<RunOutcome> reference;
  std::vector<RunOutcome> runs;
  std::vector<std::vector<MetricRow>> metrics; // parallel to runs; empty without a reference
  std::filesystem::path output_dir;
  int exit_code = 0;
};

// Evolves one model and evaluates the invariant report at every snapshot.
RunOutcome execute(const Model& m, bool expect_blowup = false);

// Finite differences of the tracked quantity of the reference, coarse-grained to resolution n.
correctors::TrackedRateSeries tracked_rates(const ProblemSpec& problem, const RunOutcome& reference, std::size_t n);

// Per-snapshot comparison against the coarse-grained reference (common prefix of snapshot times).
std::vector<MetricRow> compare_to_reference(const ProblemSpec& problem, const Model& candidate,
                                            const RunOutcome& run, const Model& reference_model,
                                            const RunOutcome& reference);

// Output root: $INVARIANT_GUARD_OUTPUT_ROOT when set, else the working directory.
std::filesystem::path output_root();

struct RunOptions {
  bool write = true;
  std::ostream* log = nullptr;
};

// cmd_run: reference run (if configured), then every (resolution, variant) pair concurrently.
ExperimentResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opt = {});

struct SweepRow {
  std::string variant;
  std::size_t resolution = 0;
  double normalized_mse = 0.0; // mean over snapshots
  double mae_final = 0.0;
  double error_ratio = 0.0;    // previous resolution's mae_final / this one; 0 for the first
  double l2_initial = 0.0;
  double l2_final = 0.0;
  std::string status;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::vector<RunOutcome> runs;
  std::filesystem::path output_dir;
  int exit_code = 0;
};

// cmd_sweep: every variant at every resolution against the exact solution (periodic advection) or
// the coarse-grained reference run.
SweepResult run_sweep(const ExperimentConfig& cfg, const RunOptions& opt = {});

// CSV writers shared by run and sweep.
void write_trajectory_csv(const std::filesystem::path& file, const Model& m, const RunOutcome& r);
void write_invariants_csv(const std::filesystem::path& file, const RunOutcome& r);
void write_metrics_csv(const std::filesystem::path& file, const std::vector<MetricRow>& rows);
void write_stages_csv(const std::filesystem::path& file, const std::vector<StageRecord>& stages);

} // namespace invguard::harness

#endif
