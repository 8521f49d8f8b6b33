#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "opd/dynamics.hpp"
#include "opd/metrics.hpp"

namespace opd {

/// Grid over (b, l, ratio, delta). Each point runs `runs_per_point`
/// independent simulations derived from `base`.
struct SweepSpec {
  std::vector<double> b_values;
  std::vector<double> l_values;
  std::vector<double> ratio_values;
  std::vector<double> delta_values;
  std::size_t runs_per_point = 10;
  SimConfig base;

  void validate() const;
};

struct SweepPoint {
  double b = 0.0;
  double l = 0.0;
  double ratio = 0.0;
  double delta = 0.0;

  /// Canonical text identity, e.g. "b=1.9;l=0.6;ratio=0.2;delta=0.8".
  std::string key() const;
  bool operator==(const SweepPoint&) const = default;
};

struct SweepRow {
  SweepPoint point;
  Aggregate aggregate;
  std::vector<std::uint64_t> seeds;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

/// Called once per finished simulation, possibly from a worker thread.
using RunObserver = std::function<void(const SweepPoint& point, std::size_t run,
                                       const SimulationResult& result)>;

struct ExecutionOptions {
  std::size_t workers = 1;
  RunObserver on_run;
};

/// Cartesian product in ascending (b, l, ratio, delta) order, duplicates removed.
std::vector<SweepPoint> sweep_points(const SweepSpec& spec);

/// Seed of the run-th simulation at `point`. Depends only on the base seed,
/// the point's parameter values and the run index, so a point reproduces its
/// row when swept on its own.
std::uint64_t run_seed(std::uint64_t base_seed, const SweepPoint& point, std::size_t run);

SimConfig point_config(const SimConfig& base, const SweepPoint& point, std::uint64_t seed);

/// Fails fast: the first failing job (in point/run order) is rethrown and no
/// partial result is returned.
SweepResult run_amplitude_sweep(const SweepSpec& spec, const ExecutionOptions& exec = {});

/// Same as the amplitude sweep but over a single fixed delta.
SweepResult run_ternary_sweep(const SweepSpec& spec, const ExecutionOptions& exec = {});

struct TimecourseRun {
  double ratio = 0.0;
  SimulationResult result;
};

/// One simulation per ratio, all from cfg.seed (shared initial lattice).
std::vector<TimecourseRun> run_timecourse(const SimConfig& cfg, std::span<const double> ratios,
                                          const ExecutionOptions& exec = {});

/// Runs `count` independent jobs on up to `workers` threads. Results are
/// joined by index; the lowest-index exception is rethrown.
void run_jobs(std::size_t count, std::size_t workers,
              const std::function<void(std::size_t)>& job);

namespace presets {

inline constexpr std::uint32_t kPaperSide = 100;
inline constexpr std::uint64_t kPaperMcSteps = 100000;
inline constexpr std::uint64_t kMeasureWindow = 1000;
inline constexpr std::size_t kPaperRuns = 10;

inline constexpr std::uint32_t kDeskSide = 50;
inline constexpr std::uint64_t kDeskMcSteps = 20000;
inline constexpr std::size_t kDeskRuns = 5;

/// `count` evenly spaced values from lo to hi inclusive.
std::vector<double> evenly_spaced(double lo, double hi, std::size_t count);

SimConfig paper_config();
SimConfig desk_config();

/// Snapshot schedule 0, 45, 1113 and the final step.
std::vector<std::uint64_t> snapshot_schedule(std::uint64_t mc_steps);

std::vector<double> amplitude_b_values();      // 1.18, 1.34, 1.74, 1.90
std::vector<double> amplitude_l_values();      // 0.0, 0.6
std::vector<double> amplitude_delta_values();  // 0.2, 0.4, 0.8
std::vector<double> amplitude_ratio_values();  // 0.0 .. 1.0 step 0.1
std::vector<double> timecourse_ratios();       // 0.0, 0.2, 1.0

/// 11 points per axis intersected with the valid ranges; l stops at 0.9.
std::vector<double> ternary_b_values();
std::vector<double> ternary_l_values();
std::vector<double> ternary_ratio_values();
inline constexpr double kTernaryDelta = 0.8;

}  // namespace presets

}  // namespace opd
