#include "opd/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <charconv>
#include <exception>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "opd/rng.hpp"

namespace opd {

namespace {

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

void require_non_empty(const std::vector<double>& values, const char* name) {
  if (values.empty()) throw std::invalid_argument(std::string(name) + " must not be empty");
}

SweepResult run_sweep(const SweepSpec& spec, const ExecutionOptions& exec) {
  spec.validate();
  const auto points = sweep_points(spec);
  const std::size_t runs = spec.runs_per_point;

  std::vector<std::vector<RunSummary>> summaries(points.size(),
                                                 std::vector<RunSummary>(runs));
  run_jobs(points.size() * runs, exec.workers, [&](std::size_t job) {
    const std::size_t p = job / runs;
    const std::size_t r = job % runs;
    const std::uint64_t seed = run_seed(spec.base.seed, points[p], r);
    const SimConfig cfg = point_config(spec.base, points[p], seed);
    const SimulationResult result = run_simulation(cfg);
    summaries[p][r] = {points[p].key(), seed, result.stationary(cfg.measure_window)};
    if (exec.on_run) exec.on_run(points[p], r, result);
  });

  SweepResult out;
  out.rows.reserve(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) {
    SweepRow row{points[p], aggregate_runs(summaries[p]), {}};
    for (const auto& s : summaries[p]) row.seeds.push_back(s.seed);
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

void SweepSpec::validate() const {
  require_non_empty(b_values, "b_values");
  require_non_empty(l_values, "l_values");
  require_non_empty(ratio_values, "ratio_values");
  require_non_empty(delta_values, "delta_values");
  if (runs_per_point < 1) throw std::invalid_argument("runs_per_point must be at least 1");
  base.validate();
  for (const auto& p : sweep_points(*this)) {
    GameParams{p.b, p.l}.validate();
    CoevolutionParams{p.delta, p.ratio}.validate();
  }
}

std::string SweepPoint::key() const {
  return "b=" + shortest(b) + ";l=" + shortest(l) + ";ratio=" + shortest(ratio) +
         ";delta=" + shortest(delta);
}

std::vector<SweepPoint> sweep_points(const SweepSpec& spec) {
  std::vector<SweepPoint> points;
  points.reserve(spec.b_values.size() * spec.l_values.size() * spec.ratio_values.size() *
                 spec.delta_values.size());
  for (double b : spec.b_values)
    for (double l : spec.l_values)
      for (double ratio : spec.ratio_values)
        for (double delta : spec.delta_values) points.push_back({b, l, ratio, delta});
  const auto order = [](const SweepPoint& p) { return std::tie(p.b, p.l, p.ratio, p.delta); };
  std::sort(points.begin(), points.end(),
            [&](const SweepPoint& x, const SweepPoint& y) { return order(x) < order(y); });
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

std::uint64_t run_seed(std::uint64_t base_seed, const SweepPoint& point, std::size_t run) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (double v : {point.b, point.l, point.ratio, point.delta}) {
    std::uint64_t s = h ^ std::bit_cast<std::uint64_t>(v);
    h = splitmix64(s);
  }
  return derive_seed(base_seed, h, run);
}

SimConfig point_config(const SimConfig& base, const SweepPoint& point, std::uint64_t seed) {
  SimConfig cfg = base;
  cfg.game = {point.b, point.l};
  cfg.coevo = {point.delta, point.ratio};
  cfg.seed = seed;
  return cfg;
}

SweepResult run_amplitude_sweep(const SweepSpec& spec, const ExecutionOptions& exec) {
  return run_sweep(spec, exec);
}

SweepResult run_ternary_sweep(const SweepSpec& spec, const ExecutionOptions& exec) {
  if (spec.delta_values.size() != 1) {
    throw std::invalid_argument("ternary sweep needs exactly one delta value, got " +
                                std::to_string(spec.delta_values.size()));
  }
  return run_sweep(spec, exec);
}

std::vector<TimecourseRun> run_timecourse(const SimConfig& cfg, std::span<const double> ratios,
                                          const ExecutionOptions& exec) {
  if (ratios.empty()) throw std::invalid_argument("timecourse needs at least one ratio");
  std::vector<SimConfig> configs;
  for (double ratio : ratios) {
    SimConfig c = cfg;
    c.coevo.ratio = ratio;
    c.validate();
    configs.push_back(std::move(c));
  }
  std::vector<TimecourseRun> out(ratios.size(), TimecourseRun{0.0, {{}, Population(cfg.lattice), {}}});
  run_jobs(configs.size(), exec.workers, [&](std::size_t i) {
    out[i] = {ratios[i], run_simulation(configs[i])};
    if (exec.on_run) {
      const SweepPoint point{cfg.game.b, cfg.game.l, ratios[i], cfg.coevo.delta};
      exec.on_run(point, i, out[i].result);
    }
  });
  return out;
}

void run_jobs(std::size_t count, std::size_t workers,
              const std::function<void(std::size_t)>& job) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};

  auto worker = [&] {
    for (;;) {
      if (failed.load(std::memory_order_relaxed)) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        errors[i] = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace presets {

std::vector<double> evenly_spaced(double lo, double hi, std::size_t count) {
  std::vector<double> out;
  if (count == 1) return {lo};
  for (std::size_t i = 0; i < count; ++i) {
    // Rounded to 12 digits so that e.g. 0.3 is the literal 0.3, not 0.30000000000000004.
    const double raw = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, raw, std::chars_format::fixed, 12);
    double v = 0.0;
    std::from_chars(buf, end, v);
    out.push_back(v);
  }
  return out;
}

SimConfig paper_config() {
  SimConfig cfg;
  cfg.lattice.side = kPaperSide;
  cfg.game = {1.9, 0.6};
  cfg.coevo = {0.8, 0.0};
  cfg.mc_steps = kPaperMcSteps;
  cfg.measure_window = kMeasureWindow;
  cfg.seed = 1;
  return cfg;
}

SimConfig desk_config() {
  SimConfig cfg = paper_config();
  cfg.lattice.side = kDeskSide;
  cfg.mc_steps = kDeskMcSteps;
  return cfg;
}

std::vector<std::uint64_t> snapshot_schedule(std::uint64_t mc_steps) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : {std::uint64_t{0}, std::uint64_t{45}, std::uint64_t{1113}, mc_steps}) {
    if (s <= mc_steps && (out.empty() || out.back() < s)) out.push_back(s);
  }
  return out;
}

std::vector<double> amplitude_b_values() { return {1.18, 1.34, 1.74, 1.90}; }
std::vector<double> amplitude_l_values() { return {0.0, 0.6}; }
std::vector<double> amplitude_delta_values() { return {0.2, 0.4, 0.8}; }
std::vector<double> amplitude_ratio_values() { return evenly_spaced(0.0, 1.0, 11); }
std::vector<double> timecourse_ratios() { return {0.0, 0.2, 1.0}; }

std::vector<double> ternary_b_values() { return evenly_spaced(1.0, 2.0, 11); }
std::vector<double> ternary_l_values() {
  auto v = evenly_spaced(0.0, 1.0, 11);
  v.pop_back();
  return v;
}
std::vector<double> ternary_ratio_values() { return evenly_spaced(0.0, 1.0, 11); }

}  // namespace presets

}  // namespace opd
