// opdsim: Optional Prisoner's Dilemma with coevolving link weights.
//
//   opdsim run|sweep|ternary|timecourse --config <path> --out <dir>
//          [--set key=value]... [--workers N] [--desk-scale]
//
// Output tree: <out>/<experiment>/<paramhash>/...

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "opd/config.hpp"
#include "opd/experiments.hpp"
#include "opd/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::size_t workers = 1;
  bool desk_scale = false;
};

opd::Settings load_settings(const Options& opts) {
  opd::Settings settings = opd::default_settings();
  if (opts.desk_scale) opd::apply_desk_scale(settings);
  settings = opd::parse_config(opd::read_file(opts.config_path), settings);
  for (const auto& o : opts.overrides) opd::apply_override(settings, o);
  return settings;
}

fs::path experiment_dir(const Options& opts, const char* experiment,
                        const opd::Settings& settings) {
  const fs::path dir = fs::path(opts.out_dir) / experiment / opd::param_hash(settings);
  opd::write_file(dir / "config.txt", opd::canonical_serialization(settings));
  return dir;
}

void write_run(const fs::path& run_dir, const opd::SimulationResult& result) {
  opd::write_fractions_csv(result.series, run_dir / "series.csv");
  for (const auto& snap : result.snapshots) {
    opd::write_snapshot_ppm(snap.population, run_dir / opd::snapshot_filename(snap.step));
  }
}

int cmd_run(const Options& opts) {
  const auto settings = load_settings(opts);
  const opd::SimConfig cfg = opd::sim_config(settings);
  opd::SweepSpec spec;
  spec.b_values = {cfg.game.b};
  spec.l_values = {cfg.game.l};
  spec.ratio_values = {cfg.coevo.ratio};
  spec.delta_values = {cfg.coevo.delta};
  spec.runs_per_point = settings.runs_per_point;
  spec.base = cfg;

  const fs::path dir = experiment_dir(opts, "run", settings);
  opd::ExecutionOptions exec{opts.workers, [&](const opd::SweepPoint&, std::size_t run,
                                               const opd::SimulationResult& result) {
                               write_run(dir / ("run" + std::to_string(run)), result);
                             }};
  const auto sweep = opd::run_amplitude_sweep(spec, exec);
  opd::write_fractions_csv(sweep, dir / "summary.csv");
  const auto& mean = sweep.rows.front().aggregate.mean;
  std::cout << "rho_c=" << mean.c << " rho_d=" << mean.d << " rho_a=" << mean.a << '\n'
            << "wrote " << dir.string() << '\n';
  return 0;
}

int cmd_sweep(const Options& opts, bool ternary) {
  const auto settings = load_settings(opts);
  const opd::SweepSpec spec =
      ternary ? opd::ternary_spec(settings) : opd::amplitude_spec(settings);
  const char* name = ternary ? "ternary" : "sweep";
  const fs::path dir = experiment_dir(opts, name, settings);
  opd::ExecutionOptions exec{opts.workers, {}};
  const auto result =
      ternary ? opd::run_ternary_sweep(spec, exec) : opd::run_amplitude_sweep(spec, exec);
  const fs::path csv = dir / (std::string(name) + ".csv");
  opd::write_fractions_csv(result, csv);
  std::cout << "wrote " << result.rows.size() << " rows to " << csv.string() << '\n';
  return 0;
}

int cmd_timecourse(const Options& opts) {
  const auto settings = load_settings(opts);
  const opd::SimConfig cfg = opd::sim_config(settings);
  const auto ratios = opd::timecourse_ratios(settings);
  const fs::path dir = experiment_dir(opts, "timecourse", settings);
  opd::ExecutionOptions exec{opts.workers, [&](const opd::SweepPoint&, std::size_t run,
                                               const opd::SimulationResult& result) {
                               write_run(dir / ("run" + std::to_string(run)), result);
                             }};
  const auto runs = opd::run_timecourse(cfg, ratios, exec);

  std::string manifest = "run,ratio\n";
  for (std::size_t i = 0; i < runs.size(); ++i) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, runs[i].ratio);
    manifest += std::to_string(i) + ',' + std::string(buf, end) + '\n';
  }
  opd::write_file(dir / "ratios.csv", manifest);
  std::cout << "wrote " << runs.size() << " series to " << dir.string() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optional Prisoner's Dilemma with coevolving link weights"};
  app.require_subcommand(1);

  Options opts;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "key = value config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", opts.out_dir, "output directory")->required();
    sub->add_option("--set", opts.overrides, "override a config key (key=value)");
    sub->add_option("--workers", opts.workers, "concurrent simulations")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--desk-scale", opts.desk_scale,
                  "50x50 lattice, 2e4 MC steps, 5 runs (config keys still win)");
  };

  auto* run = app.add_subcommand("run", "repeated runs of one parameter point");
  auto* sweep = app.add_subcommand("sweep", "link-weight amplitude sweep");
  auto* ternary = app.add_subcommand("ternary", "b / l / amplitude grid at fixed delta");
  auto* timecourse = app.add_subcommand("timecourse", "time series and snapshots per amplitude");
  for (auto* sub : {run, sweep, ternary, timecourse}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts, false);
    if (ternary->parsed()) return cmd_sweep(opts, true);
    if (timecourse->parsed()) return cmd_timecourse(opts);
  } catch (const std::exception& e) {
    std::cerr << "opdsim: " << e.what() << '\n';
    return EXIT_FAILURE;
  }
  return EXIT_FAILURE;
}
