#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opd/dynamics.hpp"
#include "opd/experiments.hpp"

namespace opd {

/// Parse or validation failure. `line()` is 0 when the problem is not tied
/// to a single line (cross-key checks, command-line overrides).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Flat experiment settings. Unset list keys fall back to the preset of the
/// experiment that consumes them.
///
/// Keys: side, b, l, delta, ratio, mc_steps, measure_window, seed,
/// snapshot_steps, runs_per_point, b_values, l_values, ratio_values,
/// delta_values.
struct Settings {
  SimConfig sim = presets::paper_config();
  std::size_t runs_per_point = presets::kPaperRuns;
  std::optional<std::vector<std::uint64_t>> snapshot_steps;
  std::optional<std::vector<double>> b_values;
  std::optional<std::vector<double>> l_values;
  std::optional<std::vector<double>> ratio_values;
  std::optional<std::vector<double>> delta_values;
};

/// Paper-scale defaults: 100x100, 10^5 MC steps, window 1000, 10 runs.
Settings default_settings();

/// 50x50, 2*10^4 MC steps, 5 runs. Applied before the config file.
void apply_desk_scale(Settings& settings);

/// Assigns one key. Throws ConfigError (carrying `line`) on unknown keys,
/// malformed values and out-of-range values.
void apply_setting(Settings& settings, std::string_view key, std::string_view value,
                   std::size_t line = 0);

/// `key = value` lines, `#` comments, comma-separated lists. Cross-key
/// constraints are checked after the last line.
Settings parse_config(std::string_view text, Settings base = default_settings());

/// Applies a `key=value` command-line override.
void apply_override(Settings& settings, std::string_view assignment);

/// Fully validated single-simulation config; snapshot steps default to
/// 0, 45, 1113 and the final step.
SimConfig sim_config(const Settings& settings);
SweepSpec amplitude_spec(const Settings& settings);
SweepSpec ternary_spec(const Settings& settings);
std::vector<double> timecourse_ratios(const Settings& settings);

/// One `key = value` line per key in fixed order, every value explicit.
std::string canonical_serialization(const Settings& settings);

/// 16 hex digits of FNV-1a over the canonical serialization.
std::string param_hash(const Settings& settings);

}  // namespace opd
