#include "opd/config.hpp"

#include <charconv>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <type_traits>

namespace opd {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::size_t line) {
  return line == 0 ? std::string() : "line " + std::to_string(line) + ": ";
}

double parse_double(std::string_view key, std::string_view text, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(line, "malformed number for '" + std::string(key) + "': '" +
                                std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_uint(std::string_view key, std::string_view text, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(line, "malformed non-negative integer for '" + std::string(key) +
                                "': '" + std::string(text) + "'");
  }
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view key, std::string_view text, std::size_t line,
                          Parse parse) {
  std::vector<T> out;
  if (trim(text).empty()) return out;
  while (true) {
    const auto comma = text.find(',');
    out.push_back(parse(key, trim(text.substr(0, comma)), line));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

void check_range(std::string_view key, double v, bool ok, const char* bound, std::size_t line) {
  if (!ok) {
    std::ostringstream msg;
    msg << "'" << key << "' = " << v << " is outside " << bound;
    throw ConfigError(line, msg.str());
  }
}

void check_b(std::string_view key, double v, std::size_t line) {
  check_range(key, v, v >= 1.0 && v <= 2.0, "[1, 2]", line);
}
void check_l(std::string_view key, double v, std::size_t line) {
  check_range(key, v, v >= 0.0 && v < 1.0, "[0, 1)", line);
}
void check_delta(std::string_view key, double v, std::size_t line) {
  check_range(key, v, v > 0.0 && v <= 1.0, "(0, 1]", line);
}
void check_ratio(std::string_view key, double v, std::size_t line) {
  check_range(key, v, v >= 0.0 && v <= 1.0, "[0, 1]", line);
}

using Setter = std::function<void(Settings&, std::string_view, std::string_view, std::size_t)>;

template <typename Check, typename Assign>
Setter real_key(Check check, Assign assign) {
  return [=](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
    const double v = parse_double(key, value, line);
    check(key, v, line);
    assign(s, v);
  };
}

template <typename Check>
Setter real_list_key(std::optional<std::vector<double>> Settings::*member, Check check) {
  return [=](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
    auto values = parse_list<double>(key, value, line, parse_double);
    for (double v : values) check(key, v, line);
    s.*member = std::move(values);
  };
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"side",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         const auto v = parse_uint(key, value, line);
         if (v < 3 || v > 20000) {
           throw ConfigError(line, "'side' = " + std::to_string(v) + " is outside [3, 20000]");
         }
         s.sim.lattice.side = static_cast<std::uint32_t>(v);
       }},
      {"b", real_key(check_b, [](Settings& s, double v) { s.sim.game.b = v; })},
      {"l", real_key(check_l, [](Settings& s, double v) { s.sim.game.l = v; })},
      {"delta", real_key(check_delta, [](Settings& s, double v) { s.sim.coevo.delta = v; })},
      {"ratio", real_key(check_ratio, [](Settings& s, double v) { s.sim.coevo.ratio = v; })},
      {"mc_steps",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         s.sim.mc_steps = parse_uint(key, value, line);
       }},
      {"measure_window",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         const auto v = parse_uint(key, value, line);
         if (v < 1) throw ConfigError(line, "'measure_window' must be at least 1");
         s.sim.measure_window = v;
       }},
      {"seed",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         s.sim.seed = parse_uint(key, value, line);
       }},
      {"runs_per_point",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         const auto v = parse_uint(key, value, line);
         if (v < 1) throw ConfigError(line, "'runs_per_point' must be at least 1");
         s.runs_per_point = v;
       }},
      {"snapshot_steps",
       [](Settings& s, std::string_view key, std::string_view value, std::size_t line) {
         s.snapshot_steps = parse_list<std::uint64_t>(key, value, line, parse_uint);
       }},
      {"b_values", real_list_key(&Settings::b_values, check_b)},
      {"l_values", real_list_key(&Settings::l_values, check_l)},
      {"ratio_values", real_list_key(&Settings::ratio_values, check_ratio)},
      {"delta_values", real_list_key(&Settings::delta_values, check_delta)},
  };
  return table;
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    if constexpr (std::is_floating_point_v<T>) {
      out += shortest(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

SweepSpec spec_from(const Settings& s, std::vector<double> b, std::vector<double> l,
                    std::vector<double> ratio, std::vector<double> delta) {
  SweepSpec spec;
  spec.b_values = s.b_values.value_or(std::move(b));
  spec.l_values = s.l_values.value_or(std::move(l));
  spec.ratio_values = s.ratio_values.value_or(std::move(ratio));
  spec.delta_values = s.delta_values.value_or(std::move(delta));
  spec.runs_per_point = s.runs_per_point;
  spec.base = s.sim;
  spec.base.snapshot_steps = s.snapshot_steps.value_or(std::vector<std::uint64_t>{});
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return spec;
}

}  // namespace

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(where(line) + message), line_(line) {}

Settings default_settings() { return Settings{}; }

void apply_desk_scale(Settings& settings) {
  settings.sim.lattice.side = presets::kDeskSide;
  settings.sim.mc_steps = presets::kDeskMcSteps;
  settings.runs_per_point = presets::kDeskRuns;
}

void apply_setting(Settings& settings, std::string_view key, std::string_view value,
                   std::size_t line) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    throw ConfigError(line, "unknown key '" + std::string(key) + "'");
  }
  it->second(settings, key, value, line);
}

Settings parse_config(std::string_view text, Settings base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(line_no, "missing key before '='");
    apply_setting(base, key, trim(line.substr(eq + 1)), line_no);
  }
  sim_config(base);
  return base;
}

void apply_override(Settings& settings, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(0, "override must be key=value, got '" + std::string(assignment) + "'");
  }
  apply_setting(settings, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

SimConfig sim_config(const Settings& settings) {
  SimConfig cfg = settings.sim;
  cfg.snapshot_steps = settings.snapshot_steps.value_or(presets::snapshot_schedule(cfg.mc_steps));
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return cfg;
}

SweepSpec amplitude_spec(const Settings& settings) {
  return spec_from(settings, presets::amplitude_b_values(), presets::amplitude_l_values(),
                   presets::amplitude_ratio_values(), presets::amplitude_delta_values());
}

SweepSpec ternary_spec(const Settings& settings) {
  return spec_from(settings, presets::ternary_b_values(), presets::ternary_l_values(),
                   presets::ternary_ratio_values(), {presets::kTernaryDelta});
}

std::vector<double> timecourse_ratios(const Settings& settings) {
  auto ratios = settings.ratio_values.value_or(presets::timecourse_ratios());
  if (ratios.empty()) throw ConfigError(0, "ratio_values must not be empty");
  return ratios;
}

std::string canonical_serialization(const Settings& s) {
  std::ostringstream out;
  out << "side = " << s.sim.lattice.side << '\n'
      << "b = " << shortest(s.sim.game.b) << '\n'
      << "l = " << shortest(s.sim.game.l) << '\n'
      << "delta = " << shortest(s.sim.coevo.delta) << '\n'
      << "ratio = " << shortest(s.sim.coevo.ratio) << '\n'
      << "mc_steps = " << s.sim.mc_steps << '\n'
      << "measure_window = " << s.sim.measure_window << '\n'
      << "seed = " << s.sim.seed << '\n'
      << "runs_per_point = " << s.runs_per_point << '\n';
  const auto list = [&](const char* key, const auto& values) {
    if (values) out << key << " = " << join(*values) << '\n';
  };
  list("snapshot_steps", s.snapshot_steps);
  list("b_values", s.b_values);
  list("l_values", s.l_values);
  list("ratio_values", s.ratio_values);
  list("delta_values", s.delta_values);
  return out.str();
}

std::string param_hash(const Settings& settings) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical_serialization(settings)) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  auto [end, ec] = std::to_chars(buf, buf + 16, h, 16);
  std::string hex(buf, end);
  return std::string(16 - hex.size(), '0') + hex;
}

}  // namespace opd
