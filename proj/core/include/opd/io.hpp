#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "opd/experiments.hpp"
#include "opd/lattice.hpp"
#include "opd/metrics.hpp"

namespace opd {

class IoError : public std::runtime_error {
 public:
  IoError(const std::filesystem::path& path, const std::string& what);
};

inline constexpr std::string_view kSeriesHeader = "step,rho_c,rho_d,rho_a";
inline constexpr std::string_view kSweepHeader =
    "b,l,ratio,delta,rho_c,rho_d,rho_a,sd_c,sd_d,sd_a,runs";

/// One parsed sweep CSV line.
struct SweepCsvRow {
  SweepPoint point;
  Aggregate aggregate;

  bool operator==(const SweepCsvRow&) const = default;
};

// Numbers are written in shortest round-trip form, so parsing a written
// file reproduces every value bit for bit.
std::string format_series_csv(std::span<const FractionRecord> series);
std::string format_sweep_csv(const SweepResult& sweep);
std::vector<FractionRecord> parse_series_csv(std::string_view text);
std::vector<SweepCsvRow> parse_sweep_csv(std::string_view text);

void write_fractions_csv(std::span<const FractionRecord> series,
                         const std::filesystem::path& path);
void write_fractions_csv(const SweepResult& sweep, const std::filesystem::path& path);
std::vector<FractionRecord> read_series_csv(const std::filesystem::path& path);
std::vector<SweepCsvRow> read_sweep_csv(const std::filesystem::path& path);

/// Binary P6: "P6\n<side> <side>\n255\n" followed by one RGB triple per
/// agent in row-major order. C is blue, D red, A green.
std::string encode_ppm(const Population& pop);
void write_snapshot_ppm(const Population& pop, const std::filesystem::path& path);

/// "snap_<step>.ppm"
std::string snapshot_filename(std::uint64_t step);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace opd
