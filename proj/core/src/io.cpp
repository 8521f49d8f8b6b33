#include "opd/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace opd {

namespace {

void append(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, end);
}

void append(std::string& out, std::uint64_t v) {
  char buf[24];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, end);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  while (true) {
    const auto comma = line.find(',');
    fields.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return fields;
}

template <typename T>
T field(std::string_view text, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw std::invalid_argument("CSV line " + std::to_string(line) + ": bad field '" +
                                std::string(text) + "'");
  }
  return v;
}

// Calls `row(fields, line_number)` for each data line after checking the header.
template <typename Row>
void for_each_row(std::string_view text, std::string_view header, std::size_t columns,
                  Row row) {
  std::size_t line_no = 0;
  bool saw_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    const std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (!saw_header) {
      if (line != header) {
        throw std::invalid_argument("CSV header mismatch: expected '" + std::string(header) +
                                    "', got '" + std::string(line) + "'");
      }
      saw_header = true;
      continue;
    }
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(columns) + " fields, got " +
                                  std::to_string(fields.size()));
    }
    row(fields, line_no);
  }
  if (!saw_header) throw std::invalid_argument("CSV input is empty");
}

constexpr std::array<std::array<unsigned char, 3>, 3> kPalette = {{
    {0, 0, 255},  // Cooperate
    {255, 0, 0},  // Defect
    {0, 255, 0},  // Abstain
}};

}  // namespace

IoError::IoError(const std::filesystem::path& path, const std::string& what)
    : std::runtime_error(path.string() + ": " + what) {}

std::string format_series_csv(std::span<const FractionRecord> series) {
  std::string out(kSeriesHeader);
  out += '\n';
  out.reserve(out.size() + series.size() * 64);
  for (const auto& r : series) {
    append(out, r.step);
    out += ',';
    append(out, r.rho_c);
    out += ',';
    append(out, r.rho_d);
    out += ',';
    append(out, r.rho_a);
    out += '\n';
  }
  return out;
}

std::string format_sweep_csv(const SweepResult& sweep) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& row : sweep.rows) {
    const auto& p = row.point;
    const auto& m = row.aggregate.mean;
    const auto& sd = row.aggregate.stddev;
    for (double v : {p.b, p.l, p.ratio, p.delta, m.c, m.d, m.a, sd.c, sd.d, sd.a}) {
      append(out, v);
      out += ',';
    }
    append(out, static_cast<std::uint64_t>(row.aggregate.runs));
    out += '\n';
  }
  return out;
}

std::vector<FractionRecord> parse_series_csv(std::string_view text) {
  std::vector<FractionRecord> out;
  for_each_row(text, kSeriesHeader, 4, [&](const auto& f, std::size_t line) {
    out.push_back({field<std::uint64_t>(f[0], line), field<double>(f[1], line),
                   field<double>(f[2], line), field<double>(f[3], line)});
  });
  return out;
}

std::vector<SweepCsvRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepCsvRow> out;
  for_each_row(text, kSweepHeader, 11, [&](const auto& f, std::size_t line) {
    SweepCsvRow row;
    row.point = {field<double>(f[0], line), field<double>(f[1], line),
                 field<double>(f[2], line), field<double>(f[3], line)};
    row.aggregate.mean = {field<double>(f[4], line), field<double>(f[5], line),
                          field<double>(f[6], line)};
    row.aggregate.stddev = {field<double>(f[7], line), field<double>(f[8], line),
                            field<double>(f[9], line)};
    row.aggregate.runs = field<std::size_t>(f[10], line);
    out.push_back(row);
  });
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError(path, "read failed");
  return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path(), "cannot create directory: " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) throw IoError(path, "write failed");
}

void write_fractions_csv(std::span<const FractionRecord> series,
                         const std::filesystem::path& path) {
  write_file(path, format_series_csv(series));
}

void write_fractions_csv(const SweepResult& sweep, const std::filesystem::path& path) {
  write_file(path, format_sweep_csv(sweep));
}

std::vector<FractionRecord> read_series_csv(const std::filesystem::path& path) {
  try {
    return parse_series_csv(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw IoError(path, e.what());
  }
}

std::vector<SweepCsvRow> read_sweep_csv(const std::filesystem::path& path) {
  try {
    return parse_sweep_csv(read_file(path));
  } catch (const std::invalid_argument& e) {
    throw IoError(path, e.what());
  }
}

std::string encode_ppm(const Population& pop) {
  const std::string side = std::to_string(pop.config().side);
  std::string out = "P6\n" + side + ' ' + side + "\n255\n";
  out.reserve(out.size() + pop.size() * 3);
  for (Strategy s : pop.strategies()) {
    for (unsigned char byte : kPalette[to_ordinal(s)]) out += static_cast<char>(byte);
  }
  return out;
}

void write_snapshot_ppm(const Population& pop, const std::filesystem::path& path) {
  write_file(path, encode_ppm(pop));
}

std::string snapshot_filename(std::uint64_t step) {
  return "snap_" + std::to_string(step) + ".ppm";
}

}  // namespace opd
