#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "opd/lattice.hpp"

namespace opd {

struct FractionRecord {
  std::uint64_t step = 0;
  double rho_c = 0.0;
  double rho_d = 0.0;
  double rho_a = 0.0;

  double sum() const noexcept { return rho_c + rho_d + rho_a; }
  bool operator==(const FractionRecord&) const = default;
};

struct FractionTriple {
  double c = 0.0;
  double d = 0.0;
  double a = 0.0;

  bool operator==(const FractionTriple&) const = default;
};

struct RunSummary {
  std::string config_key;  // canonical identity of the parameter point
  std::uint64_t seed = 0;
  FractionTriple stationary;
};

struct Aggregate {
  FractionTriple mean;
  FractionTriple stddev;  // sample (n - 1) deviation, 0 for a single run
  std::size_t runs = 0;
};

FractionRecord strategy_fractions(const Population& pop, std::uint64_t step);

/// Component-wise mean of the last `window` records. Throws
/// std::invalid_argument when window is 0 or exceeds the series length.
FractionTriple stationary_fraction(std::span<const FractionRecord> series,
                                   std::size_t window);

/// Mean and sample standard deviation over runs of one parameter point.
/// Sums are taken in ascending seed order so the result does not depend on
/// input order. Throws std::invalid_argument on empty input or mixed keys.
Aggregate aggregate_runs(std::span<const RunSummary> summaries);

}  // namespace opd
