#include "opd/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace opd {

FractionRecord strategy_fractions(const Population& pop, std::uint64_t step) {
  std::array<std::size_t, 3> counts{};
  for (Strategy s : pop.strategies()) ++counts[to_ordinal(s)];
  const auto n = static_cast<double>(pop.size());
  return FractionRecord{step, static_cast<double>(counts[0]) / n,
                        static_cast<double>(counts[1]) / n,
                        static_cast<double>(counts[2]) / n};
}

FractionTriple stationary_fraction(std::span<const FractionRecord> series,
                                   std::size_t window) {
  if (window == 0) throw std::invalid_argument("stationary window must be positive");
  if (window > series.size()) {
    throw std::invalid_argument("stationary window " + std::to_string(window) +
                                " exceeds series length " + std::to_string(series.size()));
  }
  FractionTriple sum;
  for (const auto& r : series.last(window)) {
    sum.c += r.rho_c;
    sum.d += r.rho_d;
    sum.a += r.rho_a;
  }
  const auto w = static_cast<double>(window);
  return {sum.c / w, sum.d / w, sum.a / w};
}

Aggregate aggregate_runs(std::span<const RunSummary> summaries) {
  if (summaries.empty()) throw std::invalid_argument("no runs to aggregate");
  for (const auto& s : summaries) {
    if (s.config_key != summaries.front().config_key) {
      throw std::invalid_argument("cannot aggregate runs of different configs: '" +
                                  summaries.front().config_key + "' vs '" +
                                  s.config_key + "'");
    }
  }

  std::vector<const RunSummary*> ordered;
  ordered.reserve(summaries.size());
  for (const auto& s : summaries) ordered.push_back(&s);
  std::sort(ordered.begin(), ordered.end(), [](const RunSummary* a, const RunSummary* b) {
    if (a->seed != b->seed) return a->seed < b->seed;
    if (a->stationary.c != b->stationary.c) return a->stationary.c < b->stationary.c;
    if (a->stationary.d != b->stationary.d) return a->stationary.d < b->stationary.d;
    return a->stationary.a < b->stationary.a;
  });

  // Deviations are taken from the first run, so identical runs give their
  // common value as the mean and a deviation of exactly zero.
  const FractionTriple shift = ordered.front()->stationary;
  const auto n = static_cast<double>(ordered.size());
  FractionTriple sum;
  FractionTriple sum_sq;
  for (const auto* s : ordered) {
    const double dc = s->stationary.c - shift.c;
    const double dd = s->stationary.d - shift.d;
    const double da = s->stationary.a - shift.a;
    sum.c += dc;
    sum.d += dd;
    sum.a += da;
    sum_sq.c += dc * dc;
    sum_sq.d += dd * dd;
    sum_sq.a += da * da;
  }

  Aggregate out;
  out.runs = ordered.size();
  out.mean = {shift.c + sum.c / n, shift.d + sum.d / n, shift.a + sum.a / n};
  if (ordered.size() < 2) return out;

  const auto sample_sd = [n](double s, double ss) {
    return std::sqrt(std::max(0.0, (ss - s * s / n) / (n - 1)));
  };
  out.stddev = {sample_sd(sum.c, sum_sq.c), sample_sd(sum.d, sum_sq.d),
                sample_sd(sum.a, sum_sq.a)};
  return out;
}

}  // namespace opd
