#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "opd/game.hpp"
#include "opd/lattice.hpp"
#include "opd/metrics.hpp"
#include "opd/rng.hpp"

namespace opd {

struct CoevolutionParams {
  double delta = 0.8;  // weight heterogeneity: weights live in [1 - delta, 1 + delta]
  double ratio = 0.0;  // link-weight amplitude, increment / delta

  double increment() const noexcept { return ratio * delta; }
  double lower_bound() const noexcept { return 1.0 - delta; }
  double upper_bound() const noexcept { return 1.0 + delta; }

  /// Accepts 0 < delta <= 1 and 0 <= ratio <= 1.
  void validate() const;
};

/// Weighted utilities of one agent against its neighbourhood, in neighbourhood
/// order. `total` is summed pairwise, ((u0+u1)+(u2+u3))+((u4+u5)+(u6+u7)),
/// so equal entries give a total of exactly 8x and a mean equal to each entry.
struct NeighborhoodUtility {
  std::array<double, kNeighborhoodSize> u{};
  double total = 0.0;

  double mean() const noexcept { return total / static_cast<double>(kNeighborhoodSize); }
};

struct StrategyUpdateOutcome {
  AgentIndex focal = 0;
  AgentIndex partner = 0;
  bool adopted = false;
  double probability = 0.0;
  double utility_focal = 0.0;
  double utility_partner = 0.0;
};

struct SimConfig {
  LatticeConfig lattice;
  GameParams game;
  CoevolutionParams coevo;
  std::uint64_t mc_steps = 100000;
  std::uint64_t measure_window = 1000;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> snapshot_steps;

  /// Validates every component plus 1 <= measure_window <= mc_steps + 1 and
  /// snapshot steps within [0, mc_steps]. Throws std::invalid_argument.
  void validate() const;
};

NeighborhoodUtility interaction_utilities(AgentIndex x, const Population& pop,
                                          const GameParams& game);

/// Moves each of x's edges up by the increment when its utility beats x's
/// mean utility, down when it falls short, then clamps into the weight band.
void update_link_weights(AgentIndex x, const NeighborhoodUtility& util, Population& pop,
                         const CoevolutionParams& coevo);

/// Imitation probability (U_y - U_x) / (8 (T - P)), 0 unless U_y > U_x and
/// clamped to 1. Weighted utilities can exceed the unweighted bound 8T.
double adoption_probability(double utility_focal, double utility_partner,
                            const GameParams& game) noexcept;

/// One asynchronous update. Draw order on `rng`: focal agent `below(N)`,
/// partner `below(8)`, and one `uniform()` only when U_y > U_x.
StrategyUpdateOutcome mc_inner_step(Population& pop, const GameParams& game,
                                    const CoevolutionParams& coevo, Rng& rng);

/// N inner steps, focal agents drawn with replacement.
void mc_step(Population& pop, const GameParams& game, const CoevolutionParams& coevo,
             Rng& rng);

struct Snapshot {
  std::uint64_t step = 0;
  Population population;
};

struct SimulationResult {
  std::vector<FractionRecord> series;  // step 0 plus one record per MC step
  Population final_population;
  std::vector<Snapshot> snapshots;

  FractionTriple stationary(std::size_t window) const {
    return stationary_fraction(series, window);
  }
};

/// Builds the lattice from stream 0 of cfg.seed and drives the dynamics
/// from stream 1.
SimulationResult run_simulation(const SimConfig& cfg);

}  // namespace opd
