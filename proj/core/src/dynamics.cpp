#include "opd/dynamics.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace opd {

namespace {

double pairwise_sum(const std::array<double, kNeighborhoodSize>& u) noexcept {
  return ((u[0] + u[1]) + (u[2] + u[3])) + ((u[4] + u[5]) + (u[6] + u[7]));
}

NeighborhoodUtility utilities_with(const PayoffTable& table, AgentIndex x,
                                   const Population& pop) noexcept {
  NeighborhoodUtility out;
  const auto& hood = pop.neighborhood(x);
  const std::size_t row = to_ordinal(pop.strategy(x)) * 3;
  for (std::size_t k = 0; k < kNeighborhoodSize; ++k) {
    out.u[k] = pop.weight_at(x, k) * table[row + to_ordinal(pop.strategy(hood[k]))];
  }
  out.total = pairwise_sum(out.u);
  return out;
}

StrategyUpdateOutcome inner_step_with(const PayoffTable& table, Population& pop,
                                      const GameParams& game,
                                      const CoevolutionParams& coevo, Rng& rng) {
  StrategyUpdateOutcome out;
  const AgentIndex x = rng.below(static_cast<std::uint32_t>(pop.size()));
  out.focal = x;

  update_link_weights(x, utilities_with(table, x, pop), pop, coevo);
  out.utility_focal = utilities_with(table, x, pop).total;

  const AgentIndex y = pop.neighborhood(x)[rng.below(kNeighborhoodSize)];
  out.partner = y;
  out.utility_partner = utilities_with(table, y, pop).total;

  if (out.utility_partner > out.utility_focal) {
    out.probability = adoption_probability(out.utility_focal, out.utility_partner, game);
    out.adopted = rng.uniform() < out.probability;
    if (out.adopted) pop.set_strategy(x, pop.strategy(y));
  }
  return out;
}

}  // namespace

void CoevolutionParams::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("delta must lie in (0, 1], got " + std::to_string(delta));
  }
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw std::invalid_argument("ratio must lie in [0, 1], got " + std::to_string(ratio));
  }
}

void SimConfig::validate() const {
  lattice.validate();
  game.validate();
  coevo.validate();
  if (measure_window < 1) {
    throw std::invalid_argument("measure_window must be at least 1");
  }
  // The series holds mc_steps + 1 records (step 0 included).
  if (measure_window > mc_steps + 1) {
    throw std::invalid_argument("measure_window (" + std::to_string(measure_window) +
                                ") exceeds the " + std::to_string(mc_steps + 1) +
                                " recorded steps");
  }
  for (auto step : snapshot_steps) {
    if (step > mc_steps) {
      throw std::invalid_argument("snapshot step " + std::to_string(step) +
                                  " beyond mc_steps " + std::to_string(mc_steps));
    }
  }
}

NeighborhoodUtility interaction_utilities(AgentIndex x, const Population& pop,
                                          const GameParams& game) {
  return utilities_with(payoff_table(game), x, pop);
}

void update_link_weights(AgentIndex x, const NeighborhoodUtility& util, Population& pop,
                         const CoevolutionParams& coevo) {
  const double step = coevo.increment();
  const double lo = coevo.lower_bound();
  const double hi = coevo.upper_bound();
  const double mean = util.mean();
  for (std::size_t k = 0; k < kNeighborhoodSize; ++k) {
    double w = pop.weight_at(x, k);
    if (util.u[k] > mean) {
      w += step;
    } else if (util.u[k] < mean) {
      w -= step;
    } else {
      continue;
    }
    w = std::clamp(w, lo, hi);
    assert(w >= lo && w <= hi);
    pop.set_weight_at(x, k, w);
  }
}

double adoption_probability(double utility_focal, double utility_partner,
                            const GameParams& game) noexcept {
  if (!(utility_partner > utility_focal)) return 0.0;
  const double scale = static_cast<double>(kNeighborhoodSize) *
                       (game.temptation() - GameParams::kPunishment);
  return std::min(1.0, (utility_partner - utility_focal) / scale);
}

StrategyUpdateOutcome mc_inner_step(Population& pop, const GameParams& game,
                                    const CoevolutionParams& coevo, Rng& rng) {
  return inner_step_with(payoff_table(game), pop, game, coevo, rng);
}

void mc_step(Population& pop, const GameParams& game, const CoevolutionParams& coevo,
             Rng& rng) {
  const PayoffTable table = payoff_table(game);
  for (std::size_t i = 0, n = pop.size(); i < n; ++i) {
    inner_step_with(table, pop, game, coevo, rng);
  }
}

SimulationResult run_simulation(const SimConfig& cfg) {
  cfg.validate();
  Population pop = build_lattice(cfg.lattice, cfg.seed);
  Rng rng = Rng::stream(cfg.seed, 1);

  std::vector<std::uint64_t> snaps = cfg.snapshot_steps;
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());
  auto next_snap = snaps.begin();

  SimulationResult result{{}, pop, {}};
  result.series.reserve(cfg.mc_steps + 1);

  for (std::uint64_t step = 0;; ++step) {
    if (step > 0) mc_step(pop, cfg.game, cfg.coevo, rng);
    result.series.push_back(strategy_fractions(pop, step));
    if (next_snap != snaps.end() && *next_snap == step) {
      result.snapshots.push_back({step, pop});
      ++next_snap;
    }
    if (step == cfg.mc_steps) break;
  }
  result.final_population = std::move(pop);
  return result;
}

}  // namespace opd
