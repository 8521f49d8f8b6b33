#include "opd/lattice.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "opd/rng.hpp"

namespace opd {

namespace {

constexpr std::array<int, kNeighborhoodSize> kRowOffset = {-1, -1, -1, 0, 0, 1, 1, 1};
constexpr std::array<int, kNeighborhoodSize> kColOffset = {-1, 0, 1, -1, 1, -1, 0, 1};

// Direction k >= 4 is owned by the focal agent at slot (k - 4); direction
// k < 4 is the mirror edge owned by the neighbour at slot (3 - k).
constexpr std::size_t kFirstOwnedDirection = 4;

std::uint32_t wrap(std::int64_t v, std::uint32_t side) {
  const auto s = static_cast<std::int64_t>(side);
  return static_cast<std::uint32_t>(((v % s) + s) % s);
}

}  // namespace

void LatticeConfig::validate() const {
  if (side < 3) {
    throw std::invalid_argument("lattice side must be at least 3, got " +
                                std::to_string(side));
  }
  if (agents() > std::numeric_limits<AgentIndex>::max() / kNeighborhoodSize) {
    throw std::invalid_argument("lattice side too large: " + std::to_string(side));
  }
}

Neighborhood neighbors(AgentIndex index, const LatticeConfig& config) {
  if (index >= config.agents()) {
    throw std::out_of_range("agent index " + std::to_string(index) +
                            " outside lattice of " + std::to_string(config.agents()));
  }
  const std::uint32_t side = config.side;
  const std::int64_t row = index / side;
  const std::int64_t col = index % side;
  Neighborhood out{};
  for (std::size_t k = 0; k < kNeighborhoodSize; ++k) {
    out[k] = agent_at(wrap(row + kRowOffset[k], side), wrap(col + kColOffset[k], side), side);
  }
  return out;
}

Population::Population(LatticeConfig config, Strategy fill) : config_(config) {
  config_.validate();
  const std::size_t n = config_.agents();
  auto topology = std::make_shared<Topology>();
  topology->neighbors.resize(n);
  topology->slots.resize(n);
  for (AgentIndex x = 0; x < n; ++x) {
    topology->neighbors[x] = neighbors(x, config_);
  }
  for (AgentIndex x = 0; x < n; ++x) {
    for (std::size_t k = 0; k < kNeighborhoodSize; ++k) {
      const std::size_t owner =
          k >= kFirstOwnedDirection ? x : topology->neighbors[x][k];
      const std::size_t local =
          k >= kFirstOwnedDirection ? k - kFirstOwnedDirection : 3 - k;
      topology->slots[x][k] = static_cast<std::uint32_t>(owner * kEdgesPerAgent + local);
    }
  }
  topology_ = std::move(topology);
  strategies_.assign(n, fill);
  weights_.assign(n * kEdgesPerAgent, 1.0);
}

std::size_t Population::direction_of(AgentIndex x, AgentIndex y) const {
  if (x >= size() || y >= size()) {
    throw std::invalid_argument("agent index outside lattice");
  }
  const auto& hood = neighborhood(x);
  for (std::size_t k = 0; k < kNeighborhoodSize; ++k) {
    if (hood[k] == y) return k;
  }
  throw std::invalid_argument("agents " + std::to_string(x) + " and " +
                              std::to_string(y) + " are not adjacent");
}

double Population::edge_weight(AgentIndex x, AgentIndex y) const {
  return weight_at(x, direction_of(x, y));
}

void Population::set_edge_weight(AgentIndex x, AgentIndex y, double value) {
  assert(std::isfinite(value) && value >= 0.0);
  set_weight_at(x, direction_of(x, y), value);
}

Population build_lattice(const LatticeConfig& config, std::uint64_t seed) {
  Population pop(config);
  Rng rng = Rng::stream(seed, 0);
  for (AgentIndex x = 0; x < pop.size(); ++x) {
    pop.set_strategy(x, static_cast<Strategy>(rng.below(3)));
  }
  return pop;
}

}  // namespace opd
