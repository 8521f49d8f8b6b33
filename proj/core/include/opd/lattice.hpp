#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "opd/game.hpp"

namespace opd {

using AgentIndex = std::uint32_t;

struct LatticeConfig {
  std::uint32_t side = 100;

  std::size_t agents() const noexcept {
    return static_cast<std::size_t>(side) * side;
  }
  /// Rejects side < 3 (Moore neighbours would repeat) and grids whose agent
  /// count does not fit AgentIndex.
  void validate() const;

  bool operator==(const LatticeConfig&) const = default;
};

inline constexpr std::size_t kNeighborhoodSize = 8;
inline constexpr std::size_t kEdgesPerAgent = 4;

/// Moore neighbourhood in fixed order NW, N, NE, W, E, SW, S, SE.
using Neighborhood = std::array<AgentIndex, kNeighborhoodSize>;

constexpr AgentIndex agent_at(std::uint32_t row, std::uint32_t col,
                              std::uint32_t side) noexcept {
  return row * side + col;
}

/// Toroidally wrapped Moore neighbourhood. Throws std::out_of_range for an
/// index outside the grid.
Neighborhood neighbors(AgentIndex index, const LatticeConfig& config);

/// Agents on a Moore-8 torus plus one weight slot per undirected edge.
///
/// Agent x owns the slots of its E, SW, S and SE edges; its NW, N, NE and W
/// edges are owned by the corresponding neighbour. Neighbour and slot tables
/// are built once and shared between copies.
class Population {
 public:
  explicit Population(LatticeConfig config, Strategy fill = Strategy::Cooperate);

  const LatticeConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return strategies_.size(); }
  std::size_t edge_count() const noexcept { return weights_.size(); }

  Strategy strategy(AgentIndex x) const noexcept { return strategies_[x]; }
  void set_strategy(AgentIndex x, Strategy s) noexcept { strategies_[x] = s; }
  std::span<const Strategy> strategies() const noexcept { return strategies_; }

  const Neighborhood& neighborhood(AgentIndex x) const noexcept {
    return topology_->neighbors[x];
  }

  /// Weight of the edge between x and its k-th neighbour.
  double weight_at(AgentIndex x, std::size_t k) const noexcept {
    return weights_[topology_->slots[x][k]];
  }
  void set_weight_at(AgentIndex x, std::size_t k, double value) noexcept {
    weights_[topology_->slots[x][k]] = value;
  }
  std::size_t slot_at(AgentIndex x, std::size_t k) const noexcept {
    return topology_->slots[x][k];
  }

  /// Order-independent access by endpoint pair. Throws std::invalid_argument
  /// if y is not a Moore neighbour of x.
  double edge_weight(AgentIndex x, AgentIndex y) const;
  void set_edge_weight(AgentIndex x, AgentIndex y, double value);

  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> mutable_weights() noexcept { return weights_; }

  bool operator==(const Population& other) const noexcept {
    return config_ == other.config_ && strategies_ == other.strategies_ &&
           weights_ == other.weights_;
  }

 private:
  struct Topology {
    std::vector<Neighborhood> neighbors;
    std::vector<std::array<std::uint32_t, kNeighborhoodSize>> slots;
  };

  std::size_t direction_of(AgentIndex x, AgentIndex y) const;

  LatticeConfig config_;
  std::shared_ptr<const Topology> topology_;
  std::vector<Strategy> strategies_;
  std::vector<double> weights_;
};

/// Uniform random strategies (one `below(3)` draw per agent in index order,
/// from stream 0 of `seed`) and unit weights on every edge.
Population build_lattice(const LatticeConfig& config, std::uint64_t seed);

}  // namespace opd
