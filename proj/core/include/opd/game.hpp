#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace opd {

enum class Strategy : std::uint8_t { Cooperate = 0, Defect = 1, Abstain = 2 };

inline constexpr std::array<Strategy, 3> kAllStrategies = {
    Strategy::Cooperate, Strategy::Defect, Strategy::Abstain};

constexpr std::uint8_t to_ordinal(Strategy s) noexcept {
  return static_cast<std::uint8_t>(s);
}

/// Throws std::out_of_range for ordinals above 2.
Strategy strategy_from_ordinal(std::uint8_t ordinal);

char strategy_letter(Strategy s) noexcept;

/// Weak Optional Prisoner's Dilemma payoffs. R = 1 and P = S = 0 are fixed;
/// the temptation T is `b` and the loner's payoff L is `l`.
struct GameParams {
  static constexpr double kReward = 1.0;
  static constexpr double kPunishment = 0.0;
  static constexpr double kSucker = 0.0;

  double b = 1.9;
  double l = 0.6;

  double temptation() const noexcept { return b; }
  double loner() const noexcept { return l; }

  /// Accepts b in [1, 2] and l in [0, 1); throws std::invalid_argument.
  void validate() const;
};

/// Row-player payoff for `self` playing against `other`.
constexpr double payoff(Strategy self, Strategy other, const GameParams& g) noexcept {
  if (self == Strategy::Abstain || other == Strategy::Abstain) return g.l;
  if (self == Strategy::Cooperate) {
    return other == Strategy::Cooperate ? GameParams::kReward : GameParams::kSucker;
  }
  return other == Strategy::Cooperate ? g.b : GameParams::kPunishment;
}

/// Flattened 3x3 payoff table indexed by [self * 3 + other].
using PayoffTable = std::array<double, 9>;

PayoffTable payoff_table(const GameParams& g) noexcept;

}  // namespace opd
