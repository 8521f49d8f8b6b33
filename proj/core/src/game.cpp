#include "opd/game.hpp"

#include <stdexcept>
#include <string>

namespace opd {

Strategy strategy_from_ordinal(std::uint8_t ordinal) {
  if (ordinal > 2) {
    throw std::out_of_range("strategy ordinal out of range: " + std::to_string(ordinal));
  }
  return static_cast<Strategy>(ordinal);
}

char strategy_letter(Strategy s) noexcept {
  switch (s) {
    case Strategy::Cooperate: return 'C';
    case Strategy::Defect: return 'D';
    case Strategy::Abstain: return 'A';
  }
  return '?';
}

void GameParams::validate() const {
  if (!(b >= 1.0 && b <= 2.0)) {
    throw std::invalid_argument("b must lie in [1, 2], got " + std::to_string(b));
  }
  if (!(l >= 0.0 && l < 1.0)) {
    throw std::invalid_argument("l must lie in [0, 1), got " + std::to_string(l));
  }
}

PayoffTable payoff_table(const GameParams& g) noexcept {
  PayoffTable table{};
  for (Strategy self : kAllStrategies) {
    for (Strategy other : kAllStrategies) {
      table[to_ordinal(self) * 3 + to_ordinal(other)] = payoff(self, other, g);
    }
  }
  return table;
}

}  // namespace opd
