#include <doctest.h>

#include <stdexcept>

#include "opd/game.hpp"

using opd::GameParams;
using opd::payoff;
using opd::Strategy;

namespace {
constexpr Strategy C = Strategy::Cooperate;
constexpr Strategy D = Strategy::Defect;
constexpr Strategy A = Strategy::Abstain;
}  // namespace

TEST_CASE("payoff matrix values") {
  const GameParams g{1.9, 0.6};
  CHECK(payoff(C, C, g) == 1.0);
  CHECK(payoff(D, C, g) == 1.9);
  CHECK(payoff(C, D, g) == 0.0);
  CHECK(payoff(D, D, g) == 0.0);
  CHECK(payoff(A, D, g) == 0.6);
  CHECK(payoff(D, A, g) == 0.6);
}

TEST_CASE("abstention pays l in every pairing") {
  for (double l : {0.0, 0.3, 0.6, 0.99}) {
    const GameParams g{1.5, l};
    for (Strategy s : opd::kAllStrategies) {
      CHECK(payoff(A, s, g) == l);
      CHECK(payoff(s, A, g) == l);
    }
  }
}

TEST_CASE("dilemma and loner orderings") {
  for (double b : {1.01, 1.18, 1.34, 1.74, 1.9, 2.0}) {
    for (double l : {0.01, 0.6, 0.95}) {
      const GameParams g{b, l};
      CHECK(payoff(D, C, g) > payoff(C, C, g));
      CHECK(payoff(C, C, g) > payoff(D, D, g));
      CHECK(payoff(D, D, g) >= payoff(C, D, g));
      CHECK(payoff(D, D, g) < payoff(A, C, g));
      CHECK(payoff(A, C, g) < payoff(C, C, g));
      for (Strategy x : opd::kAllStrategies)
        for (Strategy y : opd::kAllStrategies) CHECK(payoff(x, y, g) >= 0.0);
    }
  }
}

TEST_CASE("payoff table agrees with payoff") {
  const GameParams g{1.34, 0.6};
  const auto table = opd::payoff_table(g);
  for (Strategy x : opd::kAllStrategies)
    for (Strategy y : opd::kAllStrategies)
      CHECK(table[opd::to_ordinal(x) * 3 + opd::to_ordinal(y)] == payoff(x, y, g));
}

TEST_CASE("strategy ordinal round trip") {
  for (Strategy s : opd::kAllStrategies) {
    CHECK(opd::strategy_from_ordinal(opd::to_ordinal(s)) == s);
  }
  CHECK_THROWS_AS(opd::strategy_from_ordinal(3), std::out_of_range);
  CHECK(opd::strategy_letter(C) == 'C');
  CHECK(opd::strategy_letter(D) == 'D');
  CHECK(opd::strategy_letter(A) == 'A');
}

TEST_CASE("game parameter validation") {
  CHECK_NOTHROW((GameParams{1.0, 0.0}.validate()));
  CHECK_NOTHROW((GameParams{2.0, 0.99}.validate()));
  CHECK_THROWS_AS((GameParams{0.99, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GameParams{2.5, 0.5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GameParams{1.5, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((GameParams{1.5, -0.1}.validate()), std::invalid_argument);
}
