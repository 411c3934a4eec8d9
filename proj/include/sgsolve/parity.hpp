#pragma once

#include <utility>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

struct ParitySolution {
  std::vector<char> w0, w1;  // disjoint, covering V
  MemorylessStrategy strat0, strat1;

  std::vector<Config> region0() const;
  std::vector<Config> region1() const;
};

// Least set containing `target` closed under "player has an edge in, opponent
// has all edges in", with a witness choice for player configs attracted from
// outside the target. Requires a non-stochastic game (or `alive` masking away
// Random configs). Canonical: witnesses follow attractor levels, ties broken
// by lowest config id.
std::pair<std::vector<char>, MemorylessStrategy> attractor(const StochasticGame& game,
                                                           int player,
                                                           const std::vector<char>& target,
                                                           const std::vector<char>& alive);

// Zielonka's recursive algorithm, min-even convention. Requires a
// non-stochastic deadlock-free game. Strategies are winning within their
// regions and never leave them.
ParitySolution solve_parity(const StochasticGame& game, const ParityObjective& obj);

}  // namespace sgsolve
