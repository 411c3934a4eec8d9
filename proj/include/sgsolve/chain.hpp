#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

// Finite Markov chain induced by a game and strategies. States are reachable
// (memory, config) pairs; probabilities are exact rationals.
struct MarkovChain {
  struct State {
    int mem;
    Config config;
  };
  std::vector<State> states;
  int init_state = 0;
  std::vector<std::vector<std::pair<int, Rational>>> trans;  // per state

  int size() const { return static_cast<int>(states.size()); }
  Config config_of(int s) const { return states[static_cast<size_t>(s)].config; }
};

// Product of a game with a Player-0 finite-memory strategy and (when the game
// has Player-1 configs) a Player-1 memoryless strategy. P0 configs resolve via
// sigma.output, P1 via pi.choice, Random configs keep their distribution.
// Throws std::invalid_argument when the game has no initial configuration or a
// strategy is missing/invalid for its configs.
MarkovChain product(const StochasticGame& game, const FiniteMemoryStrategy& sigma,
                    const MemorylessStrategy* pi = nullptr,
                    std::optional<Config> start = std::nullopt);

}  // namespace sgsolve
