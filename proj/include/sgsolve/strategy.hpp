#pragma once

#include <map>
#include <string>
#include <vector>

#include "sgsolve/game.hpp"

namespace sgsolve {

struct MemorylessStrategy {
  std::string name = "strategy";
  int player = 0;
  std::map<Config, Config> choice;  // total on the player's configs

  Config at(Config v) const;
};

// Mealy-style pure strategy. The memory is updated with the configuration the
// play moves to: from chain state (m, v) with successor w the next state is
// (update[m][w], w). The initial chain state is (init_mem, init) with no
// update applied for the initial configuration.
struct FiniteMemoryStrategy {
  std::string name = "strategy";
  int player = 0;
  int memory_size = 1;
  int init_mem = 0;
  std::vector<std::vector<int>> update;     // [m][config] -> m'
  std::vector<std::vector<Config>> output;  // [m][config] -> successor, -1 if not owned

  int upd(int m, Config v) const { return update[static_cast<size_t>(m)][static_cast<size_t>(v)]; }
  Config out(int m, Config v) const { return output[static_cast<size_t>(m)][static_cast<size_t>(v)]; }

  static FiniteMemoryStrategy from_memoryless(const MemorylessStrategy& s, int num_configs);
  MemorylessStrategy project_memoryless() const;  // requires memory_size == 1
};

// Violations of strategy well-formedness against a game; empty when valid.
std::vector<std::string> validate_strategy(const StochasticGame& game,
                                           const FiniteMemoryStrategy& strategy);

// Merges memory values with identical observable behaviour (partition
// refinement over reachable memory), preserving the induced strategy exactly.
FiniteMemoryStrategy minimize_strategy(const StochasticGame& game,
                                       const FiniteMemoryStrategy& strategy);

}  // namespace sgsolve
