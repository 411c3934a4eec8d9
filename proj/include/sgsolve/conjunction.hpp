#pragma once

#include <stdexcept>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/parity.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Streett pairs (R_k, G_k): a play wins iff for every pair, visiting R_k
// infinitely often implies visiting G_k infinitely often.
struct StreettPair {
  std::vector<char> request;  // R_k, per config
  std::vector<char> grant;    // G_k, per config
};

// One pair per odd priority value present in each objective:
// R = prio^-1(k), G = prio^-1({even j < k}). A lasso satisfies every pair iff
// it satisfies both min-even parity conditions.
std::vector<StreettPair> conj_to_streett(const ParityObjective& a, const ParityObjective& b);

// Index-appearance-record blowup: product with permutations of pair indices.
// States carry (config, record-before-reading-config); the emitted priority is
// derived from the positions of the config's request/grant indices in the
// record, converted to min-even form.
struct IarGame {
  StochasticGame game;       // non-stochastic
  ParityObjective objective;
  std::vector<Config> origin;             // IAR config -> original config
  std::vector<std::vector<int>> record;   // IAR config -> permutation of pair indices
  std::vector<Config> entry;              // original config -> IAR config (identity record)
  int pair_count = 0;
};

IarGame streett_to_parity_iar(const StochasticGame& game, const std::vector<StreettPair>& pairs,
                              int pair_cap = 6);

struct ConjSolution {
  std::vector<char> w0, w1;
  FiniteMemoryStrategy strat0;
  MemorylessStrategy strat1;
};

// Player 0 sure-wins the intersection of both parity conditions exactly on
// w0; strat0 is pulled back through the IAR, strat1 is memoryless (projection
// of the IAR Player-1 strategy, falling back to enumeration when the
// projection is not functional). Throws CapError when the pair cap or the
// fallback enumeration cap is exceeded.
ConjSolution solve_conj_parity(const StochasticGame& game, const ParityObjective& a,
                               const ParityObjective& b, int pair_cap = 6);

}  // namespace sgsolve
