#pragma once

#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/oracle.hpp"
#include "sgsolve/sas_mdp.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

// Per random config v, the gadget configs replacing it: bar(v) and hat(v, even)
// belong to Player 1; tilde(v, 2i) and hat(v, odd) belong to Player 0.
struct GadgetMap {
  std::vector<Config> bar;                      // per original config, -1 if not Random
  std::vector<std::vector<Config>> tilde;       // per original config, index order
  std::vector<std::vector<Config>> hat;         // per original config, index order
  std::vector<int> tilde_index;                 // per emitted config, -1 otherwise
  std::vector<int> hat_index;                   // per emitted config, -1 otherwise
  std::vector<Config> origin;                   // emitted config -> original config
  std::vector<std::string> annot;
  std::vector<Config> entry;                    // original config -> emitted entry
};

struct GadgetReduction {
  StochasticGame game;  // non-stochastic
  ParityObjective sure;
  ParityObjective secondary;
  GadgetMap map;
};

// Theorem-level gadget: each Random config v becomes bar(v) -> tilde(v,2i) for
// 2i in [0..p_as(v)+1], tilde(v,2i) -> hat(v,2i) and hat(v,2i-1) where those
// exist, hat(v,j) -> successors of v (through bar for Random successors).
// Priorities: p'_as on the gadget is p_as(v) except hat(v,j) which gets j;
// p'_s is p_s(v) on every gadget config.
GadgetReduction gadget_reduction(const StochasticGame& game, const CombinedObjective& w);

struct SasGameSolution {
  std::vector<char> w0, w1;
  FiniteMemoryStrategy strat0;
  MemorylessStrategy strat1;
  ReductionTrace trace;
};

// Reduction to a conjunction-of-two-parities game, solved with the IAR-based
// conjunction solver; strat0 is pulled back through the gadget, strat1 is a
// memoryless Player-1 strategy on the original configs.
SasGameSolution solve_sas_game_fm(const StochasticGame& game, const CombinedObjective& w,
                                  const OracleLimits& limits = {}, int pair_cap = 6);

// Certificate support: the product of the game with the reduced-game winning
// strategy (per-outcome memory updates through the gadget) and an almost-sure
// ranking extracted from a small-progress measure of the solved reduced game.
struct SasCertificate {
  ProductArena arena;
  Ranking ranking;
};
SasCertificate extract_certificate(const StochasticGame& game, const CombinedObjective& w,
                                   int pair_cap = 6);

}  // namespace sgsolve
