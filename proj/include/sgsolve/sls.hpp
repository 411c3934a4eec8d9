#pragma once

#include <utility>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/oracle.hpp"
#include "sgsolve/sas_game.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

// Sure winning region for the parity condition with Random configs treated as
// adversarial (reassigned to Player 1), plus a witness strategy.
std::pair<std::vector<char>, MemorylessStrategy> sure_winning_region(
    const StochasticGame& game, const ParityObjective& alpha_s);

// Greatest Z with Z = muY. target u {P0: some succ in Y} u {P1: all succ in Y}
// u {Random: all succ in Z and some succ in Y}; target configs must be
// absorbing. The strategy follows decreasing Y-ranks.
std::pair<std::vector<char>, MemorylessStrategy> almost_sure_reach(const StochasticGame& game,
                                                                   const TargetSet& target);

struct SlsStrategy {
  FiniteMemoryStrategy strategy;
  long long horizon = 0;           // N_epsilon, in reach-phase Player-0 decisions
  Rational guaranteed;             // exact worst-case reach probability
  bool horizon_is_bound = false;   // true when the conservative bound was used
};

struct SlsSolution {
  std::vector<char> z;  // SLS winning region
  std::vector<char> a;  // SAS region (step a)
  std::vector<char> x;  // sure winning region of the collapsed game

  // pieces needed by the strategy builder
  StochasticGame game;
  CombinedObjective objective;
  StochasticGame collapsed;                 // SAS region collapsed to a sink
  std::vector<Config> collapse_map;         // original -> collapsed config
  std::vector<Config> collapse_back;        // collapsed -> representative original target
  Config sink = -1;                         // -1 when the SAS region is empty
  MemorylessStrategy reach_strategy;        // on original configs, toward a
  MemorylessStrategy sure_strategy;         // on original configs, within x
  FiniteMemoryStrategy sas_strategy;        // winning inside a
  OracleLimits limits;

  std::vector<Config> region() const;

  // Plays the reach strategy for N_epsilon Player-0 decisions, then switches
  // to the sure parity strategy; inside the SAS region it follows the SAS
  // strategy. N_epsilon is the least horizon whose exact worst-case reach
  // probability is >= 1 - epsilon. Throws std::invalid_argument unless
  // epsilon is in (0,1).
  SlsStrategy build_strategy(const Rational& epsilon) const;
};

SlsSolution solve_sls(const StochasticGame& game, const CombinedObjective& w,
                      const OracleLimits& limits = {});

}  // namespace sgsolve
