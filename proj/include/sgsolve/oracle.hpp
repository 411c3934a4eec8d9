#pragma once

#include <optional>
#include <vector>

#include "sgsolve/chain.hpp"
#include "sgsolve/conjunction.hpp"
#include "sgsolve/game.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

enum class VerifyStatus { Verified, Refuted };

struct VerifyResult {
  VerifyStatus status = VerifyStatus::Verified;
  std::optional<MemorylessStrategy> witness;  // refuting Player-1 strategy
  std::string reason;

  bool ok() const { return status == VerifyStatus::Verified; }
};

struct OracleLimits {
  long long adversary_cap = 200000;    // # Player-1 memoryless strategies
  long long search_budget = 60000000;  // machine-search nodes
};

// True iff for every Player-1 memoryless strategy the product chain is
// sure-winning for w.sure and almost-sure-winning for w.secondary, from
// `start` (default: game.init). Throws CapError when the adversary
// enumeration exceeds the cap.
VerifyResult verify_sas_strategy(const StochasticGame& game, const CombinedObjective& w,
                                 const FiniteMemoryStrategy& sigma,
                                 std::optional<Config> start = std::nullopt,
                                 const OracleLimits& limits = {});

// Reference solvers for small instances. oracle_solve_parity and
// oracle_solve_conj enumerate Player-1 memoryless strategies and decide each
// one-player game by good-cycle search; regions partition V by determinacy.
std::vector<char> oracle_solve_parity(const StochasticGame& game, const ParityObjective& obj,
                                      const OracleLimits& limits = {});
std::vector<char> oracle_solve_conj(const StochasticGame& game, const ParityObjective& a,
                                    const ParityObjective& b, const OracleLimits& limits = {});

// {v : some pure Player-0 strategy with |M| <= mem_bound passes
// verify_sas_strategy from v}. Exhaustive machine search with sound pruning;
// throws CapError when the node budget or adversary cap is exceeded.
std::vector<char> oracle_solve_sas(const StochasticGame& game, const CombinedObjective& w,
                                   int mem_bound, const OracleLimits& limits = {});

// Product of a game with Player-0 resolved; Player 1 stays free and Random
// configs keep exact probabilities. The graph form admits per-outcome memory
// updates, which Mealy machines cannot express directly.
struct ProductArena {
  struct State {
    Config config;
    int mem;
  };
  std::vector<State> states;
  std::vector<Owner> owner;                                 // per state
  std::vector<std::vector<int>> succ;                       // per state
  std::vector<std::vector<Rational>> prob;                  // parallel to succ at Random states
  std::vector<int> entry;                                   // per start config, -1 if absent
};

// Vector ranking r: states -> [n]^(ceil(d/2)) with infinity; lexicographic
// prefix orders over odd positions.
struct RankVector {
  bool infinite = false;
  std::vector<long long> coords;  // coordinate t corresponds to odd priority 2t+1
};

struct Ranking {
  std::vector<RankVector> vec;  // per arena state
  Rational epsilon;             // > 0; minimal transition probability of the game
};

// Almost-sure ranking check. alpha gives per-config priorities (applied via
// the arena projection). True iff the four clauses hold at every finite-rank
// state. Throws std::invalid_argument on a dimension mismatch.
bool check_almost_sure_ranking(const ProductArena& arena, const Ranking& ranking,
                               const ParityObjective& alpha);

}  // namespace sgsolve
