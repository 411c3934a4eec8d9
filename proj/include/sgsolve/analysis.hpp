#pragma once

#include <cstdint>
#include <vector>

#include "sgsolve/chain.hpp"
#include "sgsolve/game.hpp"

namespace sgsolve {

// Strongly connected components with no outgoing edges, restricted to states
// reachable from the chain's initial state. Deterministic order (by smallest
// contained state id).
std::vector<std::vector<int>> bottom_sccs(const MarkovChain& chain);

// Least solution of x_v = 1 on target states, x_v = sum p * x_w elsewhere,
// solved exactly over the rationals after zeroing states that cannot reach
// the target. target is a per-state predicate.
std::vector<Rational> reach_probabilities(const MarkovChain& chain,
                                          const std::vector<char>& target);

// True iff no reachable cycle of the chain has odd minimum priority, where a
// state's priority is alpha at its projected config.
bool chain_satisfies_sure(const MarkovChain& chain, const ParityObjective& alpha);

// True iff every reachable bottom SCC has even minimum priority.
bool chain_satisfies_almost_sure(const MarkovChain& chain, const ParityObjective& alpha);

// Per-state empirical frequency of being visited within `steps` transitions,
// over `trials` runs. Deterministic for a fixed seed; sanity tool only.
std::vector<Rational> simulate(const MarkovChain& chain, int steps, int trials,
                               std::uint64_t seed);

}  // namespace sgsolve
