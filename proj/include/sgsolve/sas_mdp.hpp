#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sgsolve/game.hpp"
#include "sgsolve/oracle.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

// One reduction stage: emitted game plus a map from its configs back to the
// previous stage ("new_id <- origin_id [annot]" lines for --emit).
struct ReductionStage {
  std::string name;
  StochasticGame game;
  std::vector<Config> origin;      // per new config, -1 for synthetic configs
  std::vector<std::string> annot;  // per new config
};

struct ReductionTrace {
  std::vector<ReductionStage> stages;
};

// Copies construction: original copy (through tilde choice points) plus one
// restricted copy per even almost-sure priority 0,2,...,2*floor(d_as/2) and a
// losing sink. The emitted almost-sure condition is the Buechi set
// {(v,2i) : alpha_as(v) = 2i}; sure priorities are inherited (sink gets 1).
struct Stage1Buchi {
  StochasticGame mdp;
  ParityObjective sure;
  TargetSet buchi;
  std::vector<Config> entry;   // original config -> original-copy config
  std::vector<Config> origin;  // emitted config -> original config (-1 for sink)
  std::vector<std::string> annot;
  // construction detail used by the strategy pull-back
  std::vector<Config> tilde_of;              // original v -> tilde config
  std::vector<int> copy_values;              // even copy indices 0,2,...
  std::vector<std::vector<Config>> copy_of;  // [v][copy position] -> config
  Config sink = -1;
};
Stage1Buchi as_parity_to_buchi(const StochasticGame& mdp, const CombinedObjective& w);

// Probabilistic-config gadget: every Random config is replaced by a small
// two-player gadget; the result is a non-stochastic game whose winning
// condition is Buechi and parity. The second branch (through hat(v,1),
// resolved by Player 0 without a Buechi credit) exists exactly for Random
// configs outside the Buechi set.
struct Stage2ConjGame {
  StochasticGame game;  // non-stochastic
  ParityObjective sure;
  TargetSet buchi;
  std::vector<Config> entry;   // stage-1 config -> stage-2 entry config
  std::vector<Config> origin;  // emitted config -> stage-1 config
  std::vector<std::string> annot;
  // gadget ids per stage-1 config, -1 when absent
  std::vector<Config> kept, bar, tilde0, tilde2, hat0, hat1;
};
Stage2ConjGame buchi_mdp_to_conj_game(const StochasticGame& mdp, const ParityObjective& sure,
                                      const TargetSet& buchi);

// Monitor product turning Buechi-and-parity into a single parity condition.
// The monitor memorizes the lowest priority seen since a Buechi visit; a
// refreshed state signals its value i, a stale state the odd rounding of i.
struct Stage3Parity {
  StochasticGame game;  // non-stochastic parity game (reachable part)
  ParityObjective objective;
  std::vector<Config> origin;      // emitted config -> stage-2 config
  std::vector<int> monitor_value;  // emitted config -> monitor value i
  std::vector<char> monitor_fresh;
  std::vector<Config> entry;  // stage-2 config -> emitted config, -1 if unreachable
  std::vector<std::string> annot;
  int seed = 0;  // initial monitor value
  std::map<std::tuple<Config, int, int>, Config> index;  // (q2, i, fresh) -> config

  Config state_of(Config q2, int i, int fresh) const;
};
Stage3Parity buchi_and_parity_to_parity(const StochasticGame& game, const TargetSet& buchi,
                                        const ParityObjective& alpha);

struct SasMdpSolution {
  std::vector<char> w0;
  FiniteMemoryStrategy strategy;
  ReductionTrace trace;
};

// Full pipeline: copies, gadget, monitor, Zielonka, pull-back. The returned
// strategy is verified by verify_sas_strategy from every winning config
// before returning; failure signals an implementation bug.
SasMdpSolution solve_sas_mdp_fm(const StochasticGame& mdp, const CombinedObjective& w,
                                const OracleLimits& limits = {});

}  // namespace sgsolve
