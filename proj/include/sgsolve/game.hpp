#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgsolve/rational.hpp"

namespace sgsolve {

using Config = int;

enum class Owner { P0, P1, Random };

// Priority map with min-even semantics: a play is winning for Player 0 iff
// the minimum priority occurring infinitely often is even.
struct ParityObjective {
  std::vector<int> prio;

  int index() const;  // d = max priority, 0 for an empty objective
  int at(Config v) const { return prio[static_cast<size_t>(v)]; }
};

struct TargetSet {
  std::vector<char> member;  // indexed by config

  bool contains(Config v) const { return member[static_cast<size_t>(v)] != 0; }
  std::vector<Config> ids() const;
  static TargetSet of(int n, const std::vector<Config>& configs);
};

enum class Mode { SAS, SLS };

struct CombinedObjective {
  ParityObjective sure;
  ParityObjective secondary;  // almost-sure (SAS) or limit-sure (SLS)
  Mode mode = Mode::SAS;
};

struct StochasticGame {
  std::string name = "game";
  std::vector<Owner> owner;
  std::vector<std::vector<Config>> edges;          // ordered successor lists
  std::vector<std::map<Config, Rational>> prob;    // nonempty only at Random configs
  std::vector<std::string> labels;                 // "" when unnamed
  std::optional<Config> init;
  std::optional<std::vector<int>> prio_sure;
  std::optional<std::vector<int>> prio_sec;

  int size() const { return static_cast<int>(owner.size()); }
  const std::vector<Config>& succ(Config v) const { return edges[static_cast<size_t>(v)]; }
  bool is_mdp() const;            // no P1 configs
  bool is_markov_chain() const;   // no P0 and no P1 configs
  bool is_nonstochastic() const;  // no Random configs

  ParityObjective sure_objective() const;       // throws if absent
  ParityObjective secondary_objective() const;  // throws if absent
  std::string display(Config v) const;          // "id" or "id(label)"

  Config add_config(Owner o, std::string label = "");
  void add_edge(Config src, Config dst);
  void add_edge(Config src, Config dst, const Rational& p);
};

// Reports every invariant violation; never throws.
std::vector<std::string> validate(const StochasticGame& game);

// Smallest positive transition probability; 1 when there are no Random configs.
Rational min_transition_probability(const StochasticGame& game);

}  // namespace sgsolve
