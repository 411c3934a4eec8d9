#include "sgsolve/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace sgsolve {

int ParityObjective::index() const {
  int d = 0;
  for (int p : prio) d = std::max(d, p);
  return d;
}

std::vector<Config> TargetSet::ids() const {
  std::vector<Config> out;
  for (size_t v = 0; v < member.size(); ++v)
    if (member[v]) out.push_back(static_cast<Config>(v));
  return out;
}

TargetSet TargetSet::of(int n, const std::vector<Config>& configs) {
  TargetSet t;
  t.member.assign(static_cast<size_t>(n), 0);
  for (Config v : configs) t.member.at(static_cast<size_t>(v)) = 1;
  return t;
}

bool StochasticGame::is_mdp() const {
  return std::none_of(owner.begin(), owner.end(), [](Owner o) { return o == Owner::P1; });
}

bool StochasticGame::is_markov_chain() const {
  return std::all_of(owner.begin(), owner.end(), [](Owner o) { return o == Owner::Random; });
}

bool StochasticGame::is_nonstochastic() const {
  return std::none_of(owner.begin(), owner.end(), [](Owner o) { return o == Owner::Random; });
}

ParityObjective StochasticGame::sure_objective() const {
  if (!prio_sure) throw std::invalid_argument("game '" + name + "' has no sure objective");
  return ParityObjective{*prio_sure};
}

ParityObjective StochasticGame::secondary_objective() const {
  if (!prio_sec) throw std::invalid_argument("game '" + name + "' has no secondary objective");
  return ParityObjective{*prio_sec};
}

std::string StochasticGame::display(Config v) const {
  const auto& l = labels[static_cast<size_t>(v)];
  if (l.empty()) return std::to_string(v);
  return std::to_string(v) + "(" + l + ")";
}

Config StochasticGame::add_config(Owner o, std::string label) {
  owner.push_back(o);
  edges.emplace_back();
  prob.emplace_back();
  labels.push_back(std::move(label));
  if (prio_sure) prio_sure->push_back(0);
  if (prio_sec) prio_sec->push_back(0);
  return size() - 1;
}

void StochasticGame::add_edge(Config src, Config dst) {
  edges[static_cast<size_t>(src)].push_back(dst);
}

void StochasticGame::add_edge(Config src, Config dst, const Rational& p) {
  edges[static_cast<size_t>(src)].push_back(dst);
  prob[static_cast<size_t>(src)][dst] = p;
}

std::vector<std::string> validate(const StochasticGame& g) {
  std::vector<std::string> out;
  int n = g.size();
  auto bad = [&](const std::string& msg) { out.push_back(msg); };

  if (static_cast<int>(g.edges.size()) != n || static_cast<int>(g.prob.size()) != n ||
      static_cast<int>(g.labels.size()) != n)
    bad("inconsistent component sizes");
  for (Config v = 0; v < n; ++v) {
    const auto& succ = g.edges[static_cast<size_t>(v)];
    if (succ.empty()) bad("deadlock at " + g.display(v));
    for (Config w : succ)
      if (w < 0 || w >= n) bad("edge target out of range at " + g.display(v));
    const auto& pr = g.prob[static_cast<size_t>(v)];
    if (g.owner[static_cast<size_t>(v)] == Owner::Random) {
      Rational sum = 0;
      for (const auto& [w, p] : pr) {
        if (p <= 0 || p > 1) bad("prob out of (0,1] at " + g.display(v));
        if (std::find(succ.begin(), succ.end(), w) == succ.end())
          bad("prob on non-edge at " + g.display(v));
        sum += p;
      }
      for (Config w : succ)
        if (!pr.count(w)) bad("edge without prob at " + g.display(v));
      if (sum != 1) bad("prob sum != 1 at " + g.display(v));
    } else if (!pr.empty()) {
      bad("prob on non-random config " + g.display(v));
    }
  }
  if (g.init && (*g.init < 0 || *g.init >= n)) bad("init out of range");
  auto check_prio = [&](const std::optional<std::vector<int>>& pr, const char* which) {
    if (!pr) return;
    if (static_cast<int>(pr->size()) != n) {
      bad(std::string(which) + " priority vector size mismatch");
      return;
    }
    for (Config v = 0; v < n; ++v)
      if ((*pr)[static_cast<size_t>(v)] < 0)
        bad(std::string(which) + " priority negative at " + g.display(v));
  };
  check_prio(g.prio_sure, "sure");
  check_prio(g.prio_sec, "secondary");
  return out;
}

Rational min_transition_probability(const StochasticGame& g) {
  Rational best = 1;
  for (Config v = 0; v < g.size(); ++v)
    for (const auto& [w, p] : g.prob[static_cast<size_t>(v)])
      if (p < best) best = p;
  return best;
}

}  // namespace sgsolve
