#include "sgsolve/strategy.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sgsolve {

Config MemorylessStrategy::at(Config v) const {
  auto it = choice.find(v);
  if (it == choice.end())
    throw std::invalid_argument("strategy '" + name + "' undefined at config " + std::to_string(v));
  return it->second;
}

FiniteMemoryStrategy FiniteMemoryStrategy::from_memoryless(const MemorylessStrategy& s,
                                                           int num_configs) {
  FiniteMemoryStrategy fm;
  fm.name = s.name;
  fm.player = s.player;
  fm.memory_size = 1;
  fm.init_mem = 0;
  fm.update.assign(1, std::vector<int>(static_cast<size_t>(num_configs), 0));
  fm.output.assign(1, std::vector<Config>(static_cast<size_t>(num_configs), -1));
  for (const auto& [v, w] : s.choice) fm.output[0][static_cast<size_t>(v)] = w;
  return fm;
}

MemorylessStrategy FiniteMemoryStrategy::project_memoryless() const {
  if (memory_size != 1)
    throw std::invalid_argument("strategy '" + name + "' is not memoryless");
  MemorylessStrategy s;
  s.name = name;
  s.player = player;
  for (size_t v = 0; v < output[0].size(); ++v)
    if (output[0][v] >= 0) s.choice[static_cast<Config>(v)] = output[0][v];
  return s;
}

std::vector<std::string> validate_strategy(const StochasticGame& game,
                                           const FiniteMemoryStrategy& s) {
  std::vector<std::string> out;
  int n = game.size();
  Owner own = s.player == 0 ? Owner::P0 : Owner::P1;
  if (s.memory_size <= 0) out.push_back("memory size must be positive");
  if (s.init_mem < 0 || s.init_mem >= s.memory_size) out.push_back("initmem out of range");
  if (static_cast<int>(s.update.size()) != s.memory_size ||
      static_cast<int>(s.output.size()) != s.memory_size) {
    out.push_back("table row count != memory size");
    return out;
  }
  for (int m = 0; m < s.memory_size; ++m) {
    if (static_cast<int>(s.update[static_cast<size_t>(m)].size()) != n ||
        static_cast<int>(s.output[static_cast<size_t>(m)].size()) != n) {
      out.push_back("table width != config count at memory " + std::to_string(m));
      continue;
    }
    for (Config v = 0; v < n; ++v) {
      int mu = s.upd(m, v);
      if (mu < 0 || mu >= s.memory_size)
        out.push_back("update out of range at (" + std::to_string(m) + "," + std::to_string(v) + ")");
      Config w = s.out(m, v);
      if (game.owner[static_cast<size_t>(v)] == own) {
        const auto& succ = game.succ(v);
        if (w < 0 || std::find(succ.begin(), succ.end(), w) == succ.end())
          out.push_back("output not an edge at (" + std::to_string(m) + "," + game.display(v) + ")");
      }
    }
  }
  return out;
}

FiniteMemoryStrategy minimize_strategy(const StochasticGame& game,
                                       const FiniteMemoryStrategy& s) {
  int n = game.size();
  // memory values reachable from init_mem over any config sequence
  std::vector<int> reach;
  std::vector<char> seen(static_cast<size_t>(s.memory_size), 0);
  reach.push_back(s.init_mem);
  seen[static_cast<size_t>(s.init_mem)] = 1;
  for (size_t i = 0; i < reach.size(); ++i)
    for (Config v = 0; v < n; ++v) {
      int m2 = s.upd(reach[i], v);
      if (!seen[static_cast<size_t>(m2)]) {
        seen[static_cast<size_t>(m2)] = 1;
        reach.push_back(m2);
      }
    }
  std::sort(reach.begin(), reach.end());

  // partition refinement: initial classes by output row, refine on update rows
  std::map<std::vector<Config>, int> by_output;
  std::vector<int> cls(static_cast<size_t>(s.memory_size), -1);
  Owner own = s.player == 0 ? Owner::P0 : Owner::P1;
  for (int m : reach) {
    std::vector<Config> row(static_cast<size_t>(n), -1);
    for (Config v = 0; v < n; ++v)
      if (game.owner[static_cast<size_t>(v)] == own) row[static_cast<size_t>(v)] = s.out(m, v);
    auto [it, _] = by_output.try_emplace(row, static_cast<int>(by_output.size()));
    cls[static_cast<size_t>(m)] = it->second;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, std::vector<int>>, int> sig;
    std::vector<int> next(cls.size(), -1);
    for (int m : reach) {
      std::vector<int> urow(static_cast<size_t>(n));
      for (Config v = 0; v < n; ++v)
        urow[static_cast<size_t>(v)] = cls[static_cast<size_t>(s.upd(m, v))];
      auto [it, _] = sig.try_emplace({cls[static_cast<size_t>(m)], std::move(urow)},
                                     static_cast<int>(sig.size()));
      next[static_cast<size_t>(m)] = it->second;
    }
    for (int m : reach)
      if (next[static_cast<size_t>(m)] != cls[static_cast<size_t>(m)]) changed = true;
    cls = next;
  }

  // renumber classes in order of first reachable representative
  std::vector<int> rep;
  std::vector<int> renum(reach.size() + cls.size(), -1);
  renum.assign(cls.size(), -1);
  for (int m : reach) {
    int c = cls[static_cast<size_t>(m)];
    if (renum[static_cast<size_t>(c)] < 0) {
      renum[static_cast<size_t>(c)] = static_cast<int>(rep.size());
      rep.push_back(m);
    }
  }
  FiniteMemoryStrategy out;
  out.name = s.name;
  out.player = s.player;
  out.memory_size = static_cast<int>(rep.size());
  out.init_mem = renum[static_cast<size_t>(cls[static_cast<size_t>(s.init_mem)])];
  out.update.assign(rep.size(), std::vector<int>(static_cast<size_t>(n), 0));
  out.output.assign(rep.size(), std::vector<Config>(static_cast<size_t>(n), -1));
  for (size_t i = 0; i < rep.size(); ++i)
    for (Config v = 0; v < n; ++v) {
      out.update[i][static_cast<size_t>(v)] =
          renum[static_cast<size_t>(cls[static_cast<size_t>(s.upd(rep[i], v))])];
      out.output[i][static_cast<size_t>(v)] = s.out(rep[i], v);
    }
  return out;
}

}  // namespace sgsolve
