#include "sgsolve/conjunction.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "sgsolve/detail/graph.hpp"

namespace sgsolve {
namespace {

std::vector<char> greens_of(const std::vector<StreettPair>& pairs, Config v) {
  std::vector<char> out(pairs.size(), 0);
  for (size_t k = 0; k < pairs.size(); ++k) out[k] = pairs[k].grant[static_cast<size_t>(v)];
  return out;
}

// Stable move-to-front of the granted indices.
std::vector<int> move_to_front(const std::vector<int>& perm, const std::vector<char>& granted) {
  std::vector<int> front, rest;
  for (int j : perm)
    (granted[static_cast<size_t>(j)] ? front : rest).push_back(j);
  front.insert(front.end(), rest.begin(), rest.end());
  return front;
}

std::string perm_string(const std::vector<int>& perm) {
  std::string s;
  for (int j : perm) s += std::to_string(j);
  return s;
}

}  // namespace

std::vector<StreettPair> conj_to_streett(const ParityObjective& a, const ParityObjective& b) {
  std::vector<StreettPair> pairs;
  int n = static_cast<int>(a.prio.size());
  if (static_cast<int>(b.prio.size()) != n)
    throw std::invalid_argument("conj_to_streett: objective size mismatch");
  for (const ParityObjective* obj : {&a, &b}) {
    for (int k = 1; k <= obj->index(); k += 2) {
      StreettPair p;
      p.request.assign(static_cast<size_t>(n), 0);
      p.grant.assign(static_cast<size_t>(n), 0);
      bool any = false;
      for (Config v = 0; v < n; ++v) {
        int pv = obj->at(v);
        if (pv == k) {
          p.request[static_cast<size_t>(v)] = 1;
          any = true;
        }
        if (pv % 2 == 0 && pv < k) p.grant[static_cast<size_t>(v)] = 1;
      }
      if (any) pairs.push_back(std::move(p));
    }
  }
  return pairs;
}

IarGame streett_to_parity_iar(const StochasticGame& game, const std::vector<StreettPair>& pairs,
                              int pair_cap) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("streett_to_parity_iar requires a non-stochastic game");
  int k = static_cast<int>(pairs.size());
  if (k < 1) throw std::invalid_argument("streett_to_parity_iar requires at least one pair");
  if (k > pair_cap)
    throw CapError("streett pair count " + std::to_string(k) + " exceeds cap " +
                   std::to_string(pair_cap));

  IarGame out;
  out.pair_count = k;
  out.game.name = game.name + ".iar";
  out.game.prio_sure = std::vector<int>();
  out.entry.assign(static_cast<size_t>(game.size()), -1);

  std::map<std::vector<int>, int> record_ids;
  std::vector<std::vector<int>> records;
  auto intern_record = [&](const std::vector<int>& r) {
    auto [it, fresh] = record_ids.try_emplace(r, static_cast<int>(records.size()));
    if (fresh) records.push_back(r);
    return it->second;
  };

  std::map<std::pair<Config, int>, Config> state_ids;
  struct Pending {
    Config v;
    int rec;
  };
  std::vector<Pending> todo;
  auto intern_state = [&](Config v, int rec) {
    auto [it, fresh] = state_ids.try_emplace({v, rec}, out.game.size());
    if (fresh) {
      std::string label = game.labels[static_cast<size_t>(v)];
      if (label.empty()) label = "q" + std::to_string(v);
      Config c = out.game.add_config(game.owner[static_cast<size_t>(v)],
                                     label + ".r" + perm_string(records[static_cast<size_t>(rec)]));
      (void)c;
      out.origin.push_back(v);
      out.record.push_back(records[static_cast<size_t>(rec)]);
      // priority read: positions of v's grant/request indices in the record
      const auto& perm = records[static_cast<size_t>(rec)];
      int f = 0, e = 0;
      for (int pos = 1; pos <= k; ++pos) {
        int j = perm[static_cast<size_t>(pos - 1)];
        if (pairs[static_cast<size_t>(j)].grant[static_cast<size_t>(v)]) f = std::max(f, pos);
        if (pairs[static_cast<size_t>(j)].request[static_cast<size_t>(v)]) e = std::max(e, pos);
      }
      int lambda = f >= e ? 2 * f : 2 * e - 1;  // max-parity reading
      out.game.prio_sure->back() = 2 * k - lambda;  // min-even conversion
      todo.push_back({v, rec});
    }
    return it->second;
  };

  std::vector<int> identity(static_cast<size_t>(k));
  std::iota(identity.begin(), identity.end(), 0);
  int id_rec = intern_record(identity);
  for (Config v = 0; v < game.size(); ++v)
    out.entry[static_cast<size_t>(v)] = intern_state(v, id_rec);

  for (size_t i = 0; i < todo.size(); ++i) {
    auto [v, rec] = todo[i];
    Config s = state_ids.at({v, rec});
    int rec2 = intern_record(move_to_front(records[static_cast<size_t>(rec)], greens_of(pairs, v)));
    for (Config w : game.succ(v)) out.game.add_edge(s, intern_state(w, rec2));
  }
  if (game.init) out.game.init = out.entry[static_cast<size_t>(*game.init)];
  out.objective = ParityObjective{*out.game.prio_sure};
  return out;
}

namespace {

// Genuine-run pull-back: memory holds (record before current read, record
// after current read); output replays the solved IAR strategy at the exact
// product state, so induced plays are plays of the solved game.
FiniteMemoryStrategy pull_back_strat0(const StochasticGame& game, const IarGame& iar,
                                      const ParitySolution& ps,
                                      const std::vector<StreettPair>& pairs) {
  int n = game.size();
  std::map<std::vector<int>, int> record_ids;
  std::vector<std::vector<int>> records;
  auto intern_record = [&](const std::vector<int>& r) {
    auto [it, fresh] = record_ids.try_emplace(r, static_cast<int>(records.size()));
    if (fresh) records.push_back(r);
    return it->second;
  };
  std::vector<int> identity(static_cast<size_t>(iar.pair_count));
  std::iota(identity.begin(), identity.end(), 0);
  int id_rec = intern_record(identity);

  std::map<std::pair<Config, int>, Config> iar_state;
  for (Config s = 0; s < iar.game.size(); ++s)
    iar_state[{iar.origin[static_cast<size_t>(s)], intern_record(iar.record[static_cast<size_t>(s)])}] = s;

  auto choose = [&](Config v, int rec_before) -> Config {
    auto it = iar_state.find({v, rec_before});
    if (it != iar_state.end()) {
      auto ch = ps.strat0.choice.find(it->second);
      if (ch != ps.strat0.choice.end()) return iar.origin[static_cast<size_t>(ch->second)];
    }
    return game.succ(v).front();  // off the winning region; arbitrary but total
  };

  // memory values: FRESH = 0, then interned (before, after) pairs
  std::map<std::pair<int, int>, int> mem_ids;
  std::vector<std::pair<int, int>> mems{{-1, -1}};
  auto intern_mem = [&](int b, int a) {
    auto [it, fresh] = mem_ids.try_emplace({b, a}, static_cast<int>(mems.size()));
    if (fresh) mems.push_back({b, a});
    return it->second;
  };

  std::vector<std::vector<int>> update_rows;
  std::vector<std::vector<Config>> output_rows;
  for (size_t m = 0; m < mems.size(); ++m) {
    auto [b, a] = mems[m];
    std::vector<int> urow(static_cast<size_t>(n));
    std::vector<Config> orow(static_cast<size_t>(n), -1);
    for (Config w = 0; w < n; ++w) {
      int before = m == 0 ? id_rec : a;
      int after = intern_record(
          move_to_front(records[static_cast<size_t>(before)], greens_of(pairs, w)));
      urow[static_cast<size_t>(w)] = intern_mem(before, after);
      if (game.owner[static_cast<size_t>(w)] == Owner::P0)
        orow[static_cast<size_t>(w)] = choose(w, m == 0 ? id_rec : b);
    }
    update_rows.push_back(std::move(urow));
    output_rows.push_back(std::move(orow));
  }

  FiniteMemoryStrategy fm;
  fm.name = game.name + ".conj.p0";
  fm.player = 0;
  fm.memory_size = static_cast<int>(mems.size());
  fm.init_mem = 0;
  fm.update = std::move(update_rows);
  fm.output = std::move(output_rows);
  return minimize_strategy(game, fm);
}

// One-player check: with Player 1 fixed to pi, can Player 0 reach a cycle that
// is even-minimal under both objectives from v?
bool p0_wins_one_player(const StochasticGame& game, const MemorylessStrategy& pi, Config v,
                        const ParityObjective& a, const ParityObjective& b) {
  std::vector<std::vector<int>> adj(static_cast<size_t>(game.size()));
  for (Config u = 0; u < game.size(); ++u) {
    if (game.owner[static_cast<size_t>(u)] == Owner::P1)
      adj[static_cast<size_t>(u)].push_back(pi.at(u));
    else
      adj[static_cast<size_t>(u)] = game.succ(u);
  }
  return detail::good_cycle_reachable(adj, v, {&a.prio, &b.prio});
}

}  // namespace

ConjSolution solve_conj_parity(const StochasticGame& game, const ParityObjective& a,
                               const ParityObjective& b, int pair_cap) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("solve_conj_parity requires a non-stochastic game");
  int n = game.size();
  ConjSolution out;
  out.w0.assign(static_cast<size_t>(n), 0);
  out.w1.assign(static_cast<size_t>(n), 0);

  auto pairs = conj_to_streett(a, b);
  if (pairs.empty()) {
    // no odd priority occurs: every play satisfies both conditions
    std::fill(out.w0.begin(), out.w0.end(), 1);
    MemorylessStrategy s0;
    s0.player = 0;
    MemorylessStrategy s1;
    s1.player = 1;
    for (Config v = 0; v < n; ++v) {
      if (game.owner[static_cast<size_t>(v)] == Owner::P0) s0.choice[v] = game.succ(v).front();
      if (game.owner[static_cast<size_t>(v)] == Owner::P1) s1.choice[v] = game.succ(v).front();
    }
    out.strat0 = FiniteMemoryStrategy::from_memoryless(s0, n);
    out.strat0.name = game.name + ".conj.p0";
    out.strat1 = s1;
    return out;
  }

  IarGame iar = streett_to_parity_iar(game, pairs, pair_cap);
  ParitySolution ps = solve_parity(iar.game, iar.objective);
  for (Config v = 0; v < n; ++v) {
    Config e = iar.entry[static_cast<size_t>(v)];
    out.w0[static_cast<size_t>(v)] = ps.w0[static_cast<size_t>(e)];
    out.w1[static_cast<size_t>(v)] = ps.w1[static_cast<size_t>(e)];
  }
  out.strat0 = pull_back_strat0(game, iar, ps, pairs);

  // Player 1: try the projection of the IAR strategy over states reachable
  // under it inside w1; fall back to enumeration when not functional.
  MemorylessStrategy pi;
  pi.player = 1;
  bool functional = true;
  {
    std::vector<char> seen(static_cast<size_t>(iar.game.size()), 0);
    std::vector<Config> stack;
    for (Config v = 0; v < n; ++v)
      if (out.w1[static_cast<size_t>(v)]) {
        Config e = iar.entry[static_cast<size_t>(v)];
        if (!seen[static_cast<size_t>(e)]) {
          seen[static_cast<size_t>(e)] = 1;
          stack.push_back(e);
        }
      }
    while (!stack.empty()) {
      Config s = stack.back();
      stack.pop_back();
      std::vector<Config> nexts;
      if (iar.game.owner[static_cast<size_t>(s)] == Owner::P1) {
        auto ch = ps.strat1.choice.find(s);
        if (ch != ps.strat1.choice.end()) {
          nexts.push_back(ch->second);
          Config v = iar.origin[static_cast<size_t>(s)];
          Config w = iar.origin[static_cast<size_t>(ch->second)];
          auto [it, fresh] = pi.choice.try_emplace(v, w);
          if (!fresh && it->second != w) functional = false;
        }
      } else {
        nexts = iar.game.succ(s);
      }
      for (Config t : nexts)
        if (!seen[static_cast<size_t>(t)]) {
          seen[static_cast<size_t>(t)] = 1;
          stack.push_back(t);
        }
    }
  }
  for (Config v = 0; v < n; ++v)
    if (game.owner[static_cast<size_t>(v)] == Owner::P1 && !pi.choice.count(v))
      pi.choice[v] = game.succ(v).front();

  auto wins_everywhere = [&](const MemorylessStrategy& cand) {
    for (Config v = 0; v < n; ++v)
      if (out.w1[static_cast<size_t>(v)] && p0_wins_one_player(game, cand, v, a, b)) return false;
    return true;
  };
  if (!functional || !wins_everywhere(pi)) {
    // enumerate Player-1 memoryless strategies, lexicographic by config id
    std::vector<Config> p1configs;
    for (Config v = 0; v < n; ++v)
      if (game.owner[static_cast<size_t>(v)] == Owner::P1) p1configs.push_back(v);
    long long count = 1;
    for (Config v : p1configs) {
      count *= static_cast<long long>(game.succ(v).size());
      if (count > 2000000) throw CapError("Player-1 strategy enumeration too large");
    }
    std::vector<size_t> pick(p1configs.size(), 0);
    bool found = false;
    while (!found) {
      MemorylessStrategy cand;
      cand.player = 1;
      for (size_t i = 0; i < p1configs.size(); ++i)
        cand.choice[p1configs[i]] = game.succ(p1configs[i])[pick[i]];
      if (wins_everywhere(cand)) {
        pi = cand;
        found = true;
        break;
      }
      size_t i = 0;
      while (i < pick.size() && ++pick[i] == game.succ(p1configs[i]).size()) pick[i++] = 0;
      if (i == pick.size() && !pick.empty()) break;
      if (pick.empty()) break;
    }
    if (!found)
      throw std::runtime_error("internal: no memoryless Player-1 strategy wins on w1");
  }
  pi.name = game.name + ".conj.p1";
  out.strat1 = pi;
  return out;
}

}  // namespace sgsolve
