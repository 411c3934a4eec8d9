#include "sgsolve/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "sgsolve/analysis.hpp"
#include "sgsolve/detail/graph.hpp"

namespace sgsolve {
namespace {

std::vector<Config> p1_configs(const StochasticGame& game) {
  std::vector<Config> out;
  for (Config v = 0; v < game.size(); ++v)
    if (game.owner[static_cast<size_t>(v)] == Owner::P1) out.push_back(v);
  return out;
}

long long adversary_count(const StochasticGame& game, const std::vector<Config>& p1,
                          long long cap) {
  long long count = 1;
  for (Config v : p1) {
    count *= static_cast<long long>(game.succ(v).size());
    if (count > cap)
      throw CapError("Player-1 strategy enumeration (" + std::to_string(count) +
                     "+) exceeds cap " + std::to_string(cap));
  }
  return count;
}

template <typename Fn>
void for_each_adversary(const StochasticGame& game, const std::vector<Config>& p1, Fn body) {
  std::vector<size_t> pick(p1.size(), 0);
  while (true) {
    MemorylessStrategy pi;
    pi.player = 1;
    for (size_t i = 0; i < p1.size(); ++i) pi.choice[p1[i]] = game.succ(p1[i])[pick[i]];
    if (!body(pi)) return;
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == game.succ(p1[i]).size()) pick[i++] = 0;
    if (i == pick.size()) return;
  }
}

}  // namespace

VerifyResult verify_sas_strategy(const StochasticGame& game, const CombinedObjective& w,
                                 const FiniteMemoryStrategy& sigma, std::optional<Config> start,
                                 const OracleLimits& limits) {
  auto errs = validate_strategy(game, sigma);
  if (!errs.empty())
    throw std::invalid_argument("verify_sas_strategy: invalid strategy: " + errs.front());
  auto p1 = p1_configs(game);
  adversary_count(game, p1, limits.adversary_cap);
  VerifyResult res;
  for_each_adversary(game, p1, [&](const MemorylessStrategy& pi) {
    MarkovChain chain = product(game, sigma, p1.empty() ? nullptr : &pi, start);
    if (!chain_satisfies_sure(chain, w.sure)) {
      res.status = VerifyStatus::Refuted;
      res.witness = pi;
      res.reason = "sure condition violated";
      return false;
    }
    if (!chain_satisfies_almost_sure(chain, w.secondary)) {
      res.status = VerifyStatus::Refuted;
      res.witness = pi;
      res.reason = "almost-sure condition violated";
      return false;
    }
    return true;
  });
  return res;
}

std::vector<char> oracle_solve_parity(const StochasticGame& game, const ParityObjective& obj,
                                      const OracleLimits& limits) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("oracle_solve_parity requires a non-stochastic game");
  auto p1 = p1_configs(game);
  adversary_count(game, p1, limits.adversary_cap);
  int n = game.size();
  std::vector<char> w0(static_cast<size_t>(n), 1);
  for_each_adversary(game, p1, [&](const MemorylessStrategy& pi) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (Config v = 0; v < n; ++v) {
      if (game.owner[static_cast<size_t>(v)] == Owner::P1)
        adj[static_cast<size_t>(v)].push_back(pi.at(v));
      else
        adj[static_cast<size_t>(v)] = game.succ(v);
    }
    for (Config v = 0; v < n; ++v)
      if (w0[static_cast<size_t>(v)] &&
          !detail::good_cycle_reachable(adj, v, {&obj.prio}))
        w0[static_cast<size_t>(v)] = 0;
    return true;
  });
  return w0;
}

std::vector<char> oracle_solve_conj(const StochasticGame& game, const ParityObjective& a,
                                    const ParityObjective& b, const OracleLimits& limits) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("oracle_solve_conj requires a non-stochastic game");
  auto p1 = p1_configs(game);
  adversary_count(game, p1, limits.adversary_cap);
  int n = game.size();
  std::vector<char> w0(static_cast<size_t>(n), 1);
  for_each_adversary(game, p1, [&](const MemorylessStrategy& pi) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(n));
    for (Config v = 0; v < n; ++v) {
      if (game.owner[static_cast<size_t>(v)] == Owner::P1)
        adj[static_cast<size_t>(v)].push_back(pi.at(v));
      else
        adj[static_cast<size_t>(v)] = game.succ(v);
    }
    for (Config v = 0; v < n; ++v)
      if (w0[static_cast<size_t>(v)] &&
          !detail::good_cycle_reachable(adj, v, {&a.prio, &b.prio}))
        w0[static_cast<size_t>(v)] = 0;
    return true;
  });
  return w0;
}

namespace {

// Exhaustive search over pure Mealy machines with at most `bound` memory
// values, exploring only entries reachable from the start and pruning partial
// machines that already carry a violation no completion can remove.
class MachineSearch {
 public:
  MachineSearch(const StochasticGame& game, const CombinedObjective& w, int bound,
                const OracleLimits& limits)
      : game_(game), w_(w), bound_(bound), budget_(limits.search_budget) {
    n_ = game.size();
    auto p1 = p1_configs(game);
    adversary_count(game, p1, limits.adversary_cap);
    for_each_adversary(game, p1, [&](const MemorylessStrategy& pi) {
      adversaries_.push_back(pi);
      return true;
    });
    out_.assign(static_cast<size_t>(bound_), std::vector<int>(static_cast<size_t>(n_), -1));
    upd_.assign(static_cast<size_t>(bound_), std::vector<int>(static_cast<size_t>(n_), -1));
  }

  // Search for a machine winning from `start`; leaves the found machine in
  // tables when true.
  bool search(Config start) {
    start_ = start;
    max_mem_used_ = 0;
    for (auto& row : out_) std::fill(row.begin(), row.end(), -1);
    for (auto& row : upd_) std::fill(row.begin(), row.end(), -1);
    return dfs();
  }

  FiniteMemoryStrategy machine() const {
    FiniteMemoryStrategy fm;
    fm.player = 0;
    fm.memory_size = bound_;
    fm.init_mem = 0;
    fm.update.assign(static_cast<size_t>(bound_), std::vector<int>(static_cast<size_t>(n_), 0));
    fm.output.assign(static_cast<size_t>(bound_), std::vector<Config>(static_cast<size_t>(n_), -1));
    for (int m = 0; m < bound_; ++m)
      for (Config v = 0; v < n_; ++v) {
        fm.update[static_cast<size_t>(m)][static_cast<size_t>(v)] =
            std::max(upd_[static_cast<size_t>(m)][static_cast<size_t>(v)], 0);
        if (game_.owner[static_cast<size_t>(v)] == Owner::P0) {
          int o = out_[static_cast<size_t>(m)][static_cast<size_t>(v)];
          fm.output[static_cast<size_t>(m)][static_cast<size_t>(v)] =
              o >= 0 ? o : game_.succ(v).front();
        }
      }
    return fm;
  }

 private:
  struct Entry {
    bool is_out;
    int mem;
    Config config;
  };

  // First undefined entry required by states reachable under the current
  // partial tables, or nullopt when the reachable fragment is closed.
  std::optional<Entry> frontier() {
    reach_.assign(static_cast<size_t>(bound_ * n_), 0);
    std::vector<std::pair<int, Config>> queue{{0, start_}};
    reach_[static_cast<size_t>(start_)] = 1;  // state (0, start)
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      auto [m, v] = queue[qi];
      std::vector<Config> targets;
      if (game_.owner[static_cast<size_t>(v)] == Owner::P0) {
        int o = out_[static_cast<size_t>(m)][static_cast<size_t>(v)];
        if (o < 0) return Entry{true, m, v};
        targets.push_back(o);
      } else {
        targets = game_.succ(v);
      }
      for (Config t : targets) {
        int mu = upd_[static_cast<size_t>(m)][static_cast<size_t>(t)];
        if (mu < 0) return Entry{false, m, t};
        size_t id = static_cast<size_t>(mu * n_ + t);
        if (!reach_[id]) {
          reach_[id] = 1;
          queue.push_back({mu, t});
        }
      }
    }
    return std::nullopt;
  }

  // Violations already forced by defined edges: a realizable odd-sure cycle,
  // or a fully-defined closed odd bottom SCC, under some adversary.
  bool pruned() {
    for (const auto& pi : adversaries_) {
      build_adj(pi);
      auto reach = detail::reachable_from(adj_, start_);  // state 0*n_+start_
      // sure: cycle with odd minimum among defined edges
      int d = 0;
      for (int s = 0; s < bound_ * n_; ++s)
        if (reach[static_cast<size_t>(s)]) d = std::max(d, w_.sure.at(s % n_));
      for (int k = 1; k <= d; k += 2) {
        std::vector<char> mask(static_cast<size_t>(bound_ * n_), 0);
        for (int s = 0; s < bound_ * n_; ++s)
          mask[static_cast<size_t>(s)] = reach[static_cast<size_t>(s)] && w_.sure.at(s % n_) >= k;
        auto scc = detail::sccs_of(adj_, mask);
        for (const auto& comp : scc.components) {
          if (!detail::has_cycle(adj_, comp)) continue;
          for (int s : comp)
            if (w_.sure.at(s % n_) == k) return true;
        }
      }
      // almost-sure: closed, fully defined bottom SCC with odd minimum
      std::vector<char> mask(static_cast<size_t>(bound_ * n_), 0);
      for (int s = 0; s < bound_ * n_; ++s) mask[static_cast<size_t>(s)] = reach[static_cast<size_t>(s)];
      auto scc = detail::sccs_of(adj_, mask);
      for (const auto& comp : scc.components) {
        bool closed = true;
        int min_prio = -1;
        for (int s : comp) {
          if (!fully_defined(s, pi)) closed = false;
          for (int t : adj_[static_cast<size_t>(s)])
            if (scc.comp_of[static_cast<size_t>(t)] != scc.comp_of[static_cast<size_t>(s)]) closed = false;
          int p = w_.secondary.at(s % n_);
          min_prio = min_prio < 0 ? p : std::min(min_prio, p);
        }
        if (closed && min_prio % 2 != 0) return true;
      }
    }
    return false;
  }

  bool fully_defined(int state, const MemorylessStrategy& pi) {
    int m = state / n_;
    Config v = state % n_;
    std::vector<Config> targets;
    if (game_.owner[static_cast<size_t>(v)] == Owner::P0) {
      int o = out_[static_cast<size_t>(m)][static_cast<size_t>(v)];
      if (o < 0) return false;
      targets.push_back(o);
    } else if (game_.owner[static_cast<size_t>(v)] == Owner::P1) {
      targets.push_back(pi.at(v));
    } else {
      targets = game_.succ(v);
    }
    for (Config t : targets)
      if (upd_[static_cast<size_t>(m)][static_cast<size_t>(t)] < 0) return false;
    return true;
  }

  void build_adj(const MemorylessStrategy& pi) {
    adj_.assign(static_cast<size_t>(bound_ * n_), {});
    for (int m = 0; m < bound_; ++m)
      for (Config v = 0; v < n_; ++v) {
        std::vector<Config> targets;
        if (game_.owner[static_cast<size_t>(v)] == Owner::P0) {
          int o = out_[static_cast<size_t>(m)][static_cast<size_t>(v)];
          if (o < 0) continue;
          targets.push_back(o);
        } else if (game_.owner[static_cast<size_t>(v)] == Owner::P1) {
          targets.push_back(pi.at(v));
        } else {
          targets = game_.succ(v);
        }
        for (Config t : targets) {
          int mu = upd_[static_cast<size_t>(m)][static_cast<size_t>(t)];
          if (mu >= 0) adj_[static_cast<size_t>(m * n_ + v)].push_back(mu * n_ + t);
        }
      }
  }

  bool complete_ok() {
    for (const auto& pi : adversaries_) {
      build_adj(pi);
      auto reach = detail::reachable_from(adj_, start_);
      int d = 0;
      for (int s = 0; s < bound_ * n_; ++s)
        if (reach[static_cast<size_t>(s)]) d = std::max(d, w_.sure.at(s % n_));
      for (int k = 1; k <= d; k += 2) {
        std::vector<char> mask(static_cast<size_t>(bound_ * n_), 0);
        for (int s = 0; s < bound_ * n_; ++s)
          mask[static_cast<size_t>(s)] = reach[static_cast<size_t>(s)] && w_.sure.at(s % n_) >= k;
        auto scc = detail::sccs_of(adj_, mask);
        for (const auto& comp : scc.components) {
          if (!detail::has_cycle(adj_, comp)) continue;
          for (int s : comp)
            if (w_.sure.at(s % n_) == k) return false;
        }
      }
      std::vector<char> mask(reach);
      auto scc = detail::sccs_of(adj_, mask);
      for (const auto& comp : scc.components) {
        bool bottom = true;
        int min_prio = -1;
        for (int s : comp) {
          for (int t : adj_[static_cast<size_t>(s)])
            if (scc.comp_of[static_cast<size_t>(t)] != scc.comp_of[static_cast<size_t>(s)]) bottom = false;
          int p = w_.secondary.at(s % n_);
          min_prio = min_prio < 0 ? p : std::min(min_prio, p);
        }
        if (bottom && min_prio % 2 != 0) return false;
      }
    }
    return true;
  }

  bool dfs() {
    if (--budget_ < 0) throw CapError("machine search budget exceeded");
    auto entry = frontier();
    if (!entry) return complete_ok();
    if (entry->is_out) {
      auto& slot = out_[static_cast<size_t>(entry->mem)][static_cast<size_t>(entry->config)];
      for (Config w : game_.succ(entry->config)) {
        slot = w;
        if (!pruned() && dfs()) return true;
      }
      slot = -1;
      return false;
    }
    auto& slot = upd_[static_cast<size_t>(entry->mem)][static_cast<size_t>(entry->config)];
    int limit = std::min(bound_ - 1, max_mem_used_ + 1);  // first-use canonical order
    for (int j = 0; j <= limit; ++j) {
      slot = j;
      int saved = max_mem_used_;
      max_mem_used_ = std::max(max_mem_used_, j);
      if (!pruned() && dfs()) return true;
      max_mem_used_ = saved;
    }
    slot = -1;
    return false;
  }

  const StochasticGame& game_;
  const CombinedObjective& w_;
  int bound_;
  int n_;
  Config start_ = 0;
  long long budget_;
  int max_mem_used_ = 0;
  std::vector<MemorylessStrategy> adversaries_;
  std::vector<std::vector<int>> out_, upd_;
  std::vector<char> reach_;
  std::vector<std::vector<int>> adj_;
};

}  // namespace

std::vector<char> oracle_solve_sas(const StochasticGame& game, const CombinedObjective& w,
                                   int mem_bound, const OracleLimits& limits) {
  if (mem_bound < 1) throw std::invalid_argument("oracle_solve_sas: mem_bound must be >= 1");
  int n = game.size();
  std::vector<char> result(static_cast<size_t>(n), 0);
  std::vector<char> decided(static_cast<size_t>(n), 0);
  MachineSearch search(game, w, mem_bound, limits);
  for (Config v = 0; v < n; ++v) {
    if (decided[static_cast<size_t>(v)]) continue;
    decided[static_cast<size_t>(v)] = 1;
    if (search.search(v)) {
      result[static_cast<size_t>(v)] = 1;
      // the found machine may also win from other undecided configs
      FiniteMemoryStrategy fm = search.machine();
      for (Config u = v + 1; u < n; ++u) {
        if (decided[static_cast<size_t>(u)]) continue;
        if (verify_sas_strategy(game, w, fm, u, limits).ok()) {
          decided[static_cast<size_t>(u)] = 1;
          result[static_cast<size_t>(u)] = 1;
        }
      }
    }
  }
  return result;
}

bool check_almost_sure_ranking(const ProductArena& arena, const Ranking& ranking,
                               const ParityObjective& alpha) {
  size_t dim = 0;
  bool have_dim = false;
  for (const auto& r : ranking.vec)
    if (!r.infinite) {
      if (have_dim && r.coords.size() != dim)
        throw std::invalid_argument("ranking vectors have mixed lengths");
      dim = r.coords.size();
      have_dim = true;
    }
  if (ranking.vec.size() != arena.states.size())
    throw std::invalid_argument("ranking size does not match arena");
  int d = 0;
  for (const auto& st : arena.states) d = std::max(d, alpha.at(st.config));
  if (have_dim && static_cast<int>(dim) < (d + 1) / 2)
    throw std::invalid_argument("ranking dimension too small for priority range");

  // lexicographic comparison on odd-position prefix up to underline(k)
  auto cmp = [&](const RankVector& x, const RankVector& y, int k) {
    // -1: x < y, 0: equal, +1: x > y on the prefix
    int kk = k % 2 != 0 ? k : k - 1;          // underline(k)
    int len = kk < 0 ? 0 : (kk + 1) / 2;      // odd coordinates 1,3,...,kk
    if (x.infinite || y.infinite) {
      if (x.infinite && y.infinite) return 0;
      return x.infinite ? 1 : -1;
    }
    for (int t = 0; t < len; ++t) {
      if (x.coords[static_cast<size_t>(t)] < y.coords[static_cast<size_t>(t)]) return -1;
      if (x.coords[static_cast<size_t>(t)] > y.coords[static_cast<size_t>(t)]) return 1;
    }
    return 0;
  };

  for (size_t s = 0; s < arena.states.size(); ++s) {
    const RankVector& rv = ranking.vec[s];
    if (rv.infinite) continue;
    int p = alpha.at(arena.states[s].config);
    const auto& succ = arena.succ[s];
    if (arena.owner[s] == Owner::P0) {
      bool ok = false;
      for (int t : succ) {
        int c = cmp(ranking.vec[static_cast<size_t>(t)], rv, p);
        if (p % 2 != 0 ? c < 0 : c <= 0) ok = true;
      }
      if (!ok) return false;
    } else if (arena.owner[s] == Owner::P1) {
      for (int t : succ) {
        int c = cmp(ranking.vec[static_cast<size_t>(t)], rv, p);
        if (!(p % 2 != 0 ? c < 0 : c <= 0)) return false;
      }
    } else {
      // Random: either Pr[<=_{p-1}] = 1 (even p only), or some odd j in
      // [1..p] with Pr[<=_{j-2}] = 1 and Pr[<_j] >= epsilon
      auto prob_le = [&](int k) {
        Rational sum = 0;
        for (size_t i = 0; i < succ.size(); ++i)
          if (cmp(ranking.vec[static_cast<size_t>(succ[i])], rv, k) <= 0) sum += arena.prob[s][i];
        return sum;
      };
      auto prob_lt = [&](int k) {
        Rational sum = 0;
        for (size_t i = 0; i < succ.size(); ++i)
          if (cmp(ranking.vec[static_cast<size_t>(succ[i])], rv, k) < 0) sum += arena.prob[s][i];
        return sum;
      };
      bool ok = false;
      if (p % 2 == 0 && prob_le(p - 1) == 1) ok = true;
      for (int j = 1; !ok && j <= p; j += 2)
        if (prob_le(j - 2) == 1 && prob_lt(j) >= ranking.epsilon) ok = true;
      if (!ok) return false;
    }
  }
  return true;
}

}  // namespace sgsolve
