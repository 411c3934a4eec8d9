#include "sgsolve/analysis.hpp"

#include <algorithm>
#include <random>

namespace sgsolve {
namespace {

std::vector<char> reachable_states(const MarkovChain& chain) {
  std::vector<char> seen(static_cast<size_t>(chain.size()), 0);
  std::vector<int> stack{chain.init_state};
  seen[static_cast<size_t>(chain.init_state)] = 1;
  while (!stack.empty()) {
    int s = stack.back();
    stack.pop_back();
    for (const auto& [t, p] : chain.trans[static_cast<size_t>(s)])
      if (!seen[static_cast<size_t>(t)]) {
        seen[static_cast<size_t>(t)] = 1;
        stack.push_back(t);
      }
  }
  return seen;
}

// Iterative Tarjan over an arbitrary successor function, restricted to nodes
// where mask holds.
struct SccDecomposition {
  std::vector<std::vector<int>> components;  // in reverse topological order
  std::vector<int> comp_of;
};

template <typename Succ>
SccDecomposition tarjan(int n, const std::vector<char>& mask, Succ succ) {
  SccDecomposition out;
  out.comp_of.assign(static_cast<size_t>(n), -1);
  std::vector<int> idx(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0);
  std::vector<char> on_stack(static_cast<size_t>(n), 0);
  std::vector<int> stack;
  int counter = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (!mask[static_cast<size_t>(root)] || idx[static_cast<size_t>(root)] >= 0) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<size_t>(root)] = 1;
    while (!frames.empty()) {
      auto& f = frames.back();
      const auto& sv = succ(f.v);
      if (f.child < sv.size()) {
        int w = sv[f.child++];
        if (!mask[static_cast<size_t>(w)]) continue;
        if (idx[static_cast<size_t>(w)] < 0) {
          idx[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] = std::min(low[static_cast<size_t>(f.v)], idx[static_cast<size_t>(w)]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[static_cast<size_t>(frames.back().v)] =
              std::min(low[static_cast<size_t>(frames.back().v)], low[static_cast<size_t>(v)]);
        if (low[static_cast<size_t>(v)] == idx[static_cast<size_t>(v)]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = 0;
            out.comp_of[static_cast<size_t>(w)] = static_cast<int>(out.components.size());
            comp.push_back(w);
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          out.components.push_back(std::move(comp));
        }
      }
    }
  }
  return out;
}

std::vector<int> chain_succ_ids(const MarkovChain& chain, int s) {
  std::vector<int> out;
  for (const auto& [t, p] : chain.trans[static_cast<size_t>(s)]) out.push_back(t);
  return out;
}

}  // namespace

std::vector<std::vector<int>> bottom_sccs(const MarkovChain& chain) {
  auto reach = reachable_states(chain);
  std::vector<std::vector<int>> cache(static_cast<size_t>(chain.size()));
  for (int s = 0; s < chain.size(); ++s) cache[static_cast<size_t>(s)] = chain_succ_ids(chain, s);
  auto scc = tarjan(chain.size(), reach, [&](int s) -> const std::vector<int>& {
    return cache[static_cast<size_t>(s)];
  });
  std::vector<std::vector<int>> out;
  for (const auto& comp : scc.components) {
    bool bottom = true;
    for (int s : comp)
      for (int t : cache[static_cast<size_t>(s)])
        if (scc.comp_of[static_cast<size_t>(t)] != scc.comp_of[static_cast<size_t>(s)]) bottom = false;
    if (bottom) out.push_back(comp);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<Rational> reach_probabilities(const MarkovChain& chain,
                                          const std::vector<char>& target) {
  int n = chain.size();
  // states that can reach the target (backward search)
  std::vector<std::vector<int>> pred(static_cast<size_t>(n));
  for (int s = 0; s < n; ++s)
    for (const auto& [t, p] : chain.trans[static_cast<size_t>(s)]) pred[static_cast<size_t>(t)].push_back(s);
  std::vector<char> can(static_cast<size_t>(n), 0);
  std::vector<int> queue;
  for (int s = 0; s < n; ++s)
    if (target[static_cast<size_t>(s)]) {
      can[static_cast<size_t>(s)] = 1;
      queue.push_back(s);
    }
  for (size_t i = 0; i < queue.size(); ++i)
    for (int p : pred[static_cast<size_t>(queue[i])])
      if (!can[static_cast<size_t>(p)]) {
        can[static_cast<size_t>(p)] = 1;
        queue.push_back(p);
      }

  std::vector<Rational> x(static_cast<size_t>(n), Rational(0));
  std::vector<int> unknown;
  std::vector<int> col(static_cast<size_t>(n), -1);
  for (int s = 0; s < n; ++s) {
    if (target[static_cast<size_t>(s)]) {
      x[static_cast<size_t>(s)] = 1;
    } else if (can[static_cast<size_t>(s)]) {
      col[static_cast<size_t>(s)] = static_cast<int>(unknown.size());
      unknown.push_back(s);
    }
  }
  int m = static_cast<int>(unknown.size());
  if (m == 0) return x;

  // (I - P) x = b over unknowns, exact Gaussian elimination
  std::vector<std::vector<Rational>> a(static_cast<size_t>(m),
                                       std::vector<Rational>(static_cast<size_t>(m + 1), Rational(0)));
  for (int i = 0; i < m; ++i) {
    int s = unknown[static_cast<size_t>(i)];
    a[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    for (const auto& [t, p] : chain.trans[static_cast<size_t>(s)]) {
      if (target[static_cast<size_t>(t)]) {
        a[static_cast<size_t>(i)][static_cast<size_t>(m)] += p;
      } else if (col[static_cast<size_t>(t)] >= 0) {
        a[static_cast<size_t>(i)][static_cast<size_t>(col[static_cast<size_t>(t)])] -= p;
      }
    }
  }
  for (int c = 0; c < m; ++c) {
    int piv = -1;
    for (int r = c; r < m; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
        piv = r;
        break;
      }
    std::swap(a[static_cast<size_t>(c)], a[static_cast<size_t>(piv)]);
    Rational inv = a[static_cast<size_t>(c)][static_cast<size_t>(c)];
    for (int k = c; k <= m; ++k) a[static_cast<size_t>(c)][static_cast<size_t>(k)] /= inv;
    for (int r = 0; r < m; ++r) {
      if (r == c) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int k = c; k <= m; ++k)
        a[static_cast<size_t>(r)][static_cast<size_t>(k)] -= f * a[static_cast<size_t>(c)][static_cast<size_t>(k)];
    }
  }
  for (int i = 0; i < m; ++i)
    x[static_cast<size_t>(unknown[static_cast<size_t>(i)])] = a[static_cast<size_t>(i)][static_cast<size_t>(m)];
  return x;
}

bool chain_satisfies_sure(const MarkovChain& chain, const ParityObjective& alpha) {
  auto reach = reachable_states(chain);
  std::vector<std::vector<int>> cache(static_cast<size_t>(chain.size()));
  for (int s = 0; s < chain.size(); ++s) cache[static_cast<size_t>(s)] = chain_succ_ids(chain, s);
  auto prio = [&](int s) { return alpha.at(chain.config_of(s)); };
  int d = 0;
  for (int s = 0; s < chain.size(); ++s)
    if (reach[static_cast<size_t>(s)]) d = std::max(d, prio(s));
  for (int k = 1; k <= d; k += 2) {
    // a cycle with minimum priority exactly k lives in the subgraph >= k
    std::vector<char> mask(static_cast<size_t>(chain.size()), 0);
    for (int s = 0; s < chain.size(); ++s)
      mask[static_cast<size_t>(s)] = reach[static_cast<size_t>(s)] && prio(s) >= k;
    auto scc = tarjan(chain.size(), mask, [&](int s) -> const std::vector<int>& {
      return cache[static_cast<size_t>(s)];
    });
    for (const auto& comp : scc.components) {
      bool has_cycle = comp.size() > 1;
      if (!has_cycle)
        for (int t : cache[static_cast<size_t>(comp[0])])
          if (t == comp[0]) has_cycle = true;
      if (!has_cycle) continue;
      for (int s : comp)
        if (prio(s) == k) return false;
    }
  }
  return true;
}

bool chain_satisfies_almost_sure(const MarkovChain& chain, const ParityObjective& alpha) {
  for (const auto& comp : bottom_sccs(chain)) {
    int min_prio = alpha.at(chain.config_of(comp[0]));
    for (int s : comp) min_prio = std::min(min_prio, alpha.at(chain.config_of(s)));
    if (min_prio % 2 != 0) return false;
  }
  return true;
}

std::vector<Rational> simulate(const MarkovChain& chain, int steps, int trials,
                               std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<long long> visited(static_cast<size_t>(chain.size()), 0);
  for (int t = 0; t < trials; ++t) {
    std::vector<char> seen(static_cast<size_t>(chain.size()), 0);
    int s = chain.init_state;
    seen[static_cast<size_t>(s)] = 1;
    for (int k = 0; k < steps; ++k) {
      const auto& tr = chain.trans[static_cast<size_t>(s)];
      if (tr.empty()) break;
      // draw within the common denominator grid
      mpz_class den = 1;
      for (const auto& [v, p] : tr) den = den * p.get_den() / gcd(den, p.get_den());
      std::uniform_int_distribution<unsigned long long> dist(0, den.get_ui() - 1);
      mpz_class draw(static_cast<unsigned long>(dist(rng)));
      mpz_class acc = 0;
      int next = tr.back().first;
      for (const auto& [v, p] : tr) {
        acc += p.get_num() * (den / p.get_den());
        if (draw < acc) {
          next = v;
          break;
        }
      }
      s = next;
      seen[static_cast<size_t>(s)] = 1;
    }
    for (int v = 0; v < chain.size(); ++v) visited[static_cast<size_t>(v)] += seen[static_cast<size_t>(v)];
  }
  std::vector<Rational> out(static_cast<size_t>(chain.size()));
  for (int v = 0; v < chain.size(); ++v) {
    out[static_cast<size_t>(v)] = Rational(static_cast<long>(visited[static_cast<size_t>(v)]),
                                           static_cast<long>(trials));
    out[static_cast<size_t>(v)].canonicalize();
  }
  return out;
}

}  // namespace sgsolve
