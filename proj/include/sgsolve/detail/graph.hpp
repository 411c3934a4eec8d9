#pragma once

#include <algorithm>
#include <vector>

namespace sgsolve::detail {

struct Sccs {
  std::vector<std::vector<int>> components;  // reverse topological order
  std::vector<int> comp_of;                  // -1 outside mask
};

// Iterative Tarjan restricted to nodes where mask holds.
inline Sccs sccs_of(const std::vector<std::vector<int>>& adj, const std::vector<char>& mask) {
  int n = static_cast<int>(adj.size());
  Sccs out;
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
      if (f.child < adj[static_cast<size_t>(f.v)].size()) {
        int w = adj[static_cast<size_t>(f.v)][f.child++];
        if (!mask[static_cast<size_t>(w)]) continue;
        if (idx[static_cast<size_t>(w)] < 0) {
          idx[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<size_t>(w)] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[static_cast<size_t>(w)]) {
          low[static_cast<size_t>(f.v)] =
              std::min(low[static_cast<size_t>(f.v)], idx[static_cast<size_t>(w)]);
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

inline std::vector<char> reachable_from(const std::vector<std::vector<int>>& adj, int start) {
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<size_t>(start)] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<size_t>(v)])
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        stack.push_back(w);
      }
  }
  return seen;
}

inline bool has_cycle(const std::vector<std::vector<int>>& adj, const std::vector<int>& comp) {
  if (comp.size() > 1) return true;
  int v = comp.front();
  return std::find(adj[static_cast<size_t>(v)].begin(), adj[static_cast<size_t>(v)].end(), v) !=
         adj[static_cast<size_t>(v)].end();
}

// Reachable cycle whose minimum priority is even under every given priority
// vector: search per tuple of candidate even minima via SCC decomposition.
inline bool good_cycle_reachable(const std::vector<std::vector<int>>& adj, int start,
                                 const std::vector<const std::vector<int>*>& prios) {
  std::vector<char> reach = reachable_from(adj, start);
  int n = static_cast<int>(adj.size());
  // candidate even minima per objective
  std::vector<std::vector<int>> cands;
  for (const auto* p : prios) {
    std::vector<int> c;
    for (int v = 0; v < n; ++v)
      if (reach[static_cast<size_t>(v)]) {
        int x = (*p)[static_cast<size_t>(v)];
        if (x % 2 == 0 && std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
      }
    if (c.empty()) return false;
    std::sort(c.begin(), c.end());
    cands.push_back(std::move(c));
  }
  std::vector<size_t> pick(prios.size(), 0);
  while (true) {
    std::vector<char> mask(static_cast<size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      if (!reach[static_cast<size_t>(v)]) continue;
      bool ok = true;
      for (size_t i = 0; i < prios.size(); ++i)
        if ((*prios[i])[static_cast<size_t>(v)] < cands[i][pick[i]]) ok = false;
      mask[static_cast<size_t>(v)] = ok;
    }
    auto scc = sccs_of(adj, mask);
    for (const auto& comp : scc.components) {
      if (!has_cycle(adj, comp)) continue;
      // restrict cycle candidates to edges inside the component and mask
      bool all_attained = true;
      for (size_t i = 0; i < prios.size(); ++i) {
        bool attained = false;
        for (int v : comp)
          if ((*prios[i])[static_cast<size_t>(v)] == cands[i][pick[i]]) attained = true;
        if (!attained) all_attained = false;
      }
      if (all_attained) return true;
    }
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == cands[i].size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

}  // namespace sgsolve::detail
