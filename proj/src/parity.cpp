#include "sgsolve/parity.hpp"

#include <algorithm>
#include <stdexcept>

namespace sgsolve {
namespace {

Owner player_owner(int player) { return player == 0 ? Owner::P0 : Owner::P1; }

// Attractor levels: L0 = target, L_{k+1} adds player configs with an edge into
// L_k and opponent configs with all (alive) edges in L_k. Canonical witness:
// lowest-id successor with a strictly smaller level.
std::pair<std::vector<char>, MemorylessStrategy> attractor_impl(const StochasticGame& game,
                                                                int player,
                                                                const std::vector<char>& target,
                                                                const std::vector<char>& alive) {
  int n = game.size();
  Owner mine = player_owner(player);
  std::vector<int> level(static_cast<size_t>(n), -1);
  for (Config v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)] && target[static_cast<size_t>(v)]) level[static_cast<size_t>(v)] = 0;
  bool changed = true;
  int round = 0;
  while (changed) {
    changed = false;
    ++round;
    for (Config v = 0; v < n; ++v) {
      if (!alive[static_cast<size_t>(v)] || level[static_cast<size_t>(v)] >= 0) continue;
      bool in = false;
      if (game.owner[static_cast<size_t>(v)] == mine) {
        for (Config w : game.succ(v))
          if (alive[static_cast<size_t>(w)] && level[static_cast<size_t>(w)] >= 0 &&
              level[static_cast<size_t>(w)] < round)
            in = true;
      } else {
        in = true;
        bool any = false;
        for (Config w : game.succ(v)) {
          if (!alive[static_cast<size_t>(w)]) continue;
          any = true;
          if (!(level[static_cast<size_t>(w)] >= 0 && level[static_cast<size_t>(w)] < round)) in = false;
        }
        if (!any) in = false;
      }
      if (in) {
        level[static_cast<size_t>(v)] = round;
        changed = true;
      }
    }
  }
  std::vector<char> in_set(static_cast<size_t>(n), 0);
  MemorylessStrategy wit;
  wit.player = player;
  for (Config v = 0; v < n; ++v) {
    if (level[static_cast<size_t>(v)] < 0) continue;
    in_set[static_cast<size_t>(v)] = 1;
    if (game.owner[static_cast<size_t>(v)] == mine && level[static_cast<size_t>(v)] > 0) {
      for (Config w : game.succ(v))
        if (alive[static_cast<size_t>(w)] && level[static_cast<size_t>(w)] >= 0 &&
            level[static_cast<size_t>(w)] < level[static_cast<size_t>(v)]) {
          wit.choice[v] = w;
          break;
        }
    }
  }
  return {in_set, wit};
}

struct ZielonkaResult {
  std::vector<char> w0, w1;
  MemorylessStrategy strat0, strat1;
};

ZielonkaResult zielonka(const StochasticGame& game, const ParityObjective& obj,
                        const std::vector<char>& alive) {
  int n = game.size();
  ZielonkaResult res;
  res.w0.assign(static_cast<size_t>(n), 0);
  res.w1.assign(static_cast<size_t>(n), 0);
  res.strat0.player = 0;
  res.strat1.player = 1;

  int p = -1;
  for (Config v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)])
      p = p < 0 ? obj.at(v) : std::min(p, obj.at(v));
  if (p < 0) return res;

  int i = p % 2;
  Owner mine = player_owner(i);
  std::vector<char> min_set(static_cast<size_t>(n), 0);
  for (Config v = 0; v < n; ++v)
    if (alive[static_cast<size_t>(v)] && obj.at(v) == p) min_set[static_cast<size_t>(v)] = 1;

  auto [attr, wit] = attractor_impl(game, i, min_set, alive);
  std::vector<char> rest(static_cast<size_t>(n), 0);
  for (Config v = 0; v < n; ++v)
    rest[static_cast<size_t>(v)] = alive[static_cast<size_t>(v)] && !attr[static_cast<size_t>(v)];
  ZielonkaResult sub = zielonka(game, obj, rest);

  auto& sub_wther = i == 0 ? sub.w1 : sub.w0;  // opponent's subgame region
  bool opp_empty = std::none_of(sub_wther.begin(), sub_wther.end(), [](char c) { return c != 0; });
  if (opp_empty) {
    auto& win = i == 0 ? res.w0 : res.w1;
    auto& strat = i == 0 ? res.strat0 : res.strat1;
    auto& sub_strat = i == 0 ? sub.strat0 : sub.strat1;
    for (Config v = 0; v < n; ++v)
      if (alive[static_cast<size_t>(v)]) win[static_cast<size_t>(v)] = 1;
    strat = sub_strat;
    for (const auto& [v, w] : wit.choice) strat.choice[v] = w;
    for (Config v = 0; v < n; ++v) {
      if (!min_set[static_cast<size_t>(v)] || game.owner[static_cast<size_t>(v)] != mine) continue;
      Config pick = -1;
      for (Config w : game.succ(v))
        if (alive[static_cast<size_t>(w)] && attr[static_cast<size_t>(w)]) {
          pick = w;
          break;
        }
      if (pick < 0)
        for (Config w : game.succ(v))
          if (alive[static_cast<size_t>(w)]) {
            pick = w;
            break;
          }
      strat.choice[v] = pick;
    }
    strat.player = i;
    return res;
  }

  auto [btrap, bwit] = attractor_impl(game, 1 - i, sub_wther, alive);
  std::vector<char> rest2(static_cast<size_t>(n), 0);
  for (Config v = 0; v < n; ++v)
    rest2[static_cast<size_t>(v)] = alive[static_cast<size_t>(v)] && !btrap[static_cast<size_t>(v)];
  ZielonkaResult sub2 = zielonka(game, obj, rest2);

  auto& wother = i == 0 ? res.w1 : res.w0;
  auto& sother = i == 0 ? res.strat1 : res.strat0;
  auto& wmine = i == 0 ? res.w0 : res.w1;
  auto& smine = i == 0 ? res.strat0 : res.strat1;
  auto& sub2_other = i == 0 ? sub2.w1 : sub2.w0;
  auto& sub2_other_s = i == 0 ? sub2.strat1 : sub2.strat0;
  auto& sub2_mine = i == 0 ? sub2.w0 : sub2.w1;
  auto& sub2_mine_s = i == 0 ? sub2.strat0 : sub2.strat1;
  auto& sub_other_s = i == 0 ? sub.strat1 : sub.strat0;

  for (Config v = 0; v < n; ++v) {
    wother[static_cast<size_t>(v)] = btrap[static_cast<size_t>(v)] || sub2_other[static_cast<size_t>(v)];
    wmine[static_cast<size_t>(v)] = sub2_mine[static_cast<size_t>(v)];
  }
  sother = sub2_other_s;
  for (const auto& [v, w] : sub_other_s.choice)
    if (sub_wther[static_cast<size_t>(v)]) sother.choice[v] = w;
  for (const auto& [v, w] : bwit.choice) sother.choice[v] = w;
  sother.player = 1 - i;
  smine = sub2_mine_s;
  smine.player = i;
  return res;
}

}  // namespace

std::vector<Config> ParitySolution::region0() const {
  std::vector<Config> out;
  for (size_t v = 0; v < w0.size(); ++v)
    if (w0[v]) out.push_back(static_cast<Config>(v));
  return out;
}

std::vector<Config> ParitySolution::region1() const {
  std::vector<Config> out;
  for (size_t v = 0; v < w1.size(); ++v)
    if (w1[v]) out.push_back(static_cast<Config>(v));
  return out;
}

std::pair<std::vector<char>, MemorylessStrategy> attractor(const StochasticGame& game,
                                                           int player,
                                                           const std::vector<char>& target,
                                                           const std::vector<char>& alive) {
  for (Config v = 0; v < game.size(); ++v)
    if (alive[static_cast<size_t>(v)] && game.owner[static_cast<size_t>(v)] == Owner::Random)
      throw std::invalid_argument("attractor requires a non-stochastic (sub)game");
  return attractor_impl(game, player, target, alive);
}

ParitySolution solve_parity(const StochasticGame& game, const ParityObjective& obj) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("solve_parity requires a non-stochastic game");
  if (static_cast<int>(obj.prio.size()) != game.size())
    throw std::invalid_argument("objective size mismatch");
  std::vector<char> alive(static_cast<size_t>(game.size()), 1);
  ZielonkaResult r = zielonka(game, obj, alive);
  ParitySolution out;
  out.w0 = std::move(r.w0);
  out.w1 = std::move(r.w1);
  out.strat0 = std::move(r.strat0);
  out.strat1 = std::move(r.strat1);
  out.strat0.name = game.name + ".parity.p0";
  out.strat1.name = game.name + ".parity.p1";
  return out;
}

}  // namespace sgsolve
