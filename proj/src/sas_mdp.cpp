#include "sgsolve/sas_mdp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "sgsolve/parity.hpp"

namespace sgsolve {
namespace {

std::string base_label(const StochasticGame& g, Config v) {
  const auto& l = g.labels[static_cast<size_t>(v)];
  return l.empty() ? "q" + std::to_string(v) : l;
}

}  // namespace

Stage1Buchi as_parity_to_buchi(const StochasticGame& mdp, const CombinedObjective& w) {
  if (!mdp.is_mdp()) throw std::invalid_argument("as_parity_to_buchi requires an MDP");
  if (w.mode != Mode::SAS) throw std::invalid_argument("as_parity_to_buchi requires an SAS objective");
  int n = mdp.size();
  const auto& alpha_s = w.sure.prio;
  const auto& alpha_as = w.secondary.prio;
  int d_as = w.secondary.index();

  Stage1Buchi out;
  out.mdp.name = mdp.name + ".buchi";
  out.mdp.prio_sure = std::vector<int>();
  for (int c = 0; c <= d_as; c += 2) out.copy_values.push_back(c);

  std::vector<Config> buchi_ids;
  auto add = [&](Owner o, const std::string& label, int sure_prio, Config origin,
                 const std::string& annot) {
    Config id = out.mdp.add_config(o, label);
    out.mdp.prio_sure->back() = sure_prio;
    out.origin.push_back(origin);
    out.annot.push_back(annot);
    return id;
  };

  out.entry.resize(static_cast<size_t>(n));
  out.tilde_of.resize(static_cast<size_t>(n));
  out.copy_of.assign(static_cast<size_t>(n), {});
  for (Config v = 0; v < n; ++v)
    out.entry[static_cast<size_t>(v)] =
        add(mdp.owner[static_cast<size_t>(v)], base_label(mdp, v),
            alpha_s[static_cast<size_t>(v)], v, "orig");
  for (Config v = 0; v < n; ++v)
    out.tilde_of[static_cast<size_t>(v)] =
        add(Owner::P0, base_label(mdp, v) + ".t", alpha_s[static_cast<size_t>(v)], v, "tilde");
  for (Config v = 0; v < n; ++v)
    for (int c : out.copy_values) {
      Config id = add(mdp.owner[static_cast<size_t>(v)], base_label(mdp, v) + "@" + std::to_string(c),
                      alpha_s[static_cast<size_t>(v)], v, "copy" + std::to_string(c));
      out.copy_of[static_cast<size_t>(v)].push_back(id);
      if (alpha_as[static_cast<size_t>(v)] == c) buchi_ids.push_back(id);
    }
  out.sink = add(Owner::P0, "bot", 1, -1, "bot");
  out.mdp.add_edge(out.sink, out.sink);

  for (Config v = 0; v < n; ++v) {
    Config ov = out.entry[static_cast<size_t>(v)];
    bool rnd = mdp.owner[static_cast<size_t>(v)] == Owner::Random;
    for (Config t : mdp.succ(v)) {
      Config tgt = out.tilde_of[static_cast<size_t>(t)];
      if (rnd)
        out.mdp.add_edge(ov, tgt, mdp.prob[static_cast<size_t>(v)].at(t));
      else
        out.mdp.add_edge(ov, tgt);
    }
    Config tv = out.tilde_of[static_cast<size_t>(v)];
    out.mdp.add_edge(tv, ov);
    for (size_t ci = 0; ci < out.copy_values.size(); ++ci)
      out.mdp.add_edge(tv, out.copy_of[static_cast<size_t>(v)][ci]);
    out.mdp.add_edge(tv, out.sink);
    for (size_t ci = 0; ci < out.copy_values.size(); ++ci) {
      int c = out.copy_values[ci];
      Config cv = out.copy_of[static_cast<size_t>(v)][ci];
      if (alpha_as[static_cast<size_t>(v)] >= c) {
        for (Config t : mdp.succ(v)) {
          Config tgt = out.copy_of[static_cast<size_t>(t)][ci];
          if (rnd)
            out.mdp.add_edge(cv, tgt, mdp.prob[static_cast<size_t>(v)].at(t));
          else
            out.mdp.add_edge(cv, tgt);
        }
      } else {
        if (rnd)
          out.mdp.add_edge(cv, out.sink, Rational(1));
        else
          out.mdp.add_edge(cv, out.sink);
      }
    }
  }
  if (mdp.init) out.mdp.init = out.entry[static_cast<size_t>(*mdp.init)];
  out.sure = ParityObjective{*out.mdp.prio_sure};
  out.buchi = TargetSet::of(out.mdp.size(), buchi_ids);
  return out;
}

Stage2ConjGame buchi_mdp_to_conj_game(const StochasticGame& mdp, const ParityObjective& sure,
                                      const TargetSet& buchi) {
  if (!mdp.is_mdp()) throw std::invalid_argument("buchi_mdp_to_conj_game requires an MDP");
  int n = mdp.size();
  Stage2ConjGame out;
  out.game.name = mdp.name + ".gadget";
  out.game.prio_sure = std::vector<int>();

  auto add = [&](Owner o, const std::string& label, int sure_prio, Config origin,
                 const std::string& annot) {
    Config id = out.game.add_config(o, label);
    out.game.prio_sure->back() = sure_prio;
    out.origin.push_back(origin);
    out.annot.push_back(annot);
    return id;
  };
  auto fill = [&](std::vector<Config>& vec) { vec.assign(static_cast<size_t>(n), -1); };
  fill(out.kept);
  fill(out.bar);
  fill(out.tilde0);
  fill(out.tilde2);
  fill(out.hat0);
  fill(out.hat1);
  out.entry.assign(static_cast<size_t>(n), -1);

  std::vector<Config> buchi_ids;
  for (Config q = 0; q < n; ++q) {
    int p = sure.at(q);
    std::string l = base_label(mdp, q);
    if (mdp.owner[static_cast<size_t>(q)] != Owner::Random) {
      out.kept[static_cast<size_t>(q)] = add(mdp.owner[static_cast<size_t>(q)], l, p, q, "kept");
      out.entry[static_cast<size_t>(q)] = out.kept[static_cast<size_t>(q)];
      if (buchi.contains(q)) buchi_ids.push_back(out.kept[static_cast<size_t>(q)]);
    } else {
      out.bar[static_cast<size_t>(q)] = add(Owner::P1, l + ".bar", p, q, "bar");
      out.tilde0[static_cast<size_t>(q)] = add(Owner::P0, l + ".t0", p, q, "tilde0");
      out.hat0[static_cast<size_t>(q)] = add(Owner::P1, l + ".h0", p, q, "hat0");
      buchi_ids.push_back(out.hat0[static_cast<size_t>(q)]);
      if (!buchi.contains(q)) {
        out.tilde2[static_cast<size_t>(q)] = add(Owner::P0, l + ".t2", p, q, "tilde2");
        out.hat1[static_cast<size_t>(q)] = add(Owner::P0, l + ".h1", p, q, "hat1");
      }
      out.entry[static_cast<size_t>(q)] = out.bar[static_cast<size_t>(q)];
    }
  }
  for (Config q = 0; q < n; ++q) {
    if (mdp.owner[static_cast<size_t>(q)] != Owner::Random) {
      for (Config t : mdp.succ(q))
        out.game.add_edge(out.kept[static_cast<size_t>(q)], out.entry[static_cast<size_t>(t)]);
    } else {
      out.game.add_edge(out.bar[static_cast<size_t>(q)], out.tilde0[static_cast<size_t>(q)]);
      if (out.tilde2[static_cast<size_t>(q)] >= 0)
        out.game.add_edge(out.bar[static_cast<size_t>(q)], out.tilde2[static_cast<size_t>(q)]);
      out.game.add_edge(out.tilde0[static_cast<size_t>(q)], out.hat0[static_cast<size_t>(q)]);
      if (out.tilde2[static_cast<size_t>(q)] >= 0)
        out.game.add_edge(out.tilde2[static_cast<size_t>(q)], out.hat1[static_cast<size_t>(q)]);
      for (Config t : mdp.succ(q)) {
        out.game.add_edge(out.hat0[static_cast<size_t>(q)], out.entry[static_cast<size_t>(t)]);
        if (out.hat1[static_cast<size_t>(q)] >= 0)
          out.game.add_edge(out.hat1[static_cast<size_t>(q)], out.entry[static_cast<size_t>(t)]);
      }
    }
  }
  if (mdp.init) out.game.init = out.entry[static_cast<size_t>(*mdp.init)];
  out.sure = ParityObjective{*out.game.prio_sure};
  out.buchi = TargetSet::of(out.game.size(), buchi_ids);
  return out;
}

Config Stage3Parity::state_of(Config q2, int i, int fresh) const {
  auto it = index.find({q2, i, fresh});
  return it == index.end() ? -1 : it->second;
}

Stage3Parity buchi_and_parity_to_parity(const StochasticGame& game, const TargetSet& buchi,
                                        const ParityObjective& alpha) {
  if (!game.is_nonstochastic())
    throw std::invalid_argument("buchi_and_parity_to_parity requires a non-stochastic game");
  int d = alpha.index();

  Stage3Parity out;
  out.seed = d;
  out.game.name = game.name + ".parity";
  out.game.prio_sure = std::vector<int>();
  out.entry.assign(static_cast<size_t>(game.size()), -1);

  auto mon_read = [&](int i_prev, Config q2) -> std::pair<int, int> {
    int a = alpha.at(q2);
    int i, fresh;
    if (buchi.contains(q2) || a < i_prev) {
      i = a;
      fresh = 1;
    } else {
      i = i_prev;
      fresh = 0;
    }
    if (i % 2 != 0) fresh = 1;  // odd values: signal and stale coincide
    return {i, fresh};
  };

  struct Pending {
    Config q2;
    int i, fresh;
  };
  std::vector<Pending> todo;
  auto intern = [&](Config q2, int i, int fresh) {
    auto [it, fresh_entry] = out.index.try_emplace({q2, i, fresh}, out.game.size());
    if (fresh_entry) {
      Config id = out.game.add_config(game.owner[static_cast<size_t>(q2)],
                                      base_label(game, q2) + ".m" + std::to_string(i) +
                                          (fresh ? "f" : "s"));
      (void)id;
      out.game.prio_sure->back() = fresh ? i : i + 1;
      out.origin.push_back(q2);
      out.monitor_value.push_back(i);
      out.monitor_fresh.push_back(static_cast<char>(fresh));
      out.annot.push_back("mon" + std::to_string(i) + (fresh ? "f" : "s"));
      todo.push_back({q2, i, fresh});
    }
    return it->second;
  };

  for (Config q2 = 0; q2 < game.size(); ++q2) {
    auto [i, fr] = mon_read(out.seed, q2);
    out.entry[static_cast<size_t>(q2)] = intern(q2, i, fr);
  }
  for (size_t k = 0; k < todo.size(); ++k) {
    auto [q2, i, fresh] = todo[k];
    Config s = out.index.at({q2, i, fresh});
    for (Config t : game.succ(q2)) {
      auto [i2, f2] = mon_read(i, t);
      out.game.add_edge(s, intern(t, i2, f2));
    }
  }
  if (game.init) out.game.init = out.entry[static_cast<size_t>(*game.init)];
  out.objective = ParityObjective{*out.game.prio_sure};
  return out;
}

namespace {

// Simulation-based pull-back. A memory value is FRESH or (mode, ib, v):
// mode = original copy (-1) or a restricted-copy value, ib = monitor value
// before reading v's stage-2 entry image, v = the current configuration.
// Outputs and updates replay the solved parity game at exact product states,
// choosing the paper's virtual gadget path per probabilistic outcome.
class MdpPullBack {
 public:
  MdpPullBack(const StochasticGame& game, const CombinedObjective& w, const Stage1Buchi& s1,
              const Stage2ConjGame& s2, const Stage3Parity& s3, const ParitySolution& ps)
      : game_(game), w_(w), s1_(s1), s2_(s2), s3_(s3), ps_(ps) {
    n_ = game.size();
    mems_.push_back({-2, -1, -1});  // FRESH
  }

  FiniteMemoryStrategy build() {
    std::vector<std::vector<int>> update_rows;
    std::vector<std::vector<Config>> output_rows;
    for (size_t m = 0; m < mems_.size(); ++m) {
      std::vector<int> urow(static_cast<size_t>(n_));
      std::vector<Config> orow(static_cast<size_t>(n_), -1);
      for (Config w = 0; w < n_; ++w) {
        urow[static_cast<size_t>(w)] = update_value(mems_[m], w);
        if (game_.owner[static_cast<size_t>(w)] == Owner::P0) orow[static_cast<size_t>(w)] = output_value(mems_[m], w);
      }
      update_rows.push_back(std::move(urow));
      output_rows.push_back(std::move(orow));
    }
    FiniteMemoryStrategy fm;
    fm.name = game_.name + ".sas.p0";
    fm.player = 0;
    fm.memory_size = static_cast<int>(mems_.size());
    fm.init_mem = 0;
    fm.update = std::move(update_rows);
    fm.output = std::move(output_rows);
    return minimize_strategy(game_, fm);
  }

 private:
  struct Mem {
    int mode;  // -2 FRESH, -1 original copy, >= 0 restricted copy value
    int ib;    // monitor value before the entry read
    Config v;  // current configuration
  };

  int intern(int mode, int ib, Config v) {
    auto [it, fresh] = ids_.try_emplace(std::tuple{mode, ib, v}, static_cast<int>(mems_.size()));
    if (fresh) mems_.push_back({mode, ib, v});
    return it->second;
  }

  int copy_pos(int c) const {
    for (size_t i = 0; i < s1_.copy_values.size(); ++i)
      if (s1_.copy_values[i] == c) return static_cast<int>(i);
    return -1;
  }

  // stage-1 config representing v in the given mode
  Config stage1_image(int mode, Config v) const {
    if (mode < 0) return s1_.entry[static_cast<size_t>(v)];
    int pos = copy_pos(mode);
    return s1_.copy_of[static_cast<size_t>(v)][static_cast<size_t>(pos)];
  }

  // interpretation of a stage-1 config as (mode, original config); tilde
  // configs report the original-copy mode
  std::pair<int, Config> stage1_meaning(Config q1) const {
    Config orig = s1_.origin[static_cast<size_t>(q1)];
    const std::string& a = s1_.annot[static_cast<size_t>(q1)];
    if (a == "orig" || a == "tilde") return {-1, orig};
    if (a.rfind("copy", 0) == 0) return {std::stoi(a.substr(4)), orig};
    return {-1, -1};  // sink
  }

  Config sigma3(Config q2, int i, int fresh) const {
    Config s = s3_.state_of(q2, i, fresh);
    if (s < 0) return -1;
    auto it = ps_.strat0.choice.find(s);
    if (it == ps_.strat0.choice.end()) return -1;
    return s3_.origin[static_cast<size_t>(it->second)];  // stage-2 config
  }

  std::pair<int, int> mon_read(int i_prev, Config q2) const {
    int a = s2_.sure.at(q2);
    int i, fresh;
    if (s2_.buchi.contains(q2) || a < i_prev) {
      i = a;
      fresh = 1;
    } else {
      i = i_prev;
      fresh = 0;
    }
    if (i % 2 != 0) fresh = 1;
    return {i, fresh};
  }

  // Read v's entry image from monitor value ib; returns (q2, i, fresh).
  std::tuple<Config, int, int> read_entry(int mode, int ib, Config v) const {
    Config q1 = stage1_image(mode, v);
    Config q2 = s2_.entry[static_cast<size_t>(q1)];
    auto [i, fr] = mon_read(ib, q2);
    return {q2, i, fr};
  }

  // Monitor value после traversing the gadget of random stage-1 config q1 with
  // outcome w (an original-game config); follows the minimal-odd-choice rule.
  int gadget_exit(int mode, Config q1, int i_enter, Config w) const {
    Config t0 = s2_.tilde0[static_cast<size_t>(q1)];
    Config h0 = s2_.hat0[static_cast<size_t>(q1)];
    Config t2 = s2_.tilde2[static_cast<size_t>(q1)];
    Config h1 = s2_.hat1[static_cast<size_t>(q1)];
    if (t2 >= 0) {
      // Player 0 resolves through hat1 when the intended successor comes up
      auto [i_t2, f_t2] = mon_read(i_enter, t2);
      auto [i_h1, f_h1] = mon_read(i_t2, h1);
      Config q2star = sigma3(h1, i_h1, f_h1);
      if (q2star >= 0) {
        Config q1star = s2_.origin[static_cast<size_t>(q2star)];
        auto [m_star, w_star] = stage1_meaning(q1star);
        (void)m_star;
        if (w_star == w) return i_h1;
      }
    }
    auto [i_t0, f_t0] = mon_read(i_enter, t0);
    auto [i_h0, f_h0] = mon_read(i_t0, h0);
    (void)f_t0;
    (void)f_h0;
    return i_h0;
  }

  // Advance from configuration v (memory m) to outcome w; returns new memory.
  int update_value(const Mem& m, Config w) {
    if (m.mode == -2) return intern(-1, s3_.seed, w);  // restart the play at w
    auto [q2, ia, fr] = read_entry(m.mode, m.ib, m.v);
    (void)q2;
    (void)fr;
    int mode = m.mode;
    int i = ia;
    if (game_.owner[static_cast<size_t>(m.v)] == Owner::Random)
      i = gadget_exit(mode, stage1_image(mode, m.v), i, w);
    if (mode < 0) {
      // original copy: pass through the tilde choice point of w
      Config t1 = s1_.tilde_of[static_cast<size_t>(w)];
      Config t2cfg = s2_.entry[static_cast<size_t>(t1)];
      auto [i_t, f_t] = mon_read(i, t2cfg);
      Config choice = sigma3(t2cfg, i_t, f_t);
      int new_mode = -1;
      if (choice >= 0) {
        Config q1c = s2_.origin[static_cast<size_t>(choice)];
        auto [cm, cv] = stage1_meaning(q1c);
        if (cv == w) new_mode = cm;  // stays -1 or jumps to a copy
      }
      return intern(new_mode, i_t, w);
    }
    return intern(mode, i, w);
  }

  Config output_value(const Mem& m, Config v) {
    int mode = m.mode == -2 ? -1 : m.mode;
    int ib = m.mode == -2 ? s3_.seed : m.ib;
    if (m.mode != -2 && m.v != v) return game_.succ(v).front();  // unreachable pairing
    auto [q2, i, fr] = read_entry(mode, ib, v);
    Config choice = sigma3(q2, i, fr);
    if (choice < 0) return game_.succ(v).front();
    Config q1c = s2_.origin[static_cast<size_t>(choice)];
    auto [cm, cv] = stage1_meaning(q1c);
    (void)cm;
    const auto& succ = game_.succ(v);
    if (cv >= 0 && std::find(succ.begin(), succ.end(), cv) != succ.end()) return cv;
    return succ.front();
  }

  const StochasticGame& game_;
  const CombinedObjective& w_;
  const Stage1Buchi& s1_;
  const Stage2ConjGame& s2_;
  const Stage3Parity& s3_;
  const ParitySolution& ps_;
  int n_ = 0;
  std::vector<Mem> mems_;
  std::map<std::tuple<int, int, Config>, int> ids_;
};

}  // namespace

SasMdpSolution solve_sas_mdp_fm(const StochasticGame& mdp, const CombinedObjective& w,
                                const OracleLimits& limits) {
  {
    auto errs = validate(mdp);
    if (!errs.empty()) throw std::invalid_argument("solve_sas_mdp_fm: " + errs.front());
    if (!mdp.is_mdp()) throw std::invalid_argument("solve_sas_mdp_fm requires an MDP");
  }
  Stage1Buchi s1 = as_parity_to_buchi(mdp, w);
  Stage2ConjGame s2 = buchi_mdp_to_conj_game(s1.mdp, s1.sure, s1.buchi);
  Stage3Parity s3 = buchi_and_parity_to_parity(s2.game, s2.buchi, s2.sure);
  ParitySolution ps = solve_parity(s3.game, s3.objective);

  SasMdpSolution out;
  out.w0.assign(static_cast<size_t>(mdp.size()), 0);
  for (Config v = 0; v < mdp.size(); ++v) {
    Config q1 = s1.entry[static_cast<size_t>(v)];
    Config q2 = s2.entry[static_cast<size_t>(q1)];
    Config q3 = s3.entry[static_cast<size_t>(q2)];
    out.w0[static_cast<size_t>(v)] = ps.w0[static_cast<size_t>(q3)];
  }

  MdpPullBack pull(mdp, w, s1, s2, s3, ps);
  out.strategy = pull.build();
  for (Config v = 0; v < mdp.size(); ++v)
    if (out.w0[static_cast<size_t>(v)] &&
        !verify_sas_strategy(mdp, w, out.strategy, v, limits).ok())
      throw std::runtime_error("solve_sas_mdp_fm: internal verification failure at config " +
                               std::to_string(v));

  out.trace.stages.push_back({"buchi", s1.mdp, s1.origin, s1.annot});
  out.trace.stages.push_back({"gadget", s2.game, s2.origin, s2.annot});
  out.trace.stages.push_back({"monitor", s3.game, s3.origin, s3.annot});
  return out;
}

}  // namespace sgsolve
