#include "sgsolve/chain.hpp"

#include <map>
#include <stdexcept>

namespace sgsolve {

MarkovChain product(const StochasticGame& game, const FiniteMemoryStrategy& sigma,
                    const MemorylessStrategy* pi, std::optional<Config> start) {
  if (!start) start = game.init;
  if (!start) throw std::invalid_argument("product: game has no initial configuration");
  if (sigma.player != 0) throw std::invalid_argument("product: sigma must be a Player-0 strategy");
  {
    auto errs = validate_strategy(game, sigma);
    if (!errs.empty()) throw std::invalid_argument("product: invalid sigma: " + errs.front());
  }

  MarkovChain chain;
  std::map<std::pair<int, Config>, int> index;
  auto intern = [&](int m, Config v) {
    auto [it, fresh] = index.try_emplace({m, v}, static_cast<int>(chain.states.size()));
    if (fresh) {
      chain.states.push_back({m, v});
      chain.trans.emplace_back();
    }
    return it->second;
  };
  chain.init_state = intern(sigma.init_mem, *start);
  for (int s = 0; s < static_cast<int>(chain.states.size()); ++s) {
    auto [m, v] = std::pair{chain.states[static_cast<size_t>(s)].mem,
                            chain.states[static_cast<size_t>(s)].config};
    auto step = [&](Config w, const Rational& p) {
      int t = intern(sigma.upd(m, w), w);
      chain.trans[static_cast<size_t>(s)].push_back({t, p});
    };
    switch (game.owner[static_cast<size_t>(v)]) {
      case Owner::P0:
        step(sigma.out(m, v), Rational(1));
        break;
      case Owner::P1: {
        if (!pi) throw std::invalid_argument("product: Player-1 strategy required");
        step(pi->at(v), Rational(1));
        break;
      }
      case Owner::Random:
        for (Config w : game.succ(v)) {
          const auto& pr = game.prob[static_cast<size_t>(v)];
          auto it = pr.find(w);
          if (it == pr.end()) throw std::invalid_argument("product: edge without probability");
          step(w, it->second);
        }
        break;
    }
  }
  return chain;
}

}  // namespace sgsolve
