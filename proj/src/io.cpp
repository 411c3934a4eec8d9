#include "sgsolve/io.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sgsolve {
namespace {

std::vector<std::string> tokens(const std::string& line) {
  std::string body = line.substr(0, line.find('#'));
  std::istringstream in(body);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

int parse_nat(const std::string& t, int line, const std::string& what) {
  try {
    size_t pos = 0;
    int v = std::stoi(t, &pos);
    if (pos != t.size() || v < 0) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(line, "bad " + what + " '" + t + "'");
  }
}

// key=value with optional value; label may contain no spaces by format design
std::pair<std::string, std::string> split_kv(const std::string& t, int line) {
  auto eq = t.find('=');
  if (eq == std::string::npos) throw ParseError(line, "expected key=value, got '" + t + "'");
  return {t.substr(0, eq), t.substr(eq + 1)};
}

}  // namespace

StochasticGame parse_game(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;

  struct RawConfig {
    Owner owner;
    std::optional<int> prio_sure, prio_sec;
    std::string label;
    int line;
  };
  std::map<int, RawConfig> configs;
  struct RawEdge {
    int src, dst, line;
    std::optional<Rational> prob;
  };
  std::vector<RawEdge> edges;
  std::optional<int> init;
  std::string name = "game";
  bool saw_game = false;

  while (std::getline(in, line)) {
    ++lineno;
    auto ts = tokens(line);
    if (ts.empty()) continue;
    const std::string& kw = ts[0];
    if (kw == "game") {
      if (ts.size() != 2) throw ParseError(lineno, "usage: game <name>");
      name = ts[1];
      saw_game = true;
    } else if (kw == "config") {
      if (ts.size() < 3) throw ParseError(lineno, "usage: config <id> owner=<p0|p1|rand> ...");
      int id = parse_nat(ts[1], lineno, "config id");
      if (configs.count(id)) throw ParseError(lineno, "duplicate config " + std::to_string(id));
      RawConfig rc{Owner::P0, std::nullopt, std::nullopt, "", lineno};
      bool saw_owner = false;
      for (size_t i = 2; i < ts.size(); ++i) {
        auto [k, v] = split_kv(ts[i], lineno);
        if (k == "owner") {
          saw_owner = true;
          if (v == "p0")
            rc.owner = Owner::P0;
          else if (v == "p1")
            rc.owner = Owner::P1;
          else if (v == "rand")
            rc.owner = Owner::Random;
          else
            throw ParseError(lineno, "bad owner '" + v + "'");
        } else if (k == "prio_sure") {
          rc.prio_sure = parse_nat(v, lineno, "prio_sure");
        } else if (k == "prio_sec") {
          rc.prio_sec = parse_nat(v, lineno, "prio_sec");
        } else if (k == "label") {
          rc.label = v;
        } else {
          throw ParseError(lineno, "unknown config attribute '" + k + "'");
        }
      }
      if (!saw_owner) throw ParseError(lineno, "config without owner");
      configs.emplace(id, rc);
    } else if (kw == "edge") {
      if (ts.size() < 3 || ts.size() > 4) throw ParseError(lineno, "usage: edge <src> <dst> [prob=..]");
      RawEdge e{parse_nat(ts[1], lineno, "edge source"), parse_nat(ts[2], lineno, "edge target"),
                lineno, std::nullopt};
      if (ts.size() == 4) {
        auto [k, v] = split_kv(ts[3], lineno);
        if (k != "prob") throw ParseError(lineno, "unknown edge attribute '" + k + "'");
        try {
          e.prob = parse_rational(v);
        } catch (const std::exception& ex) {
          throw ParseError(lineno, ex.what());
        }
      }
      edges.push_back(e);
    } else if (kw == "init") {
      if (ts.size() != 2) throw ParseError(lineno, "usage: init <id>");
      init = parse_nat(ts[1], lineno, "init id");
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_game) throw ParseError(1, "missing 'game <name>' header");
  int n = static_cast<int>(configs.size());
  for (const auto& [id, rc] : configs)
    if (id >= n) throw ParseError(rc.line, "config ids must form 0..n-1, got " + std::to_string(id));

  StochasticGame g;
  g.name = name;
  g.owner.resize(static_cast<size_t>(n));
  g.edges.resize(static_cast<size_t>(n));
  g.prob.resize(static_cast<size_t>(n));
  g.labels.resize(static_cast<size_t>(n));
  bool any_sure = false, any_sec = false;
  for (const auto& [id, rc] : configs) {
    any_sure |= rc.prio_sure.has_value();
    any_sec |= rc.prio_sec.has_value();
  }
  if (any_sure) g.prio_sure = std::vector<int>(static_cast<size_t>(n), 0);
  if (any_sec) g.prio_sec = std::vector<int>(static_cast<size_t>(n), 0);
  for (const auto& [id, rc] : configs) {
    g.owner[static_cast<size_t>(id)] = rc.owner;
    g.labels[static_cast<size_t>(id)] = rc.label;
    if (rc.prio_sure) (*g.prio_sure)[static_cast<size_t>(id)] = *rc.prio_sure;
    if (rc.prio_sec) (*g.prio_sec)[static_cast<size_t>(id)] = *rc.prio_sec;
  }
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= n) throw ParseError(e.line, "edge source out of range");
    if (e.dst < 0 || e.dst >= n) throw ParseError(e.line, "edge target out of range");
    bool rand_src = g.owner[static_cast<size_t>(e.src)] == Owner::Random;
    if (e.prob && !rand_src) throw ParseError(e.line, "prob on non-random source");
    if (!e.prob && rand_src) throw ParseError(e.line, "missing prob on random edge");
    g.edges[static_cast<size_t>(e.src)].push_back(e.dst);
    if (e.prob) g.prob[static_cast<size_t>(e.src)][e.dst] = *e.prob;
  }
  if (init) {
    if (*init < 0 || *init >= n) throw ParseError(lineno, "init out of range");
    g.init = *init;
  }
  auto errs = validate(g);
  if (!errs.empty()) throw ParseError(lineno, "validation failed: " + errs.front());
  return g;
}

std::string serialize_game(const StochasticGame& g) {
  std::ostringstream out;
  out << "game " << g.name << "\n";
  for (Config v = 0; v < g.size(); ++v) {
    out << "config " << v << " owner=";
    switch (g.owner[static_cast<size_t>(v)]) {
      case Owner::P0: out << "p0"; break;
      case Owner::P1: out << "p1"; break;
      case Owner::Random: out << "rand"; break;
    }
    if (g.prio_sure) out << " prio_sure=" << (*g.prio_sure)[static_cast<size_t>(v)];
    if (g.prio_sec) out << " prio_sec=" << (*g.prio_sec)[static_cast<size_t>(v)];
    if (!g.labels[static_cast<size_t>(v)].empty()) out << " label=" << g.labels[static_cast<size_t>(v)];
    out << "\n";
  }
  for (Config v = 0; v < g.size(); ++v) {
    std::vector<Config> succ = g.succ(v);
    std::sort(succ.begin(), succ.end());
    for (Config w : succ) {
      out << "edge " << v << " " << w;
      if (g.owner[static_cast<size_t>(v)] == Owner::Random)
        out << " prob=" << rational_to_string(g.prob[static_cast<size_t>(v)].at(w));
      out << "\n";
    }
  }
  if (g.init) out << "init " << *g.init << "\n";
  return out.str();
}

FiniteMemoryStrategy parse_strategy(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  FiniteMemoryStrategy s;
  bool saw_header = false;
  int max_config = -1;
  struct Entry {
    int mem, config, value, line;
  };
  std::vector<Entry> outs, upds;
  while (std::getline(in, line)) {
    ++lineno;
    auto ts = tokens(line);
    if (ts.empty()) continue;
    const std::string& kw = ts[0];
    if (kw == "strategy") {
      if (ts.size() != 4) throw ParseError(lineno, "usage: strategy <name> player=<0|1> memory=<m>");
      s.name = ts[1];
      for (size_t i = 2; i < 4; ++i) {
        auto [k, v] = split_kv(ts[i], lineno);
        if (k == "player")
          s.player = parse_nat(v, lineno, "player");
        else if (k == "memory")
          s.memory_size = parse_nat(v, lineno, "memory");
        else
          throw ParseError(lineno, "unknown strategy attribute '" + k + "'");
      }
      if (s.player != 0 && s.player != 1) throw ParseError(lineno, "player must be 0 or 1");
      if (s.memory_size <= 0) throw ParseError(lineno, "memory must be positive");
      saw_header = true;
    } else if (kw == "initmem") {
      if (ts.size() != 2) throw ParseError(lineno, "usage: initmem <m0>");
      s.init_mem = parse_nat(ts[1], lineno, "initmem");
    } else if (kw == "out" || kw == "upd") {
      if (ts.size() != 5 || ts[3] != "->")
        throw ParseError(lineno, "usage: " + kw + " <mem> <config> -> <value>");
      Entry e{parse_nat(ts[1], lineno, "memory value"), parse_nat(ts[2], lineno, "config"),
              parse_nat(ts[4], lineno, "target"), lineno};
      max_config = std::max(max_config, e.config);
      if (kw == "out") {
        max_config = std::max(max_config, e.value);
        outs.push_back(e);
      } else {
        upds.push_back(e);
      }
    } else {
      throw ParseError(lineno, "unknown directive '" + kw + "'");
    }
  }
  if (!saw_header) throw ParseError(1, "missing 'strategy' header");
  if (s.init_mem >= s.memory_size) throw ParseError(1, "initmem out of range");
  int n = max_config + 1;
  s.update.assign(static_cast<size_t>(s.memory_size), std::vector<int>(static_cast<size_t>(n), 0));
  for (int m = 0; m < s.memory_size; ++m)
    for (int v = 0; v < n; ++v) s.update[static_cast<size_t>(m)][static_cast<size_t>(v)] = m;
  s.output.assign(static_cast<size_t>(s.memory_size), std::vector<Config>(static_cast<size_t>(n), -1));
  for (const auto& e : upds) {
    if (e.mem >= s.memory_size || e.value >= s.memory_size)
      throw ParseError(e.line, "memory value out of range");
    s.update[static_cast<size_t>(e.mem)][static_cast<size_t>(e.config)] = e.value;
  }
  for (const auto& e : outs) {
    if (e.mem >= s.memory_size) throw ParseError(e.line, "memory value out of range");
    s.output[static_cast<size_t>(e.mem)][static_cast<size_t>(e.config)] = e.value;
  }
  return s;
}

std::string serialize_strategy(const FiniteMemoryStrategy& s) {
  std::ostringstream out;
  out << "strategy " << s.name << " player=" << s.player << " memory=" << s.memory_size << "\n";
  out << "initmem " << s.init_mem << "\n";
  int n = s.output.empty() ? 0 : static_cast<int>(s.output[0].size());
  for (int m = 0; m < s.memory_size; ++m)
    for (int v = 0; v < n; ++v)
      if (s.out(m, v) >= 0) out << "out " << m << " " << v << " -> " << s.out(m, v) << "\n";
  for (int m = 0; m < s.memory_size; ++m)
    for (int v = 0; v < n; ++v)
      if (s.upd(m, v) != m) out << "upd " << m << " " << v << " -> " << s.upd(m, v) << "\n";
  return out.str();
}

}  // namespace sgsolve
