#pragma once

#include <stdexcept>
#include <string>

#include "sgsolve/game.hpp"
#include "sgsolve/strategy.hpp"

namespace sgsolve {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

// Line-oriented text format, '#' comments:
//   game <name>
//   config <id> owner=<p0|p1|rand> [prio_sure=<nat>] [prio_sec=<nat>] [label=<string>]
//   edge <src> <dst> [prob=<num>/<den>]
//   init <id>
// Config ids must form 0..n-1. Every edge of a Random config carries a prob;
// probs on other configs are rejected. Parsed games must validate.
StochasticGame parse_game(const std::string& text);
std::string serialize_game(const StochasticGame& game);

// Strategy text format:
//   strategy <name> player=<0|1> memory=<m>
//   initmem <m0>
//   out <mem> <config> -> <successor>
//   upd <mem> <config> -> <mem'>
// Unlisted upd entries default to the identity update.
FiniteMemoryStrategy parse_strategy(const std::string& text);
std::string serialize_strategy(const FiniteMemoryStrategy& strategy);

}  // namespace sgsolve
