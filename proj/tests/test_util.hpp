#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "uag/pair_automaton.hpp"
#include "uag/rng.hpp"

namespace testutil {

inline std::string read_data_file(const std::string& name) {
  std::ifstream in(std::string(UAG_TEST_DATA_DIR) + "/" + name,
                   std::ios::binary);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Random automaton with a single all-Pair cycle, an optional Pair tail into
// it, and per spine state two side chains (one Left, one Right) accepting at
// the same depths.  Spine states never accept.  Such automata recognize
// exactly the symmetric, diagonal-free relations the standard form can
// express, so rewriting them in standard form preserves the language.
inline uag::UnaryPairAutomaton random_symmetric_one_loop(uag::Mcg64& rng) {
  uag::UnaryPairAutomaton a;
  auto add_state = [&](const std::string& name, bool accepting) {
    a.names.push_back(name);
    a.delta.push_back({-1, -1, -1});
    a.accepting.push_back(accepting);
    return static_cast<int>(a.names.size()) - 1;
  };
  int tail = static_cast<int>(rng.uniform() * 3);       // 0..2
  int cycle = 1 + static_cast<int>(rng.uniform() * 3);  // 1..3
  std::vector<int> spine;
  for (int i = 0; i < tail; ++i)
    spine.push_back(add_state("t" + std::to_string(i), false));
  for (int i = 0; i < cycle; ++i)
    spine.push_back(add_state("c" + std::to_string(i), false));
  for (int i = 0; i + 1 < tail; ++i) a.delta[spine[i]][0] = spine[i + 1];
  if (tail > 0) a.delta[spine[tail - 1]][0] = spine[tail];
  for (int i = 0; i < cycle; ++i)
    a.delta[spine[tail + i]][0] = spine[tail + (i + 1) % cycle];
  a.initial = spine[0];

  int budget = 12 - static_cast<int>(a.names.size());
  for (int s : spine) {
    int len = static_cast<int>(rng.uniform() * 3);  // 0..2
    if (2 * len > budget) len = budget / 2;
    budget -= 2 * len;
    int prev_left = s;
    int prev_right = s;
    for (int d = 1; d <= len; ++d) {
      bool accept = rng.uniform() < 0.5;
      int left = add_state(a.names[s] + "l" + std::to_string(d), accept);
      int right = add_state(a.names[s] + "r" + std::to_string(d), accept);
      a.delta[prev_left][static_cast<int>(uag::PairSymbol::Left)] = left;
      a.delta[prev_right][static_cast<int>(uag::PairSymbol::Right)] = right;
      prev_left = left;
      prev_right = right;
    }
  }
  a.check_valid();
  return a;
}

}  // namespace testutil
