#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace uag {

// Tape symbols of a deterministic two-tape automaton over a one-letter
// alphabet.  Pair advances both tapes, Left only the first (the second has
// ended), Right only the second.
enum class PairSymbol : int { Pair = 0, Left = 1, Right = 2 };

inline constexpr int kNumSymbols = 3;

// Text token for a symbol: "11", "1_", "_1".
const char* symbol_token(PairSymbol s);

struct ParseError : std::runtime_error {
  ParseError(const std::string& message, int line, int column);
  int line;
  int column;
};

// Deterministic automaton reading the convolution of two unary words.  Every
// state is reachable from `initial`; once a Left (resp. Right) transition has
// been taken, only Left (resp. Right) transitions are defined.
struct UnaryPairAutomaton {
  std::vector<std::string> names;
  std::vector<std::array<int, kNumSymbols>> delta;  // -1 where undefined
  std::vector<bool> accepting;
  int initial = 0;

  int num_states() const { return static_cast<int>(names.size()); }
  int next(int state, PairSymbol sym) const {
    return delta[state][static_cast<int>(sym)];
  }

  // Does the automaton accept the convolution of (1^n, 1^m)?
  bool accepts_pair(long long n, long long m) const;

  // Throws std::invalid_argument when the structural invariants fail
  // (dangling targets, unreachable states, phase violations).
  void check_valid() const;
};

// Reads the textual format:
//
//   states: q0 q1 ...
//   initial: q0
//   final: q2 ...
//   trans: q0 11 q1
//
// `#` starts a comment.  Unreachable states are pruned.  Nondeterminism,
// duplicate transitions, unknown names and phase violations are rejected
// with a ParseError carrying line and column.
UnaryPairAutomaton parse_automaton(std::string_view text);

// Canonical serialization: states in breadth-first order from the initial
// state (symbol order Pair, Left, Right), then one `trans:` line per defined
// transition in that same order.  Re-parsing yields an isomorphic automaton
// and serialization is idempotent.
std::string serialize_automaton(const UnaryPairAutomaton& a);

// Exact language equivalence via the product construction.
bool dfa_equivalent(const UnaryPairAutomaton& a, const UnaryPairAutomaton& b);

// True iff the transition diagram contains exactly one cycle and that cycle
// consists of Pair transitions.
bool is_one_loop(const UnaryPairAutomaton& a);

}  // namespace uag
