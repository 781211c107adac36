#pragma once

#include <set>
#include <utility>
#include <vector>

#include "uag/pair_automaton.hpp"

namespace uag {

// One-loop automaton over unary pairs in standard form.  The Pair spine is a
// tail of length `loop_constant` followed by a cycle of the same length, and
// the accepted language is described purely by finals (pos, d), each meaning
// "the undirected edge {n, n+d} for every n at that spine position":
//
//   tail_finals: (pos, d) with 0 <= pos < p        -> edge {pos, pos+d}
//   loop_finals: (v, d)   with 0 <= v < p          -> edges {n, n+d} for all
//                                                     n >= p with n ≡ v (mod p)
//
// Every final obeys 1 <= d and pos + d <= 2p - 1, so an edge never spans more
// than one full period ahead of its base position.
struct OneLoopStandardAutomaton {
  int loop_constant = 1;
  std::set<std::pair<int, int>> tail_finals;
  std::set<std::pair<int, int>> loop_finals;

  // Throws std::invalid_argument when a final is out of range.
  void check_valid() const;

  // Is {n, m} an edge?  Symmetric; false on the diagonal and negatives.
  bool has_edge(long long n, long long m) const;

  // All edges {a, b} with a < b <= max_vertex, lexicographically sorted.
  std::vector<std::pair<long long, long long>> edges_up_to(
      long long max_vertex) const;
};

// Validating constructor.
OneLoopStandardAutomaton make_standard(int loop_constant,
                                       std::set<std::pair<int, int>> tail_finals,
                                       std::set<std::pair<int, int>> loop_finals);

// Structural equality: same loop constant and identical final sets.
bool equal_structure(const OneLoopStandardAutomaton& a,
                     const OneLoopStandardAutomaton& b);

// Re-expresses the same edge set with loop constant `target_loop_constant`,
// which must be a positive multiple of a.loop_constant.
OneLoopStandardAutomaton repad(const OneLoopStandardAutomaton& a,
                               int target_loop_constant);

// Edge-set union / intersection, built at loop constant p_a * p_b.
OneLoopStandardAutomaton union_graph(const OneLoopStandardAutomaton& a,
                                     const OneLoopStandardAutomaton& b);
OneLoopStandardAutomaton intersection_graph(const OneLoopStandardAutomaton& a,
                                            const OneLoopStandardAutomaton& b);

// Flips every legal final (pos, d) with 1 <= d <= 2p - 1 - pos, in both final
// sets.  Involutive; complements the edge set within the representable band.
OneLoopStandardAutomaton band_complement(const OneLoopStandardAutomaton& a);

// Converts a one-loop automaton (see is_one_loop) to standard form.  The loop
// constant is the least multiple of the Pair-cycle length that covers both the
// Pair tail and the longest Left/Right chain.  Treats acceptance of (1^n, 1^m)
// and (1^m, 1^n) alike as the edge {n, m}; diagonal acceptance is dropped.
// Throws std::invalid_argument when the automaton is not one-loop.
OneLoopStandardAutomaton standardize_one_loop(const UnaryPairAutomaton& a);

// Expands standard form back into an explicit automaton that accepts the
// convolution of (1^n, 1^m) in both orders for every edge {n, m}.
UnaryPairAutomaton to_pair_automaton(const OneLoopStandardAutomaton& a);

}  // namespace uag
