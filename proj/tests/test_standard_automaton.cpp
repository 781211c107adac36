#include <set>
#include <utility>

#include "doctest.h"
#include "test_util.hpp"
#include "uag/rng.hpp"
#include "uag/standard_automaton.hpp"

using namespace uag;

TEST_CASE("standard form: edge semantics") {
  // p = 2; tail edge {0, 1}; loop edges {n, n+3} for even n >= 2 and
  // {n, n+1} for odd n >= 3.
  OneLoopStandardAutomaton a =
      make_standard(2, {{0, 1}}, {{0, 3}, {1, 1}});
  CHECK(a.has_edge(0, 1));
  CHECK(a.has_edge(1, 0));  // symmetric
  CHECK_FALSE(a.has_edge(0, 2));
  CHECK_FALSE(a.has_edge(1, 2));
  CHECK(a.has_edge(2, 5));
  CHECK(a.has_edge(4, 7));
  CHECK_FALSE(a.has_edge(3, 6));
  CHECK(a.has_edge(3, 4));
  CHECK(a.has_edge(5, 6));
  CHECK_FALSE(a.has_edge(2, 2));
  CHECK_FALSE(a.has_edge(-1, 2));

  CHECK(a.edges_up_to(5) ==
        std::vector<std::pair<long long, long long>>{
            {0, 1}, {2, 5}, {3, 4}});
}

TEST_CASE("standard form: finals are validated") {
  CHECK_THROWS_AS(make_standard(0, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_standard(2, {{0, 0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_standard(2, {{2, 1}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_standard(2, {{1, 3}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make_standard(2, {}, {{0, 4}}), std::invalid_argument);
  CHECK_NOTHROW(make_standard(2, {{0, 3}}, {{1, 2}}));
}

TEST_CASE("standard form: repad preserves the edge set") {
  OneLoopStandardAutomaton a = make_standard(2, {{0, 1}}, {{0, 3}, {1, 1}});
  CHECK(equal_structure(repad(a, 2), a));
  CHECK_THROWS_AS(repad(a, 3), std::invalid_argument);

  OneLoopStandardAutomaton b = repad(a, 6);
  CHECK(b.loop_constant == 6);
  for (long long n = 0; n < 40; ++n)
    for (long long m = n + 1; m < 40; ++m)
      CHECK(a.has_edge(n, m) == b.has_edge(n, m));
}

TEST_CASE("standard form: union and intersection") {
  OneLoopStandardAutomaton a = make_standard(2, {}, {{0, 2}});
  OneLoopStandardAutomaton b = make_standard(3, {{0, 1}}, {{1, 2}});
  OneLoopStandardAutomaton u = union_graph(a, b);
  OneLoopStandardAutomaton i = intersection_graph(a, b);
  CHECK(u.loop_constant == 6);
  CHECK(i.loop_constant == 6);
  for (long long n = 0; n < 40; ++n)
    for (long long m = n + 1; m < 40; ++m) {
      CHECK(u.has_edge(n, m) == (a.has_edge(n, m) || b.has_edge(n, m)));
      CHECK(i.has_edge(n, m) == (a.has_edge(n, m) && b.has_edge(n, m)));
    }
}

TEST_CASE("standard form: band complement is an involution") {
  OneLoopStandardAutomaton a = make_standard(3, {{0, 2}, {1, 1}}, {{2, 3}});
  OneLoopStandardAutomaton c = band_complement(a);
  CHECK(equal_structure(band_complement(c), a));
  int p = a.loop_constant;
  // Inside the band every edge flips; beyond it both graphs are empty.
  for (int pos = 0; pos < p; ++pos)
    for (int d = 1; d <= 2 * p - 1 - pos; ++d) {
      CHECK(c.has_edge(pos, pos + d) != a.has_edge(pos, pos + d));
      CHECK(c.has_edge(p + pos, p + pos + d) != a.has_edge(p + pos, p + pos + d));
    }
  CHECK_FALSE(c.has_edge(0, 2 * p));
}

TEST_CASE("standard form: expansion accepts exactly the edge pairs") {
  OneLoopStandardAutomaton s = make_standard(2, {}, {{0, 3}, {1, 1}});
  UnaryPairAutomaton a = to_pair_automaton(s);
  CHECK(is_one_loop(a));
  for (long long n = 0; n < 12; ++n)
    for (long long m = 0; m < 12; ++m)
      CHECK(a.accepts_pair(n, m) == s.has_edge(n, m));
}

TEST_CASE("standardize: diagonal acceptance produces no finals") {
  UnaryPairAutomaton identity =
      parse_automaton(testutil::read_data_file("identity.upa"));
  OneLoopStandardAutomaton s = standardize_one_loop(identity);
  CHECK(s.loop_constant == 1);
  CHECK(s.tail_finals.empty());
  CHECK(s.loop_finals.empty());
}

TEST_CASE("standardize: cycle of three with chains of four") {
  // Pair cycle k0->k1->k2->k0; chains off k0 accept at depths 2 and 4, off k1
  // at depth 1.  The loop constant becomes lcm-style: the least multiple of 3
  // covering depth 4, which is 6.
  UnaryPairAutomaton a = parse_automaton(
      "states: k0 k1 k2 k0l1 k0l2 k0l3 k0l4 k0r1 k0r2 k0r3 k0r4 k1l1 k1r1\n"
      "initial: k0\n"
      "final: k0l2 k0l4 k0r2 k0r4 k1l1 k1r1\n"
      "trans: k0 11 k1\n"
      "trans: k1 11 k2\n"
      "trans: k2 11 k0\n"
      "trans: k0 1_ k0l1\n"
      "trans: k0l1 1_ k0l2\n"
      "trans: k0l2 1_ k0l3\n"
      "trans: k0l3 1_ k0l4\n"
      "trans: k0 _1 k0r1\n"
      "trans: k0r1 _1 k0r2\n"
      "trans: k0r2 _1 k0r3\n"
      "trans: k0r3 _1 k0r4\n"
      "trans: k1 1_ k1l1\n"
      "trans: k1 _1 k1r1\n");
  OneLoopStandardAutomaton s = standardize_one_loop(a);
  CHECK(s.loop_constant == 6);
  CHECK(s.tail_finals == std::set<std::pair<int, int>>{
                             {0, 2}, {0, 4}, {1, 1}, {3, 2}, {3, 4}, {4, 1}});
  CHECK(s.loop_finals == std::set<std::pair<int, int>>{
                             {0, 2}, {0, 4}, {1, 1}, {3, 2}, {3, 4}, {4, 1}});
  CHECK(dfa_equivalent(a, to_pair_automaton(s)));
}

TEST_CASE("standardize: non-one-loop automata are rejected") {
  UnaryPairAutomaton two_cycles = parse_automaton(
      "states: q0 q1\n"
      "initial: q0\n"
      "final: q1\n"
      "trans: q0 11 q0\n"
      "trans: q0 1_ q1\n"
      "trans: q1 1_ q1\n");
  CHECK_THROWS_AS(standardize_one_loop(two_cycles), std::invalid_argument);
}

TEST_CASE("standardize: fixed point when chains fit the cycle") {
  OneLoopStandardAutomaton s = make_standard(3, {{0, 1}}, {{1, 2}});
  CHECK(equal_structure(standardize_one_loop(to_pair_automaton(s)), s));
}

TEST_CASE("standardize: growing round-trip stays equivalent") {
  // Depth-3 chains over a 2-cycle force the loop constant up to 4.
  OneLoopStandardAutomaton s = make_standard(2, {}, {{0, 3}, {1, 1}});
  UnaryPairAutomaton a = to_pair_automaton(s);
  OneLoopStandardAutomaton t = standardize_one_loop(a);
  CHECK(t.loop_constant == 4);
  CHECK(equal_structure(t, repad(s, 4)));
  CHECK(dfa_equivalent(a, to_pair_automaton(t)));
}

TEST_CASE("standardize: language preserved on random symmetric automata") {
  Mcg64 rng(31337);
  for (int i = 0; i < 60; ++i) {
    UnaryPairAutomaton a = testutil::random_symmetric_one_loop(rng);
    OneLoopStandardAutomaton s = standardize_one_loop(a);
    CHECK(dfa_equivalent(a, to_pair_automaton(s)));
  }
}
