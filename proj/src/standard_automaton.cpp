#include "uag/standard_automaton.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace uag {

void OneLoopStandardAutomaton::check_valid() const {
  int p = loop_constant;
  if (p < 1) throw std::invalid_argument("loop constant must be positive");
  auto check = [p](const std::set<std::pair<int, int>>& finals,
                   const char* which) {
    for (auto [pos, d] : finals) {
      if (pos < 0 || pos >= p)
        throw std::invalid_argument(std::string(which) +
                                    " final position out of [0, p)");
      if (d < 1 || pos + d > 2 * p - 1)
        throw std::invalid_argument(std::string(which) +
                                    " final depth out of [1, 2p-1-pos]");
    }
  };
  check(tail_finals, "tail");
  check(loop_finals, "loop");
}

bool OneLoopStandardAutomaton::has_edge(long long n, long long m) const {
  if (n < 0 || m < 0 || n == m) return false;
  long long lo = std::min(n, m);
  long long d = std::max(n, m) - lo;
  int p = loop_constant;
  if (d > 2 * p - 1) return false;
  if (lo < p)
    return tail_finals.count({static_cast<int>(lo), static_cast<int>(d)}) > 0;
  return loop_finals.count({static_cast<int>((lo - p) % p),
                            static_cast<int>(d)}) > 0;
}

std::vector<std::pair<long long, long long>>
OneLoopStandardAutomaton::edges_up_to(long long max_vertex) const {
  std::vector<std::pair<long long, long long>> out;
  for (long long a = 0; a <= max_vertex; ++a)
    for (long long b = a + 1; b <= max_vertex && b - a <= 2 * loop_constant - 1;
         ++b)
      if (has_edge(a, b)) out.emplace_back(a, b);
  return out;
}

OneLoopStandardAutomaton make_standard(
    int loop_constant, std::set<std::pair<int, int>> tail_finals,
    std::set<std::pair<int, int>> loop_finals) {
  OneLoopStandardAutomaton a;
  a.loop_constant = loop_constant;
  a.tail_finals = std::move(tail_finals);
  a.loop_finals = std::move(loop_finals);
  a.check_valid();
  return a;
}

bool equal_structure(const OneLoopStandardAutomaton& a,
                     const OneLoopStandardAutomaton& b) {
  return a.loop_constant == b.loop_constant && a.tail_finals == b.tail_finals &&
         a.loop_finals == b.loop_finals;
}

namespace {

// Rebuilds finals at loop constant target by evaluating a membership
// predicate over the whole representable band.
template <typename Pred>
OneLoopStandardAutomaton rebuild(int target, Pred edge) {
  OneLoopStandardAutomaton out;
  out.loop_constant = target;
  for (int pos = 0; pos < target; ++pos)
    for (int d = 1; pos + d <= 2 * target - 1; ++d)
      if (edge(static_cast<long long>(pos), static_cast<long long>(pos) + d))
        out.tail_finals.insert({pos, d});
  for (int v = 0; v < target; ++v)
    for (int d = 1; v + d <= 2 * target - 1; ++d) {
      long long n = static_cast<long long>(target) + v;
      if (edge(n, n + d)) out.loop_finals.insert({v, d});
    }
  out.check_valid();
  return out;
}

}  // namespace

OneLoopStandardAutomaton repad(const OneLoopStandardAutomaton& a,
                               int target_loop_constant) {
  a.check_valid();
  if (target_loop_constant < a.loop_constant ||
      target_loop_constant % a.loop_constant != 0)
    throw std::invalid_argument(
        "repad target must be a positive multiple of the loop constant");
  return rebuild(target_loop_constant,
                 [&](long long n, long long m) { return a.has_edge(n, m); });
}

OneLoopStandardAutomaton union_graph(const OneLoopStandardAutomaton& a,
                                     const OneLoopStandardAutomaton& b) {
  a.check_valid();
  b.check_valid();
  return rebuild(a.loop_constant * b.loop_constant,
                 [&](long long n, long long m) {
                   return a.has_edge(n, m) || b.has_edge(n, m);
                 });
}

OneLoopStandardAutomaton intersection_graph(const OneLoopStandardAutomaton& a,
                                            const OneLoopStandardAutomaton& b) {
  a.check_valid();
  b.check_valid();
  return rebuild(a.loop_constant * b.loop_constant,
                 [&](long long n, long long m) {
                   return a.has_edge(n, m) && b.has_edge(n, m);
                 });
}

OneLoopStandardAutomaton band_complement(const OneLoopStandardAutomaton& a) {
  a.check_valid();
  return rebuild(a.loop_constant,
                 [&](long long n, long long m) { return !a.has_edge(n, m); });
}

OneLoopStandardAutomaton standardize_one_loop(const UnaryPairAutomaton& a) {
  a.check_valid();
  if (!is_one_loop(a))
    throw std::invalid_argument("automaton is not one-loop");

  // Pair orbit from the initial state.  The unique cycle is Pair-labelled and
  // its states cannot be Left/Right targets, so the orbit always closes.
  int n = a.num_states();
  std::vector<int> first_seen(n, -1);
  std::vector<int> orbit;
  int q = a.initial;
  while (q >= 0 && first_seen[q] < 0) {
    first_seen[q] = static_cast<int>(orbit.size());
    orbit.push_back(q);
    q = a.next(q, PairSymbol::Pair);
  }
  if (q < 0)
    throw std::logic_error("Pair orbit of a one-loop automaton did not close");
  int tail_len = first_seen[q];
  int cycle_len = static_cast<int>(orbit.size()) - tail_len;

  // Longest Left/Right chain anywhere on the orbit.
  int longest = tail_len;
  for (int s : orbit) {
    for (PairSymbol sym : {PairSymbol::Left, PairSymbol::Right}) {
      int len = 0, r = a.next(s, sym);
      while (r >= 0) {
        ++len;
        if (len > n) throw std::logic_error("chain cycle in one-loop automaton");
        r = a.next(r, sym);
      }
      longest = std::max(longest, len);
    }
  }

  int need = std::max(longest, 1);
  int p = cycle_len * ((need + cycle_len - 1) / cycle_len);

  auto state_at = [&](int pos) {
    if (pos < tail_len) return orbit[pos];
    return orbit[tail_len + (pos - tail_len) % cycle_len];
  };

  // Depth-d acceptance in either direction means the edge {pos, pos+d}.
  auto read_finals = [&](int state, int pos,
                         std::set<std::pair<int, int>>& finals) {
    for (PairSymbol sym : {PairSymbol::Right, PairSymbol::Left}) {
      int d = 0, r = state;
      while ((r = a.next(r, sym)) >= 0) {
        ++d;
        if (a.accepting[r]) finals.insert({pos, d});
      }
    }
  };

  OneLoopStandardAutomaton out;
  out.loop_constant = p;
  for (int pos = 0; pos < p; ++pos)
    read_finals(state_at(pos), pos, out.tail_finals);
  for (int v = 0; v < p; ++v)
    read_finals(state_at(p + v), v, out.loop_finals);
  out.check_valid();
  return out;
}

UnaryPairAutomaton to_pair_automaton(const OneLoopStandardAutomaton& a) {
  a.check_valid();
  int p = a.loop_constant;

  UnaryPairAutomaton out;
  auto add_state = [&](std::string name, bool accepting) {
    out.names.push_back(std::move(name));
    out.delta.push_back({-1, -1, -1});
    out.accepting.push_back(accepting);
    return static_cast<int>(out.names.size()) - 1;
  };
  auto set_next = [&](int from, PairSymbol sym, int to) {
    out.delta[from][static_cast<int>(sym)] = to;
  };

  std::vector<int> spine_tail(p), spine_loop(p);
  for (int i = 0; i < p; ++i) spine_tail[i] = add_state("s" + std::to_string(i), false);
  for (int v = 0; v < p; ++v) spine_loop[v] = add_state("c" + std::to_string(v), false);
  for (int i = 0; i + 1 < p; ++i)
    set_next(spine_tail[i], PairSymbol::Pair, spine_tail[i + 1]);
  set_next(spine_tail[p - 1], PairSymbol::Pair, spine_loop[0]);
  for (int v = 0; v < p; ++v)
    set_next(spine_loop[v], PairSymbol::Pair, spine_loop[(v + 1) % p]);
  out.initial = spine_tail[0];

  // Matching Right and Left chains make acceptance symmetric in the two
  // tapes: both orders of each edge's convolution are accepted.
  auto add_chains = [&](int base, const std::string& stem,
                        const std::set<std::pair<int, int>>& finals, int pos) {
    int maxd = 0;
    for (auto [fp, d] : finals)
      if (fp == pos) maxd = std::max(maxd, d);
    if (maxd == 0) return;
    for (PairSymbol sym : {PairSymbol::Right, PairSymbol::Left}) {
      const char* tag = sym == PairSymbol::Right ? "r" : "l";
      int prev = base;
      for (int d = 1; d <= maxd; ++d) {
        int s = add_state(stem + tag + std::to_string(d),
                          finals.count({pos, d}) > 0);
        set_next(prev, sym, s);
        prev = s;
      }
    }
  };

  for (int i = 0; i < p; ++i)
    add_chains(spine_tail[i], "s" + std::to_string(i), a.tail_finals, i);
  for (int v = 0; v < p; ++v)
    add_chains(spine_loop[v], "c" + std::to_string(v), a.loop_finals, v);

  out.check_valid();
  return out;
}

}  // namespace uag
