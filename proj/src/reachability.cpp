#include "uag/reachability.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace uag {

bool reachable(AnalysisContext& ctx, const Vertex& u, const Vertex& v) {
  if (u == v) {
    // Validate before the trivial answer.
    if (u.kind == VertexKind::Block)
      return ctx.pure_reachable(u, u);
    return ctx.prefix_class(u.index) == ctx.prefix_class(u.index);
  }
  bool ub = u.kind == VertexKind::Block;
  bool vb = v.kind == VertexKind::Block;
  if (ub && vb) {
    if (ctx.pure_reachable(u, v)) return true;
    if (ctx.spec().prefix_size() == 0) return false;
    int a = ctx.anchor_class(u);
    return a >= 0 && a == ctx.anchor_class(v);
  }
  if (!ub && !vb)
    return ctx.prefix_class(u.index) == ctx.prefix_class(v.index);
  const Vertex& d = ub ? v : u;
  const Vertex& b = ub ? u : v;
  int a = ctx.anchor_class(b);
  return a >= 0 && a == ctx.prefix_class(d.index);
}

bool reachable(const UnfoldingSpec& spec, const Vertex& u, const Vertex& v) {
  AnalysisContext ctx(spec);
  return reachable(ctx, u, v);
}

UnaryPairAutomaton build_reach_automaton(AnalysisContext& ctx) {
  if (ctx.spec().prefix_size() != 0)
    throw std::invalid_argument("reachability automaton needs an empty prefix");
  int p = ctx.spec().block_size();
  const SigmaGraph& g = ctx.sigma();

  UnaryPairAutomaton out;
  auto add_state = [&](bool accepting) {
    out.names.push_back("n" + std::to_string(out.names.size()));
    out.delta.push_back({-1, -1, -1});
    out.accepting.push_back(accepting);
    return static_cast<int>(out.names.size()) - 1;
  };
  auto set_next = [&](int from, PairSymbol sym, int to) {
    out.delta[from][static_cast<int>(sym)] = to;
  };

  auto same = [&](int x, int i, int y, int j) {
    return ctx.pure_reachable(block_vertex(x, i), block_vertex(y, j));
  };

  // Pair spine: cell N = i*p + x stands for the diagonal at copy x^i, the
  // loop cell w for w^i with i >= p.  Diagonals are accepted.
  std::vector<int> spine(p * p), loop(p);
  for (int n = 0; n < p * p; ++n) spine[n] = add_state(true);
  for (int w = 0; w < p; ++w) loop[w] = add_state(true);
  for (int n = 0; n + 1 < p * p; ++n)
    set_next(spine[n], PairSymbol::Pair, spine[n + 1]);
  set_next(spine[p * p - 1], PairSymbol::Pair, loop[0]);
  for (int w = 0; w < p; ++w)
    set_next(loop[w], PairSymbol::Pair, loop[(w + 1) % p]);
  out.initial = spine[0];

  // Right chain whose state at distance c away from the cell of x^i stands
  // for the pair (x^i, y^j) with j*p + y = i*p + x + c.  When the base copy
  // is infinite the chain closes into a cycle after `cycle` steps (component
  // membership above the window repeats with the pump period).
  auto add_right = [&](int base, int tail, int cycle, auto&& accept) {
    int prev = base;
    int first_cycle_state = -1;
    for (int c = 1; c <= tail + cycle; ++c) {
      int s = add_state(accept(c));
      set_next(prev, PairSymbol::Right, s);
      if (c == tail + 1) first_cycle_state = s;
      prev = s;
    }
    if (cycle > 0) set_next(prev, PairSymbol::Right, first_cycle_state);
  };

  for (int i = 0; i < p; ++i)
    for (int x = 0; x < p; ++x) {
      bool inf = ctx.pure_infinite(g.node_of[x], i);
      int tail = p * p - x;
      int cycle = inf ? ctx.period(g.node_of[x]) * p : 0;
      add_right(spine[i * p + x], tail, cycle, [&](int c) {
        if (c <= tail) {
          int m = i * p + x + c;
          return same(x, i, m % p, m / p);
        }
        int cc = c - tail;  // position on the cycle, 1-based
        return same(x, i, cc % p, i + p + cc / p);
      });
    }

  for (int w = 0; w < p; ++w) {
    bool inf = ctx.pure_infinite(g.node_of[w], p);
    int tail = inf ? 0 : p * p;
    int cycle = inf ? ctx.period(g.node_of[w]) * p : 0;
    add_right(loop[w], tail, cycle, [&](int c) {
      return same(w, p, (w + c) % p, p + (w + c) / p);
    });
  }

  long long bound = 2LL * p * p * p * p + 2LL * p * p * p + p * p + p;
  if (out.num_states() > bound)
    throw std::logic_error("reachability automaton exceeded its state bound");
  out.check_valid();
  return out;
}

UnaryPairAutomaton build_reach_automaton(const UnfoldingSpec& spec) {
  AnalysisContext ctx(spec);
  return build_reach_automaton(ctx);
}

bool simulate_reach_automaton(const UnaryPairAutomaton& a, int block_size,
                              const Vertex& u, const Vertex& v) {
  if (u.kind != VertexKind::Block || v.kind != VertexKind::Block)
    throw std::invalid_argument("reachability automaton reads block copies");
  long long cu = encode_vertex(u, block_size, Encoding::PureSigma);
  long long cv = encode_vertex(v, block_size, Encoding::PureSigma);
  return a.accepts_pair(std::min(cu, cv), std::max(cu, cv));
}

}  // namespace uag
