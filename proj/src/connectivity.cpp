#include "uag/connectivity.hpp"

#include "uag/reachability.hpp"

namespace uag {

bool is_connected(AnalysisContext& ctx) {
  // Every copy above level 0 must reach the level below it through block
  // edges alone (a path from level 1 down shifts upward to every higher
  // level, and a deep copy can only meet the rest of the graph by first
  // descending).
  const SigmaGraph& g = ctx.sigma();
  for (int n = 0; n < g.num_nodes; ++n) {
    bool descends = false;
    for (auto [nd, off] : ctx.queue_at(n, 1).order)
      if (off < 0) {
        descends = true;
        break;
      }
    if (!descends) return false;
  }
  // ...and the prefix plus all level-0 copies must form one class.  Together
  // the two conditions collapse the whole graph into a single (necessarily
  // infinite) component.
  return ctx.coupling_class_count() == 1;
}

bool is_connected(const UnfoldingSpec& spec) {
  AnalysisContext ctx(spec);
  return is_connected(ctx);
}

bool naive_connect(AnalysisContext& ctx) {
  UnaryPairAutomaton a = build_reach_automaton(ctx);
  for (int q = 0; q < a.num_states(); ++q)
    if (!a.accepting[q]) return false;
  return true;
}

bool naive_connect(const UnfoldingSpec& spec) {
  AnalysisContext ctx(spec);
  return naive_connect(ctx);
}

}  // namespace uag
