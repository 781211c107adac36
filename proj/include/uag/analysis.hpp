#pragma once

#include <map>
#include <memory>
#include <vector>

#include "uag/unfolding.hpp"

namespace uag {

// Quotient of the block graph by its connected components, with one arc
// (a, b) whenever sigma links a member of a to a member of b.  Node ids are
// dense, numbered in increasing order of each component's smallest vertex.
struct SigmaGraph {
  int num_nodes = 0;
  std::vector<int> node_of;               // block vertex -> node
  std::vector<std::vector<int>> members;  // node -> sorted block vertices
  std::vector<std::vector<int>> out;      // node -> sorted distinct arc heads
  std::vector<std::vector<int>> in;       // node -> sorted distinct arc tails
};

SigmaGraph build_sigma_graph(const UnfoldingSpec& spec);

// Does the quotient contain an oriented cycle (arcs traversed in either
// direction, each step counting +1 forwards and -1 backwards) whose net
// length is nonzero?  Label propagation from every start node; a vertex
// receiving two distinct labels witnesses such a cycle.
bool oriented_cycle_nonzero(const SigmaGraph& g);

// Breadth-first closure over pairs (node, offset) with the offset confined to
// [lo, hi].  A forward arc adds +1 to the offset, a backward arc -1.  `order`
// is the FIFO discovery order; `pred`/`step` give the discovery tree (index
// into order, -1/0 at roots).  Neighbours are expanded forward arcs first,
// then backward arcs, each in ascending node order.
struct OffsetQueue {
  int lo = 0;
  int hi = 0;
  std::vector<std::pair<int, int>> order;
  std::vector<int> pred;
  std::vector<int> step;

  bool contains(int node, int offset) const;
  int position_of(int node, int offset) const;  // -1 when absent
};

// Multi-source variant: every start node enters at offset 0, in given order.
OffsetQueue finite_reach(const SigmaGraph& g, const std::vector<int>& starts,
                         int lo, int hi);

// Shared machinery for the decision procedures on one unfolding: cached
// window searches, infinity flags, pump periods, closure tables, and the
// prefix coupling classes.  All level arguments are clamped to [0, p] where
// p is the block size; connectivity above level p is translation-invariant.
class AnalysisContext {
 public:
  explicit AnalysisContext(UnfoldingSpec spec);
  ~AnalysisContext();

  const UnfoldingSpec& spec() const { return spec_; }
  const SigmaGraph& sigma() const { return sigma_; }
  // Window radius used throughout: the block size.
  int window_constant() const { return spec_.block_size(); }

  // Window search from `node` seeded at offset 0, offsets in [-min(level,p), p].
  const OffsetQueue& queue_at(int node, int level);

  // Is the component of a member copy at `level` infinite?  True iff the
  // window search reaches offset +p.
  bool pure_infinite(int node, int level);

  // Pump period r in [1, p] for a node whose deep copies are infinite: read
  // off the first discovery path to offset +p, as the gap between the first
  // two offsets whose first-achieving nodes coincide.  The closure table
  // below is periodic with period r.
  int period(int node);

  // Rows 0..r-1; row k holds, sorted, the nodes whose copies p+k levels above
  // a deep base copy of `node` share its component.  Row 0 is the offset-0
  // slice of queue_at(node, p); row k applies sigma_successor_nodes then
  // reach_of_nodes to row k-1.  Wrapping around (row r) reproduces row 0.
  const std::vector<std::vector<int>>& closure_table(int node);

  // Heads of arcs leaving the given nodes, sorted, deduplicated.
  std::vector<int> sigma_successor_nodes(const std::vector<int>& nodes) const;

  // Offset-0 slice of the multi-source window search (offsets in [-p, p])
  // seeded with `nodes`, sorted.
  std::vector<int> reach_of_nodes(const std::vector<int>& nodes) const;

  // Are the two block copies in the same component of the prefix-free graph?
  bool pure_reachable(Vertex u, Vertex v);

  bool has_infinite_component();

  // Full test, prefix bridging included.
  bool is_in_infinite_component(const Vertex& v);

  // Coupling classes: a union-find over the prefix vertices and the level-0
  // block copies, joined along prefix edges, eta edges, and same-component
  // pairs of level-0 copies.  Two vertices of the unfolding are connected iff
  // their pure/anchor classes match (see reachable()).
  // Number of distinct coupling classes; 1 means the prefix and all level-0
  // copies hang together.
  int coupling_class_count();

  int prefix_class(int prefix_index);
  // Class of the level-0 copies reachable from this block copy; -1 when its
  // component never touches level 0.
  int anchor_class(const Vertex& block_v);
  // Does the class contain a level-0 copy lying in an infinite component?
  bool class_contains_infinite(int class_id);

  // Diagnostic: how often the offset-p test and its arc-bearing restriction
  // disagreed in this context (the restriction misses pumps that end in a
  // node without outgoing arcs).
  long long strict_infinity_disagreements() const { return strict_disagreements_; }

 private:
  struct CouplingData;

  const CouplingData& coupling();

  UnfoldingSpec spec_;
  SigmaGraph sigma_;
  std::map<std::pair<int, int>, OffsetQueue> queues_;
  std::map<std::pair<int, int>, bool> infinite_;
  std::map<int, int> periods_;
  std::map<int, std::vector<std::vector<int>>> closures_;
  std::unique_ptr<CouplingData> coupling_;
  int has_infinite_ = -1;  // -1 unknown, else 0/1
  long long strict_disagreements_ = 0;
};

bool has_infinite_component(const UnfoldingSpec& spec);
bool is_in_infinite_component(const UnfoldingSpec& spec, const Vertex& v);

}  // namespace uag
