#include "uag/oracle.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "uag/rng.hpp"

namespace uag {

namespace {

std::vector<int> bfs_components(const std::vector<std::vector<int>>& adj,
                                const std::vector<char>& use,
                                const std::vector<char>& pass, int* count) {
  int n = static_cast<int>(adj.size());
  std::vector<int> comp(n, -1);
  int next_id = 0;
  for (int s = 0; s < n; ++s) {
    if (!use[s] || comp[s] >= 0) continue;
    comp[s] = next_id;
    std::deque<int> work{s};
    while (!work.empty()) {
      int u = work.front();
      work.pop_front();
      for (int v : adj[u])
        if (pass[v] && comp[v] < 0) {
          comp[v] = next_id;
          work.push_back(v);
        }
    }
    ++next_id;
  }
  *count = next_id;
  return comp;
}

}  // namespace

TruncationIndex build_truncation_index(const UnfoldingSpec& spec, int levels) {
  TruncationIndex ix;
  ix.trunc = truncate(spec, levels);
  int n = ix.trunc.size();
  int dn = ix.trunc.prefix_size;
  int fn = ix.trunc.block_size;

  std::vector<char> all(n, 1);
  ix.comp = bfs_components(ix.trunc.adj, all, all, &ix.num_comps);

  std::vector<char> block_only(n, 0);
  for (int i = dn; i < n; ++i) block_only[i] = 1;
  ix.pure_comp =
      bfs_components(ix.trunc.adj, block_only, block_only, &ix.num_pure_comps);

  // A pure component pumps iff some block vertex recurs at two levels.
  ix.pure_repeat.assign(ix.num_pure_comps, 0);
  std::vector<std::set<int>> seen(ix.num_pure_comps);
  for (int i = dn; i < n; ++i) {
    int c = ix.pure_comp[i];
    int x = (i - dn) % fn;
    if (!seen[c].insert(x).second) ix.pure_repeat[c] = 1;
  }
  ix.comp_meets_repeat.assign(ix.num_comps, 0);
  for (int i = dn; i < n; ++i)
    if (ix.pure_repeat[ix.pure_comp[i]]) ix.comp_meets_repeat[ix.comp[i]] = 1;
  return ix;
}

bool TruncationIndex::same_component(const Vertex& u, const Vertex& v) const {
  int iu = trunc.index_of(u);
  int iv = trunc.index_of(v);
  if (iu < 0 || iv < 0)
    throw std::invalid_argument("vertex outside the truncation");
  return comp[iu] == comp[iv];
}

bool TruncationIndex::in_repeat_component(const Vertex& v) const {
  int iv = trunc.index_of(v);
  if (iv < 0) throw std::invalid_argument("vertex outside the truncation");
  return comp_meets_repeat[comp[iv]] != 0;
}

bool TruncationIndex::any_repeat() const {
  return std::any_of(pure_repeat.begin(), pure_repeat.end(),
                     [](char c) { return c != 0; });
}

namespace {

int vertex_level(const Vertex& v) {
  return v.kind == VertexKind::Block ? v.level : 0;
}

// The tallest level a shortest connecting walk can need: climbing to a deep
// pump base, following at most one full closure round of window hops, and
// pumping back down never rises more than p^2 + O(p) above the endpoints.
int reach_height(const UnfoldingSpec& spec, int max_level) {
  int p = spec.block_size();
  return max_level + p * p + 4 * p + 2;
}

// Witnessing a pump needs at most p more levels above some member of the
// component, plus the window slack.
int repeat_height(const UnfoldingSpec& spec, int max_level) {
  int p = spec.block_size();
  return max_level + p * p + 6 * p + 2;
}

}  // namespace

bool oracle_reachable(const UnfoldingSpec& spec, const Vertex& u,
                      const Vertex& v) {
  int p = spec.block_size();
  int top = reach_height(spec, std::max(vertex_level(u), vertex_level(v)));
  TruncationIndex low = build_truncation_index(spec, top + 1);
  TruncationIndex high = build_truncation_index(spec, top + 2 * p + 2);
  bool a = low.same_component(u, v);
  if (a != high.same_component(u, v))
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

bool oracle_infinite(const UnfoldingSpec& spec, const Vertex& v) {
  int p = spec.block_size();
  int top = repeat_height(spec, vertex_level(v));
  TruncationIndex low = build_truncation_index(spec, top + 1);
  TruncationIndex high = build_truncation_index(spec, top + 2 * p + 2);
  bool a = low.in_repeat_component(v);
  if (a != high.in_repeat_component(v))
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

bool oracle_has_infinite(const UnfoldingSpec& spec) {
  int p = spec.block_size();
  int top = repeat_height(spec, 0);
  TruncationIndex low = build_truncation_index(spec, top + 1);
  TruncationIndex high = build_truncation_index(spec, top + 2 * p + 2);
  bool a = low.any_repeat();
  if (a != high.any_repeat())
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

BatchOracle::BatchOracle(const UnfoldingSpec& spec, int max_query_level)
    : max_query_level_(max_query_level) {
  if (max_query_level < 0)
    throw std::invalid_argument("max_query_level must be nonnegative");
  int top = repeat_height(spec, max_query_level);
  low_ = build_truncation_index(spec, top + 1);
  high_ = build_truncation_index(spec, top + 2 * spec.block_size() + 2);
}

void BatchOracle::check_level(const Vertex& v) const {
  if (vertex_level(v) > max_query_level_)
    throw std::invalid_argument("query level exceeds the batch window");
}

bool BatchOracle::reachable(const Vertex& u, const Vertex& v) const {
  check_level(u);
  check_level(v);
  bool a = low_.same_component(u, v);
  if (a != high_.same_component(u, v))
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

bool BatchOracle::infinite(const Vertex& v) const {
  check_level(v);
  bool a = low_.in_repeat_component(v);
  if (a != high_.in_repeat_component(v))
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

bool BatchOracle::has_infinite() const {
  bool a = low_.any_repeat();
  if (a != high_.any_repeat())
    throw std::logic_error("oracle verdict unstable across windows");
  return a;
}

std::vector<int> enumerate_oriented_cycle_net_lengths(const SigmaGraph& g) {
  if (g.num_nodes > 8)
    throw std::invalid_argument("cycle enumeration is limited to 8 nodes");
  std::vector<int> result;
  std::vector<char> used(g.num_nodes, 0);

  // Walks start at the cycle's smallest node; intermediates are distinct and
  // larger.  Each step picks one arc orientation (+1 forward, -1 backward).
  auto walk = [&](auto&& self, int start, int at, int net, int length) -> void {
    for (int delta : {+1, -1}) {
      const auto& arcs = delta == +1 ? g.out[at] : g.in[at];
      for (int z : arcs) {
        if (z == start && length >= 1) result.push_back(net + delta);
        if (z > start && !used[z]) {
          used[z] = 1;
          self(self, start, z, net + delta, length + 1);
          used[z] = 0;
        }
      }
    }
  };
  for (int s = 0; s < g.num_nodes; ++s) walk(walk, s, s, 0, 1);
  return result;
}

UnfoldingSpec generate_spec(std::uint64_t seed, int max_block, int max_prefix,
                            double density) {
  if (max_block < 1)
    throw std::invalid_argument("max_block must be at least 1");
  if (max_prefix < 0)
    throw std::invalid_argument("max_prefix must be nonnegative");
  Mcg64 rng(seed);
  // Size draws use uniform() (top bits): the multiplicative stream keeps its
  // state odd, so below() of an even bound would only ever yield odd values.
  int fn = 1 + static_cast<int>(rng.uniform() * max_block);
  int dn = static_cast<int>(rng.uniform() * (max_prefix + 1));

  UnfoldingSpec spec;
  for (int x = 0; x < fn; ++x) spec.block.names.push_back("f" + std::to_string(x));
  for (int d = 0; d < dn; ++d) spec.prefix.names.push_back("d" + std::to_string(d));
  spec.eta.assign(dn, {});
  spec.sigma.assign(fn, {});
  for (int u = 0; u < fn; ++u)
    for (int v = u + 1; v < fn; ++v)
      if (rng.uniform() < density) spec.block.edges.emplace_back(u, v);
  for (int u = 0; u < dn; ++u)
    for (int v = u + 1; v < dn; ++v)
      if (rng.uniform() < density) spec.prefix.edges.emplace_back(u, v);
  for (int u = 0; u < fn; ++u)
    for (int v = 0; v < fn; ++v)
      if (rng.uniform() < density) spec.sigma[u].push_back(v);
  for (int d = 0; d < dn; ++d)
    for (int x = 0; x < fn; ++x)
      if (rng.uniform() < density) spec.eta[d].push_back(x);
  spec.check_valid();
  return spec;
}

}  // namespace uag
