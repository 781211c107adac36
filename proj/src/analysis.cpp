#include "uag/analysis.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace uag {

SigmaGraph build_sigma_graph(const UnfoldingSpec& spec) {
  SigmaGraph g;
  g.node_of = spec.block.component_ids();
  g.num_nodes = g.node_of.empty()
                    ? 0
                    : *std::max_element(g.node_of.begin(), g.node_of.end()) + 1;
  g.members.assign(g.num_nodes, {});
  for (int x = 0; x < static_cast<int>(g.node_of.size()); ++x)
    g.members[g.node_of[x]].push_back(x);
  std::vector<std::set<int>> out(g.num_nodes), in(g.num_nodes);
  for (int u = 0; u < spec.block_size(); ++u)
    for (int v : spec.sigma[u]) {
      out[g.node_of[u]].insert(g.node_of[v]);
      in[g.node_of[v]].insert(g.node_of[u]);
    }
  g.out.assign(g.num_nodes, {});
  g.in.assign(g.num_nodes, {});
  for (int a = 0; a < g.num_nodes; ++a) {
    g.out[a].assign(out[a].begin(), out[a].end());
    g.in[a].assign(in[a].begin(), in[a].end());
  }
  return g;
}

bool oriented_cycle_nonzero(const SigmaGraph& g) {
  std::vector<int> label(g.num_nodes);
  std::vector<char> seen(g.num_nodes);
  std::vector<int> work;
  for (int start = 0; start < g.num_nodes; ++start) {
    std::fill(seen.begin(), seen.end(), 0);
    seen[start] = 1;
    label[start] = 0;
    work.assign(1, start);
    for (size_t head = 0; head < work.size(); ++head) {
      int y = work[head];
      // Neighbours in ascending order; at each the backward orientation is
      // tried before the forward one.
      std::vector<int> zs;
      std::set_union(g.in[y].begin(), g.in[y].end(), g.out[y].begin(),
                     g.out[y].end(), std::back_inserter(zs));
      for (int z : zs) {
        for (int delta : {-1, +1}) {
          if (delta == -1 &&
              !std::binary_search(g.in[y].begin(), g.in[y].end(), z))
            continue;
          if (delta == +1 &&
              !std::binary_search(g.out[y].begin(), g.out[y].end(), z))
            continue;
          int candidate = label[y] + delta;
          if (!seen[z]) {
            seen[z] = 1;
            label[z] = candidate;
            work.push_back(z);
          } else if (label[z] != candidate) {
            return true;
          }
        }
      }
    }
  }
  return false;
}

bool OffsetQueue::contains(int node, int offset) const {
  return position_of(node, offset) >= 0;
}

int OffsetQueue::position_of(int node, int offset) const {
  for (size_t i = 0; i < order.size(); ++i)
    if (order[i].first == node && order[i].second == offset)
      return static_cast<int>(i);
  return -1;
}

OffsetQueue finite_reach(const SigmaGraph& g, const std::vector<int>& starts,
                         int lo, int hi) {
  if (lo > 0 || hi < 0)
    throw std::invalid_argument("offset window must contain 0");
  OffsetQueue q;
  q.lo = lo;
  q.hi = hi;
  int width = hi - lo + 1;
  std::vector<char> seen(static_cast<size_t>(g.num_nodes) * width, 0);
  auto add = [&](int node, int offset, int pred, int step) {
    size_t slot = static_cast<size_t>(node) * width + (offset - lo);
    if (seen[slot]) return;
    seen[slot] = 1;
    q.order.emplace_back(node, offset);
    q.pred.push_back(pred);
    q.step.push_back(step);
  };
  for (int s : starts) {
    if (s < 0 || s >= g.num_nodes)
      throw std::invalid_argument("start node out of range");
    add(s, 0, -1, 0);
  }
  for (size_t head = 0; head < q.order.size(); ++head) {
    auto [y, d] = q.order[head];
    if (d + 1 <= hi)
      for (int z : g.out[y]) add(z, d + 1, static_cast<int>(head), +1);
    if (d - 1 >= lo)
      for (int z : g.in[y]) add(z, d - 1, static_cast<int>(head), -1);
  }
  return q;
}

struct AnalysisContext::CouplingData {
  std::vector<int> parent;  // block level-0 copies first, then prefix
  std::set<int> infinite_classes;

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

AnalysisContext::AnalysisContext(UnfoldingSpec spec) : spec_(std::move(spec)) {
  spec_.check_valid();
  sigma_ = build_sigma_graph(spec_);
}

AnalysisContext::~AnalysisContext() = default;

const OffsetQueue& AnalysisContext::queue_at(int node, int level) {
  if (node < 0 || node >= sigma_.num_nodes)
    throw std::invalid_argument("node out of range");
  int p = window_constant();
  int clamped = std::clamp(level, 0, p);
  auto it = queues_.find({node, clamped});
  if (it == queues_.end())
    it = queues_
             .emplace(std::make_pair(node, clamped),
                      finite_reach(sigma_, {node}, -clamped, p))
             .first;
  return it->second;
}

bool AnalysisContext::pure_infinite(int node, int level) {
  int p = window_constant();
  int clamped = std::clamp(level, 0, p);
  auto it = infinite_.find({node, clamped});
  if (it != infinite_.end()) return it->second;
  const OffsetQueue& q = queue_at(node, clamped);
  bool top = false, top_with_arc = false;
  for (auto [nd, off] : q.order)
    if (off == p) {
      top = true;
      if (!sigma_.out[nd].empty()) top_with_arc = true;
    }
  if (top != top_with_arc) ++strict_disagreements_;
  infinite_.emplace(std::make_pair(node, clamped), top);
  return top;
}

int AnalysisContext::period(int node) {
  auto it = periods_.find(node);
  if (it != periods_.end()) return it->second;
  int p = window_constant();
  const OffsetQueue& q = queue_at(node, p);
  int top = -1;
  for (size_t i = 0; i < q.order.size(); ++i)
    if (q.order[i].second == p) {
      top = static_cast<int>(i);
      break;
    }
  if (top < 0)
    throw std::logic_error("period requested for a finite-component node");
  std::vector<int> path;  // positions, root first
  for (int at = top; at >= 0; at = q.pred[at]) path.push_back(at);
  std::reverse(path.begin(), path.end());
  // First node to achieve each offset along the witness path.
  std::vector<int> achiever(p + 1, -1);
  for (int at : path) {
    auto [nd, off] = q.order[at];
    if (off >= 0 && off <= p && achiever[off] < 0) achiever[off] = nd;
  }
  std::vector<int> first_offset(sigma_.num_nodes, -1);
  int r = -1;
  for (int off = 0; off <= p && r < 0; ++off) {
    int nd = achiever[off];
    if (nd < 0) throw std::logic_error("witness path misses an offset");
    if (first_offset[nd] >= 0)
      r = off - first_offset[nd];
    else
      first_offset[nd] = off;
  }
  if (r < 1 || r > p) throw std::logic_error("no pump period on witness path");
  periods_.emplace(node, r);
  return r;
}

const std::vector<std::vector<int>>& AnalysisContext::closure_table(int node) {
  auto it = closures_.find(node);
  if (it != closures_.end()) return it->second;
  int p = window_constant();
  int r = period(node);
  std::vector<std::vector<int>> rows;
  std::set<int> zero;
  for (auto [nd, off] : queue_at(node, p).order)
    if (off == 0) zero.insert(nd);
  rows.emplace_back(zero.begin(), zero.end());
  for (int k = 1; k < r; ++k)
    rows.push_back(reach_of_nodes(sigma_successor_nodes(rows[k - 1])));
  if (reach_of_nodes(sigma_successor_nodes(rows[r - 1])) != rows[0])
    throw std::logic_error("closure table failed to wrap");
  return closures_.emplace(node, std::move(rows)).first->second;
}

std::vector<int> AnalysisContext::sigma_successor_nodes(
    const std::vector<int>& nodes) const {
  std::set<int> out;
  for (int nd : nodes) out.insert(sigma_.out[nd].begin(), sigma_.out[nd].end());
  return {out.begin(), out.end()};
}

std::vector<int> AnalysisContext::reach_of_nodes(
    const std::vector<int>& nodes) const {
  if (nodes.empty()) return {};
  int p = window_constant();
  OffsetQueue q = finite_reach(sigma_, nodes, -p, p);
  std::set<int> zero;
  for (auto [nd, off] : q.order)
    if (off == 0) zero.insert(nd);
  return {zero.begin(), zero.end()};
}

namespace {

void validate_vertex(const UnfoldingSpec& spec, const Vertex& v) {
  if (v.kind == VertexKind::Prefix) {
    if (v.index < 0 || v.index >= spec.prefix_size() || v.level != 0)
      throw std::invalid_argument("prefix vertex out of range");
  } else {
    if (v.index < 0 || v.index >= spec.block_size() || v.level < 0)
      throw std::invalid_argument("block vertex out of range");
  }
}

}  // namespace

bool AnalysisContext::pure_reachable(Vertex u, Vertex v) {
  validate_vertex(spec_, u);
  validate_vertex(spec_, v);
  if (u.kind != VertexKind::Block || v.kind != VertexKind::Block)
    throw std::invalid_argument("pure_reachable needs block copies");
  if (u.level > v.level) std::swap(u, v);
  int p = window_constant();
  int nu = sigma_.node_of[u.index];
  int nv = sigma_.node_of[v.index];
  bool fu = pure_infinite(nu, u.level);
  bool fv = pure_infinite(nv, v.level);
  if (fu != fv) return false;
  int delta = v.level - u.level;
  if (!fu) {
    if (delta > p) return false;
    return queue_at(nu, u.level).contains(nv, delta);
  }
  int r = period(nu);
  const auto& row = closure_table(nu)[delta % r];
  return std::binary_search(row.begin(), row.end(), nv);
}

bool AnalysisContext::has_infinite_component() {
  if (has_infinite_ < 0) has_infinite_ = oriented_cycle_nonzero(sigma_) ? 1 : 0;
  return has_infinite_ == 1;
}

const AnalysisContext::CouplingData& AnalysisContext::coupling() {
  if (coupling_) return *coupling_;
  int fn = spec_.block_size();
  int dn = spec_.prefix_size();
  auto data = std::make_unique<CouplingData>();
  data->parent.resize(fn + dn);
  std::iota(data->parent.begin(), data->parent.end(), 0);
  // Same-component level-0 copies, one window search per quotient node: the
  // offset-0 slice of the search from n is exactly the set of nodes whose
  // level-0 copies share n's component in the prefix-free graph.
  for (int n = 0; n < sigma_.num_nodes; ++n) {
    for (std::size_t i = 1; i < sigma_.members[n].size(); ++i)
      data->unite(sigma_.members[n][0], sigma_.members[n][i]);
    for (auto [m, off] : queue_at(n, 0).order)
      if (off == 0) data->unite(sigma_.members[n][0], sigma_.members[m][0]);
  }
  for (auto [d, e] : spec_.prefix.edges) data->unite(fn + d, fn + e);
  for (int d = 0; d < dn; ++d)
    for (int x : spec_.eta[d]) data->unite(fn + d, x);
  for (int x = 0; x < fn; ++x)
    if (pure_infinite(sigma_.node_of[x], 0))
      data->infinite_classes.insert(data->find(x));
  coupling_ = std::move(data);
  return *coupling_;
}

int AnalysisContext::coupling_class_count() {
  coupling();
  std::set<int> roots;
  for (std::size_t i = 0; i < coupling_->parent.size(); ++i)
    roots.insert(coupling_->find(static_cast<int>(i)));
  return static_cast<int>(roots.size());
}

int AnalysisContext::prefix_class(int prefix_index) {
  if (prefix_index < 0 || prefix_index >= spec_.prefix_size())
    throw std::invalid_argument("prefix index out of range");
  coupling();
  return coupling_->find(spec_.block_size() + prefix_index);
}

int AnalysisContext::anchor_class(const Vertex& block_v) {
  validate_vertex(spec_, block_v);
  if (block_v.kind != VertexKind::Block)
    throw std::invalid_argument("anchor_class needs a block copy");
  coupling();
  for (int z = 0; z < spec_.block_size(); ++z)
    if (pure_reachable(block_vertex(z, 0), block_v))
      return coupling_->find(z);
  return -1;
}

bool AnalysisContext::class_contains_infinite(int class_id) {
  coupling();
  return coupling_->infinite_classes.count(class_id) > 0;
}

bool AnalysisContext::is_in_infinite_component(const Vertex& v) {
  validate_vertex(spec_, v);
  if (v.kind == VertexKind::Prefix)
    return class_contains_infinite(prefix_class(v.index));
  if (pure_infinite(sigma_.node_of[v.index], v.level)) return true;
  if (spec_.prefix_size() == 0) return false;
  int a = anchor_class(v);
  return a >= 0 && class_contains_infinite(a);
}

bool has_infinite_component(const UnfoldingSpec& spec) {
  AnalysisContext ctx(spec);
  return ctx.has_infinite_component();
}

bool is_in_infinite_component(const UnfoldingSpec& spec, const Vertex& v) {
  AnalysisContext ctx(spec);
  return ctx.is_in_infinite_component(v);
}

}  // namespace uag
