#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "uag/standard_automaton.hpp"

namespace uag {

// Finite simple undirected graph with named vertices.
struct FiniteGraph {
  std::vector<std::string> names;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted, no duplicates

  int size() const { return static_cast<int>(names.size()); }
  int find(std::string_view name) const;  // -1 when absent
  bool has_edge(int u, int v) const;
  std::vector<std::vector<int>> adjacency() const;  // sorted neighbour lists
  // Connected-component ids, dense, numbered in increasing order of each
  // component's smallest vertex.
  std::vector<int> component_ids() const;
};

// Description of an infinite graph built from a finite prefix graph D and
// infinitely many stacked copies F^0, F^1, ... of a finite block graph F:
//
//   vertices:  D  and  x^i for x in F, i >= 0
//   edges:     all edges of D
//              {d, x^0}        for x in eta(d)
//              {x^i, y^i}      for {x, y} an edge of F
//              {x^i, y^(i+1)}  for y in sigma(x)
//
// Finite-degree by construction: every vertex meets at most |D| + 3|F| edges.
struct UnfoldingSpec {
  FiniteGraph prefix;                   // D, may be empty
  FiniteGraph block;                    // F, at least one vertex
  std::vector<std::vector<int>> eta;    // per prefix vertex: sorted block ids
  std::vector<std::vector<int>> sigma;  // per block vertex: sorted block ids

  int prefix_size() const { return prefix.size(); }
  int block_size() const { return block.size(); }
  // Loop constant of the synthesized automaton; also the padding target.
  int loop_constant() const;

  // Throws std::invalid_argument on malformed data (size mismatches, ranges,
  // duplicate names across the two graphs, unsorted rows).
  void check_valid() const;
};

enum class VertexKind { Prefix, Block };

// A vertex of the unfolded graph: a prefix vertex (level is always 0) or the
// copy of a block vertex at some level >= 0.
struct Vertex {
  VertexKind kind = VertexKind::Block;
  int index = 0;
  int level = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

Vertex prefix_vertex(int index);
Vertex block_vertex(int index, int level);

// "name" for prefix vertices, "name@level" for block vertices.
std::string format_vertex(const UnfoldingSpec& spec, const Vertex& v);
// Parses the syntax above; throws std::invalid_argument for unknown names,
// bad levels, or a block name without "@level".
Vertex parse_vertex(const UnfoldingSpec& spec, std::string_view text);

// Reads the textual format (order of sections is free, `#` starts a comment):
//
//   dvertices: d0 d1          (optional; omitted = empty prefix)
//   fvertices: a b c          (required, at least one name)
//   dedges: d0-d1 ...         (optional)
//   fedges: a-b b-c ...       (optional)
//   eta: d0 -> a b            (zero or more lines, one source each)
//   sigma: a -> b c           (zero or more lines, one source each)
//
// Unknown names, duplicate sections, repeated sources, self edges and
// duplicate edges are rejected with a ParseError carrying line and column.
UnfoldingSpec parse_spec(std::string_view text);

// Canonical serialization of the format above; empty sections are omitted.
std::string serialize_spec(const UnfoldingSpec& spec);

// Finite induced subgraph holding the prefix and block copies 0..levels-1.
// Row layout: prefix vertices first, then level by level.
struct Truncation {
  int prefix_size = 0;
  int block_size = 0;
  int levels = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbour lists

  int size() const { return prefix_size + block_size * levels; }
  int index_of(const Vertex& v) const;  // -1 when outside
  Vertex vertex_at(int index) const;
};

Truncation truncate(const UnfoldingSpec& spec, int levels);

// Natural-number codes for vertices, as read off a unary tape.
//
//   WithPrefix: prefix d -> d, block x^i -> m + i*m + x  (m = loop constant)
//   PureSigma:  block x^i -> i*m + x                     (m = block size;
//               requires an empty prefix)
enum class Encoding { WithPrefix, PureSigma };

long long encode_vertex(const Vertex& v, int modulus, Encoding enc);
// Inverse; std::nullopt for codes that name no vertex.
std::optional<Vertex> decode_vertex(long long value, int prefix_size,
                                    int block_size, int modulus, Encoding enc);

// Reads an unfolding off a standard-form automaton with loop constant p.  The
// prefix and block both get p vertices (named d0..,f0..); a tail final (i, d)
// becomes the prefix edge {i, i+d} when i+d < p and otherwise puts f(i+d-p)
// into eta(i); a loop final (v, d) becomes the block edge {v, v+d} when
// v+d < p and otherwise puts f(v+d-p) into sigma(v).
UnfoldingSpec extract_spec(const OneLoopStandardAutomaton& a);

// Inverse direction at loop constant max(|D|, |F|, 1).
OneLoopStandardAutomaton synthesize_automaton(const UnfoldingSpec& spec);

// Grows the prefix/block to the given sizes with fresh isolated vertices.
UnfoldingSpec pad_spec(const UnfoldingSpec& spec, int prefix_size,
                       int block_size);

// Structural equality ignoring vertex names.
bool equal_structure(const UnfoldingSpec& a, const UnfoldingSpec& b);

}  // namespace uag
