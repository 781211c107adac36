#pragma once

#include <cstdint>

#include "uag/analysis.hpp"

namespace uag {

// Components of a truncation, enriched with the pure (prefix-free) component
// structure needed to recognize pumpable components without leaving the
// window.
struct TruncationIndex {
  Truncation trunc;
  std::vector<int> comp;       // full components, per truncation row
  std::vector<int> pure_comp;  // block-only components; -1 on prefix rows
  std::vector<char> pure_repeat;         // per pure component: some block
                                         // vertex appears at two levels
  std::vector<char> comp_meets_repeat;   // per full component
  int num_comps = 0;
  int num_pure_comps = 0;

  bool same_component(const Vertex& u, const Vertex& v) const;
  bool in_repeat_component(const Vertex& v) const;
  bool any_repeat() const;
};

TruncationIndex build_truncation_index(const UnfoldingSpec& spec, int levels);

// Brute-force answers by breadth-first search on a truncation tall enough
// that the verdict is provably stable: height max-level + p^2 + O(p), with a
// recheck 2p+1 levels higher that throws std::logic_error on disagreement.
//
// A vertex is reported infinite iff its truncated component meets a pure
// component in which some block vertex repeats across levels (such a pure
// path pumps upwards forever).
bool oracle_reachable(const UnfoldingSpec& spec, const Vertex& u,
                      const Vertex& v);
bool oracle_infinite(const UnfoldingSpec& spec, const Vertex& v);
bool oracle_has_infinite(const UnfoldingSpec& spec);

// Same answers from one pair of truncations shared across many queries with
// levels at most max_query_level.  Queries beyond that level throw
// std::invalid_argument; low/high disagreement throws std::logic_error.
class BatchOracle {
 public:
  BatchOracle(const UnfoldingSpec& spec, int max_query_level);

  bool reachable(const Vertex& u, const Vertex& v) const;
  bool infinite(const Vertex& v) const;
  bool has_infinite() const;

 private:
  void check_level(const Vertex& v) const;

  int max_query_level_;
  TruncationIndex low_;
  TruncationIndex high_;
};

// Net lengths of all oriented cycles (start at the cycle's smallest node,
// intermediates distinct and larger, one orientation chosen per step, both
// traversal directions listed).  Exponential; rejects quotients with more
// than 8 nodes with std::invalid_argument.
std::vector<int> enumerate_oriented_cycle_net_lengths(const SigmaGraph& g);

// Reproducible random unfolding: block size 1 + seed%max_block-ish, prefix
// size up to max_prefix, each candidate edge/arc drawn independently with the
// given density.  Names are f0.., d0...
UnfoldingSpec generate_spec(std::uint64_t seed, int max_block, int max_prefix,
                            double density);

}  // namespace uag
