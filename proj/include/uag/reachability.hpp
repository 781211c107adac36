#pragma once

#include "uag/analysis.hpp"

namespace uag {

// Are u and v in the same component of the unfolded graph?  Block-block pairs
// combine the prefix-free test with anchor-class equality; pairs involving
// prefix vertices compare coupling classes.
bool reachable(AnalysisContext& ctx, const Vertex& u, const Vertex& v);
bool reachable(const UnfoldingSpec& spec, const Vertex& u, const Vertex& v);

// Automaton accepting exactly the codes (1^a, 1^b), a <= b, of same-component
// pairs under the PureSigma encoding.  Requires an empty prefix; throws
// std::invalid_argument otherwise.  At block size p the automaton has at most
// 2p^4 + 2p^3 + p^2 + p states.
UnaryPairAutomaton build_reach_automaton(AnalysisContext& ctx);
UnaryPairAutomaton build_reach_automaton(const UnfoldingSpec& spec);

// Runs the automaton on the codes of u and v (shorter tape first).  Both
// vertices must be block copies; throws std::invalid_argument otherwise.
bool simulate_reach_automaton(const UnaryPairAutomaton& a, int block_size,
                              const Vertex& u, const Vertex& v);

}  // namespace uag
