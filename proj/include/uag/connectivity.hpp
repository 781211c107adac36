#pragma once

#include "uag/analysis.hpp"

namespace uag {

// Is the unfolded graph connected?  Holds iff every block copy above level 0
// reaches the level below it through block edges alone, and the prefix plus
// all level-0 copies form a single coupling class.
bool is_connected(AnalysisContext& ctx);
bool is_connected(const UnfoldingSpec& spec);

// Reference procedure via the reachability automaton: connected iff every
// state is accepting.  Requires an empty prefix (see build_reach_automaton).
bool naive_connect(AnalysisContext& ctx);
bool naive_connect(const UnfoldingSpec& spec);

}  // namespace uag
