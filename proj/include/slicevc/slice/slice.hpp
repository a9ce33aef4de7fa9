#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "slicevc/partition/partition.hpp"

namespace slicevc {

/// A conditional (or loop) collapsed by the truncation rules into an assume
/// of its (possibly negated) condition.
struct SynthAssume {
  UnifiedId construct = kNoNode;  // the if/while/for node replaced
  UnifiedId surviving = kNoNode;  // branch whose statements remain, if any
  CfgId condCfg = kNoCfg;
  std::string condText;
  bool negate = false;
  bool kept = true;  // back-slicing may drop the assume text
};

/// A region replaced wholesale by the unreachability marker.
struct UnreachableMark {
  ByteRange range;
};

/// A truncated, optionally back-sliced sub-program, expressed as marks over
/// the original source: CFG nodes retained verbatim, collapsed conditionals,
/// and unreachable regions.
struct SliceProgram {
  std::uint32_t partitionIndex = 0;
  std::set<CfgId> keptNodes;
  std::vector<SynthAssume> synthAssumes;
  std::vector<UnreachableMark> unreachableMarks;
  std::set<std::string> criterionVars;
  bool vacuous = false;  // the whole analyzed body reduced to assume(0)
  bool sliced = false;
  std::vector<std::string> notes;
};

/// Replaces everything outside the partition's coverage with unreachability
/// assumptions and applies the simplification rewrites to a fixpoint:
/// a dead branch turns its conditional into an assume of the surviving
/// direction, a dead loop body turns the loop into assume(!cond).
SliceProgram truncate(const Cfg& cfg, const SourceUnit& unit,
                      const GrammarAdapter& adapter, const Partition& part);

/// Weiser-style backward slice of a truncation against the criterion
/// variables. Reverse sweeps run to a fixpoint so loop-carried dependencies
/// converge. Keeps: statements defining a tracked variable, conditionals a
/// kept node is control-dependent on or reading a tracked variable, input
/// operations, and assume statements that read an original criterion
/// variable. Opaque statements with uncertain effects are kept.
SliceProgram backSlice(SliceProgram trunc, const Cfg& cfg, const SourceUnit& unit,
                       const GrammarAdapter& adapter,
                       const std::set<std::string>& criterion);

/// The truncation that keeps every node (identity); used by tests and the
/// identity-rendering invariant.
SliceProgram fullSlice(const Cfg& cfg);

}  // namespace slicevc
