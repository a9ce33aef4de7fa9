#pragma once

#include <set>

#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

/// Replaces every executable statement whose origin id is not in `covered`
/// with the assume(0) marker. If/while headers count as executable: an
/// uncovered header replaces the whole construct. No simplification.
StmtPtr truncateRaw(const Stmt& program, const std::set<NodeId>& covered);

/// Applies the truncation rewrite rules to a fixpoint:
///   assume(0); C          -> assume(0)
///   C; assume(0)          -> assume(0)
///   if (b) {C} else {assume(0)} -> assume(b); C
///   if (b) {assume(0)} else {C} -> assume(!b); C
///   while (b) {assume(0)}       -> assume(!b)
/// An if without an else is treated as having an empty (skip) else branch.
/// Synthesized assumes carry the origin id of the collapsed construct.
StmtPtr simplifyTruncation(const Stmt& program);

/// Convenience: truncateRaw then simplifyTruncation.
StmtPtr truncateMini(const Stmt& program, const std::set<NodeId>& covered);

}  // namespace slicevc::mini
