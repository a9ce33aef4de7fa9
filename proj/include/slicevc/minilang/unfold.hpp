#pragma once

#include <cstdint>
#include <vector>

#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

/// A branch-free statement sequence: only skip/assume/assign/read/write.
/// Conditionals and loops appear as synthetic assume statements carrying the
/// origin id of the construct they came from.
struct LinearPath {
  std::vector<StmtPtr> stmts;
};

struct UnfoldResult {
  std::vector<LinearPath> paths;
  bool hitLoopBound = false;  // some paths needed more iterations and were dropped
  bool hitPathCap = false;
};

/// Unfolds conditionals and loops into assume-guarded linear programs. Each
/// while statement is unrolled at most loopBound times per path (counted per
/// syntactic loop, cumulatively along the path); the loop-exit path is always
/// produced. Deterministic: true branch first, exit path after the unrolled
/// continuations.
UnfoldResult unfoldBounded(const Stmt& program, int loopBound,
                           std::size_t maxPaths = 1u << 20);

/// Independent count of the paths unfoldBounded would produce, computed by a
/// direct recursion over the unfold equations without materializing paths.
std::size_t countUnfoldPaths(const Stmt& program, int loopBound);

/// Structural linearity check: no if/while/block nesting inside path entries.
bool isLinear(const LinearPath& path);

/// Renders a path as mini-language source (one statement per line, no braces).
std::string printPath(const LinearPath& path);

/// Wraps the path in a Block statement so it can be run by the interpreter.
StmtPtr pathToProgram(const LinearPath& path);

}  // namespace slicevc::mini
