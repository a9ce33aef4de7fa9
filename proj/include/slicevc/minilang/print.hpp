#pragma once

#include <string>

#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

/// Canonical form: LF newlines, two-space nesting, single spaces between
/// tokens, minimal parentheses. Parsing the output yields a structurally
/// identical tree. Byte-identical across platforms.
std::string printProgram(const Stmt& program);

std::string printExpr(const Expr& e);

/// One statement (recursively, for blocks/branches) at the given indent level.
std::string printStmt(const Stmt& s, int indent = 0);

}  // namespace slicevc::mini
