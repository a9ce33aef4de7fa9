#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "slicevc/frontend/adapter.hpp"

namespace slicevc {

enum class CfgKind { Entry, Exit, Stmt, Cond, AssumeFalse };

using CfgId = std::uint32_t;
constexpr CfgId kNoCfg = static_cast<CfgId>(-1);

struct CfgNode {
  CfgId id = kNoCfg;
  CfgKind kind = CfgKind::Stmt;
  UnifiedId ast = kNoNode;
  std::set<std::string> defs;
  std::set<std::string> uses;
  bool defsUncertain = false;
  /// Cond successors are ordered [true, false]; Stmt nodes have exactly one.
  std::vector<CfgId> succ;
  bool unreachableFromEntry = false;
  bool cannotReachExit = false;
};

struct Cfg {
  std::vector<CfgNode> nodes;
  CfgId entry = kNoCfg;
  CfgId exit = kNoCfg;
  /// Bijection from executable AST nodes onto Stmt and Cond CFG nodes.
  std::map<UnifiedId, CfgId> byAst;
  /// Loop back-edges recorded during lowering.
  std::set<std::pair<CfgId, CfgId>> backEdges;
  /// For each loop head, the id range [first, last] of its body nodes.
  std::map<CfgId, std::pair<CfgId, CfgId>> loopBodyRanges;
  /// The function-def node the graph was built from (kNoNode for whole-unit).
  UnifiedId functionRoot = kNoNode;

  const CfgNode& node(CfgId id) const { return nodes[id]; }
  std::size_t size() const { return nodes.size(); }
};

/// Lowers the unit's unified AST. When the unit contains exactly one
/// function definition its body is lowered; otherwise the root block is.
/// Deterministic; unlowerable constructs become opaque Stmt nodes.
Cfg buildCfg(const SourceUnit& unit, const GrammarAdapter& adapter);

/// Graphviz dot text for debugging.
std::string toDot(const Cfg& cfg, const SourceUnit& unit);

}  // namespace slicevc
