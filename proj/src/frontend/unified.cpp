#include "slicevc/frontend/unified.hpp"

#include <algorithm>
#include <functional>

namespace slicevc {

const char* kindName(NodeKind k) {
  switch (k) {
    case NodeKind::FunctionDef: return "function-def";
    case NodeKind::If: return "if";
    case NodeKind::While: return "while";
    case NodeKind::For: return "for";
    case NodeKind::Assignment: return "assignment";
    case NodeKind::Call: return "call";
    case NodeKind::Return: return "return";
    case NodeKind::Assume: return "assume";
    case NodeKind::Block: return "block";
    case NodeKind::ConditionExpr: return "condition-expr";
    case NodeKind::Declaration: return "declaration";
    case NodeKind::Comment: return "comment";
    case NodeKind::Other: return "other";
  }
  return "?";
}

UnifiedId SourceUnit::addNode(NodeKind kind, ByteRange range, std::string nameHint) {
  UnifiedNode n;
  n.kind = kind;
  n.range = range;
  n.nameHint = std::move(nameHint);
  nodes_.push_back(std::move(n));
  return static_cast<UnifiedId>(nodes_.size() - 1);
}

void SourceUnit::addChild(UnifiedId parent, UnifiedId child) {
  nodes_[parent].children.push_back(child);
  nodes_[child].parent = parent;
}

void SourceUnit::sortChildrenByRange(UnifiedId id) {
  auto& children = nodes_[id].children;
  std::sort(children.begin(), children.end(), [this](UnifiedId a, UnifiedId b) {
    return nodes_[a].range.begin < nodes_[b].range.begin;
  });
}

void SourceUnit::buildSymbolIndex() {
  symbolIndex_.clear();
  for (UnifiedId id = 0; id < nodes_.size(); ++id) {
    const UnifiedNode& n = nodes_[id];
    if ((n.kind == NodeKind::Declaration || n.kind == NodeKind::FunctionDef) &&
        !n.nameHint.empty()) {
      symbolIndex_[n.nameHint].push_back(id);
    }
  }
}

bool isExecutableKind(NodeKind k) {
  switch (k) {
    case NodeKind::If:
    case NodeKind::While:
    case NodeKind::For:
    case NodeKind::Assignment:
    case NodeKind::Call:
    case NodeKind::Return:
    case NodeKind::Assume:
    case NodeKind::Other:
      return true;
    default:
      return false;
  }
}

void forEachNode(const SourceUnit& unit, UnifiedId id,
                 const std::function<void(UnifiedId, const UnifiedNode&)>& fn) {
  const UnifiedNode& n = unit.node(id);
  fn(id, n);
  for (UnifiedId c : n.children) forEachNode(unit, c, fn);
}

std::string checkRangeInvariants(const SourceUnit& unit) {
  std::string problem;
  forEachNode(unit, unit.root(), [&](UnifiedId id, const UnifiedNode& n) {
    if (!problem.empty()) return;
    if (n.range.begin > n.range.end) {
      problem = "node " + std::to_string(id) + " has an inverted range";
      return;
    }
    std::uint32_t lastEnd = 0;
    bool first = true;
    for (UnifiedId c : n.children) {
      const UnifiedNode& child = unit.node(c);
      if (!n.range.contains(child.range)) {
        problem = "child " + std::to_string(c) + " escapes parent " + std::to_string(id);
        return;
      }
      if (!first && child.range.begin < lastEnd) {
        problem = "siblings overlap or are unordered under " + std::to_string(id);
        return;
      }
      lastEnd = child.range.end;
      first = false;
    }
  });
  return problem;
}

}  // namespace slicevc
