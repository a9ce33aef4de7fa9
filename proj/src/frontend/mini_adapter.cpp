#include "slicevc/frontend/mini_adapter.hpp"

#include <algorithm>

namespace slicevc {

namespace {

using mini::Stmt;
using mini::StmtKind;

class MiniAdapter : public GrammarAdapter {
public:
  std::string language() const override { return "mini"; }

  SourceUnit parse(std::string bytes, std::string fileId) const override {
    SourceUnit unit(std::move(fileId), std::move(bytes), "mini");
    auto data = std::make_shared<MiniUnitData>();
    try {
      mini::ParseResult parsed = mini::parseMini(unit.bytes());
      data->program = std::move(parsed.program);
      data->comments = std::move(parsed.comments);
    } catch (const mini::ParseError& err) {
      // Approximate contract: the whole file degrades to one opaque region.
      UnifiedId root = unit.addNode(
          NodeKind::Block, {0, static_cast<std::uint32_t>(unit.bytes().size())});
      UnifiedId blob = unit.addNode(
          NodeKind::Other, {0, static_cast<std::uint32_t>(unit.bytes().size())});
      unit.addChild(root, blob);
      unit.setRoot(root);
      unit.addDiagnostic(err.what());
      unit.buildSymbolIndex();
      return unit;
    }
    UnifiedId root = convert(unit, *data, *data->program);
    unit.setRange(root, {0, static_cast<std::uint32_t>(unit.bytes().size())});
    insertComments(unit, *data, root);
    unit.setRoot(root);
    unit.setAdapterData(data);
    unit.buildSymbolIndex();
    return unit;
  }

  DefUse defUses(const SourceUnit& unit, UnifiedId id) const override {
    const MiniUnitData* data = miniData(unit);
    if (!data) return GrammarAdapter::defUses(unit, id);
    auto it = data->fromUnified.find(id);
    if (it == data->fromUnified.end()) return {};
    const Stmt& s = *it->second;
    DefUse out;
    switch (s.kind) {
      case StmtKind::Assign:
        out.defs.insert(s.target);
        mini::collectVars(*s.expr, out.uses);
        break;
      case StmtKind::Read:
        out.defs.insert(s.target);
        break;
      case StmtKind::Write:
      case StmtKind::Assume:
      case StmtKind::If:
      case StmtKind::While:
        if (s.expr) mini::collectVars(*s.expr, out.uses);
        break;
      default:
        break;
    }
    return out;
  }

  bool isInputOp(const SourceUnit& unit, UnifiedId id) const override {
    const MiniUnitData* data = miniData(unit);
    if (!data) return false;
    auto it = data->fromUnified.find(id);
    return it != data->fromUnified.end() && it->second->kind == StmtKind::Read;
  }

  bool isOutputOp(const SourceUnit& unit, UnifiedId id) const override {
    const MiniUnitData* data = miniData(unit);
    if (!data) return false;
    auto it = data->fromUnified.find(id);
    return it != data->fromUnified.end() && it->second->kind == StmtKind::Write;
  }

  bool reparsesCleanly(const std::string& text) const override {
    try {
      mini::parseMini(text);
      return true;
    } catch (const mini::ParseError&) {
      return false;
    }
  }

private:
  static UnifiedId convert(SourceUnit& unit, MiniUnitData& data, const Stmt& s) {
    UnifiedId id = kNoNode;
    switch (s.kind) {
      case StmtKind::Block: {
        id = unit.addNode(NodeKind::Block, {s.range.begin, s.range.end});
        for (const auto& c : s.body) unit.addChild(id, convert(unit, data, *c));
        break;
      }
      case StmtKind::If: {
        id = unit.addNode(NodeKind::If, {s.range.begin, s.range.end});
        UnifiedId cond = unit.addNode(NodeKind::ConditionExpr,
                                      {s.expr->range.begin, s.expr->range.end});
        unit.addChild(id, cond);
        unit.addChild(id, convert(unit, data, *s.thenBranch));
        if (s.elseBranch) unit.addChild(id, convert(unit, data, *s.elseBranch));
        break;
      }
      case StmtKind::While: {
        id = unit.addNode(NodeKind::While, {s.range.begin, s.range.end});
        UnifiedId cond = unit.addNode(NodeKind::ConditionExpr,
                                      {s.expr->range.begin, s.expr->range.end});
        unit.addChild(id, cond);
        unit.addChild(id, convert(unit, data, *s.loopBody));
        break;
      }
      case StmtKind::Assign:
        id = unit.addNode(NodeKind::Assignment, {s.range.begin, s.range.end}, s.target);
        break;
      case StmtKind::Read:
      case StmtKind::Write:
        id = unit.addNode(NodeKind::Call, {s.range.begin, s.range.end},
                          s.kind == StmtKind::Read ? "read" : "write");
        break;
      case StmtKind::Assume:
        id = unit.addNode(NodeKind::Assume, {s.range.begin, s.range.end});
        break;
      case StmtKind::Skip:
        id = unit.addNode(NodeKind::Other, {s.range.begin, s.range.end});
        break;
    }
    data.toUnified[s.id] = id;
    data.fromUnified[id] = &s;
    return id;
  }

  // Comment tokens become Comment leaves of the innermost block that
  // contains them, keeping sibling ranges ordered.
  static void insertComments(SourceUnit& unit, const MiniUnitData& data, UnifiedId root) {
    for (const auto& c : data.comments) {
      UnifiedId host = root;
      bool descended = true;
      while (descended) {
        descended = false;
        for (UnifiedId childId : unit.node(host).children) {
          const UnifiedNode& child = unit.node(childId);
          if (child.range.begin <= c.range.begin && c.range.end <= child.range.end &&
              (child.kind == NodeKind::Block || child.kind == NodeKind::If ||
               child.kind == NodeKind::While)) {
            host = childId;
            descended = true;
            break;
          }
        }
      }
      if (unit.node(host).kind != NodeKind::Block) continue;  // header comment, skip
      UnifiedId comment = unit.addNode(NodeKind::Comment, {c.range.begin, c.range.end});
      // Insert ordered by start offset.
      unit.addChild(host, comment);
      unit.sortChildrenByRange(host);
    }
  }
};

}  // namespace

const MiniUnitData* miniData(const SourceUnit& unit) {
  return static_cast<const MiniUnitData*>(unit.adapterData().get());
}

std::shared_ptr<GrammarAdapter> makeMiniAdapter() {
  return std::make_shared<MiniAdapter>();
}

}  // namespace slicevc
