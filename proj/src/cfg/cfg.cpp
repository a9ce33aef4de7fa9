#include "slicevc/cfg/cfg.hpp"

#include <algorithm>
#include <functional>

namespace slicevc {

namespace {

class Builder {
public:
  Builder(const SourceUnit& unit, const GrammarAdapter& adapter)
      : unit_(unit), adapter_(adapter) {}

  Cfg build() {
    cfg_.entry = addNode(CfgKind::Entry, kNoNode);
    cfg_.exit = addNode(CfgKind::Exit, kNoNode);
    UnifiedId target = pickRoot();
    cfg_.functionRoot = target;
    UnifiedId body = target;
    if (unit_.node(target).kind == NodeKind::FunctionDef) {
      for (UnifiedId c : unit_.node(target).children) {
        if (unit_.node(c).kind == NodeKind::Block) body = c;
      }
    }
    CfgId head = lowerBlock(body, cfg_.exit);
    link(cfg_.entry, head);
    populateDefUses();
    markReachability();
    return std::move(cfg_);
  }

private:
  UnifiedId pickRoot() {
    std::vector<UnifiedId> fns;
    for (UnifiedId c : unit_.node(unit_.root()).children) {
      if (unit_.node(c).kind == NodeKind::FunctionDef) fns.push_back(c);
    }
    if (fns.size() == 1) return fns.front();
    // Several functions: analyze the one carrying PRE/POST markers.
    for (const char* marker : {"POST", "PRE"}) {
      for (UnifiedId fn : fns) {
        bool found = false;
        forEachNode(unit_, fn, [&](UnifiedId, const UnifiedNode& n) {
          if (found) return;
          if (n.kind != NodeKind::Assume && n.kind != NodeKind::Comment) return;
          if (unit_.text(n.range).find(marker) != std::string_view::npos) found = true;
        });
        if (found) return fn;
      }
    }
    return unit_.root();
  }

  CfgId addNode(CfgKind kind, UnifiedId ast) {
    CfgNode n;
    n.id = static_cast<CfgId>(cfg_.nodes.size());
    n.kind = kind;
    n.ast = ast;
    cfg_.nodes.push_back(std::move(n));
    if (ast != kNoNode && (kind == CfgKind::Stmt || kind == CfgKind::Cond))
      cfg_.byAst[ast] = cfg_.nodes.back().id;
    return cfg_.nodes.back().id;
  }

  void link(CfgId from, CfgId to) { cfg_.nodes[from].succ.push_back(to); }

  // Lowers the statements of a block; returns the head node (or `next` when
  // the block is empty). Statements are created in source order.
  CfgId lowerBlock(UnifiedId blockId, CfgId next) {
    const UnifiedNode& block = unit_.node(blockId);
    std::vector<UnifiedId> stmts;
    for (UnifiedId c : block.children) {
      if (isExecutableKind(unit_.node(c).kind) || unit_.node(c).kind == NodeKind::Declaration)
        stmts.push_back(c);
    }
    CfgId head = next;
    for (std::size_t i = stmts.size(); i-- > 0;) {
      head = lowerStmt(stmts[i], head);
    }
    return head;
  }

  CfgId lowerStmt(UnifiedId id, CfgId next) {
    const UnifiedNode& n = unit_.node(id);
    switch (n.kind) {
      case NodeKind::If: {
        CfgId cond = addNode(CfgKind::Cond, id);
        UnifiedId thenBlock = kNoNode, elseChild = kNoNode;
        for (UnifiedId c : n.children) {
          NodeKind k = unit_.node(c).kind;
          if (k == NodeKind::Block && thenBlock == kNoNode) {
            thenBlock = c;
          } else if ((k == NodeKind::Block || k == NodeKind::If) && thenBlock != kNoNode) {
            elseChild = c;
          }
        }
        CfgId thenHead = thenBlock != kNoNode ? lowerBlock(thenBlock, next) : next;
        CfgId elseHead = next;
        if (elseChild != kNoNode) {
          elseHead = unit_.node(elseChild).kind == NodeKind::If
                         ? lowerStmt(elseChild, next)
                         : lowerBlock(elseChild, next);
        }
        link(cond, thenHead);
        link(cond, elseHead);
        return cond;
      }
      case NodeKind::While:
      case NodeKind::For: {
        CfgId cond = addNode(CfgKind::Cond, id);
        UnifiedId body = kNoNode;
        for (UnifiedId c : n.children) {
          if (unit_.node(c).kind == NodeKind::Block) body = c;
        }
        CfgId bodyFirst = static_cast<CfgId>(cfg_.nodes.size());
        CfgId bodyHead = body != kNoNode ? lowerBlock(body, cond) : cond;
        CfgId bodyLast = static_cast<CfgId>(cfg_.nodes.size());
        if (bodyLast > bodyFirst)
          cfg_.loopBodyRanges[cond] = {bodyFirst, bodyLast - 1};
        link(cond, bodyHead);
        link(cond, next);
        // Record loop back-edges: any edge landing on the loop head from a
        // node created while lowering the body.
        for (const CfgNode& m : cfg_.nodes) {
          if (m.id > cond)
            for (CfgId s : m.succ)
              if (s == cond) cfg_.backEdges.insert({m.id, cond});
        }
        if (bodyHead == cond) cfg_.backEdges.insert({cond, cond});
        return cond;
      }
      case NodeKind::Return: {
        CfgId stmt = addNode(CfgKind::Stmt, id);
        link(stmt, cfg_.exit);
        return stmt;
      }
      default: {
        CfgId stmt = addNode(CfgKind::Stmt, id);
        link(stmt, next);
        return stmt;
      }
    }
  }

  void populateDefUses() {
    for (CfgNode& n : cfg_.nodes) {
      if (n.ast == kNoNode) continue;
      DefUse du = adapter_.defUses(unit_, n.ast);
      n.defs = std::move(du.defs);
      n.uses = std::move(du.uses);
      n.defsUncertain = du.uncertain;
    }
  }

  void markReachability() {
    std::vector<bool> fromEntry(cfg_.nodes.size(), false);
    std::vector<CfgId> work{cfg_.entry};
    while (!work.empty()) {
      CfgId id = work.back();
      work.pop_back();
      if (fromEntry[id]) continue;
      fromEntry[id] = true;
      for (CfgId s : cfg_.nodes[id].succ) work.push_back(s);
    }
    // Reverse reachability to exit.
    std::vector<std::vector<CfgId>> preds(cfg_.nodes.size());
    for (const CfgNode& n : cfg_.nodes)
      for (CfgId s : n.succ) preds[s].push_back(n.id);
    std::vector<bool> toExit(cfg_.nodes.size(), false);
    work.push_back(cfg_.exit);
    while (!work.empty()) {
      CfgId id = work.back();
      work.pop_back();
      if (toExit[id]) continue;
      toExit[id] = true;
      for (CfgId p : preds[id]) work.push_back(p);
    }
    for (CfgNode& n : cfg_.nodes) {
      n.unreachableFromEntry = !fromEntry[n.id];
      n.cannotReachExit = !toExit[n.id];
    }
  }

  const SourceUnit& unit_;
  const GrammarAdapter& adapter_;
  Cfg cfg_;
};

}  // namespace

Cfg buildCfg(const SourceUnit& unit, const GrammarAdapter& adapter) {
  return Builder(unit, adapter).build();
}

std::string toDot(const Cfg& cfg, const SourceUnit& unit) {
  std::string out = "digraph cfg {\n  node [shape=box];\n";
  for (const CfgNode& n : cfg.nodes) {
    std::string label;
    switch (n.kind) {
      case CfgKind::Entry: label = "ENTRY"; break;
      case CfgKind::Exit: label = "EXIT"; break;
      case CfgKind::AssumeFalse: label = "assume(0)"; break;
      default: {
        std::string text(n.ast != kNoNode ? unit.text(unit.node(n.ast).range) : "");
        if (n.kind == CfgKind::Cond) {
          std::size_t brace = text.find_first_of("{:\n");
          if (brace != std::string::npos) text = text.substr(0, brace);
        }
        if (text.size() > 40) text = text.substr(0, 37) + "...";
        for (char& c : text)
          if (c == '"') c = '\'';
        label = text;
        break;
      }
    }
    out += "  n" + std::to_string(n.id) + " [label=\"" + std::to_string(n.id) + ": " +
           label + "\"];\n";
    for (std::size_t i = 0; i < n.succ.size(); ++i) {
      out += "  n" + std::to_string(n.id) + " -> n" + std::to_string(n.succ[i]);
      if (n.kind == CfgKind::Cond)
        out += i == 0 ? " [label=\"T\"]" : " [label=\"F\"]";
      out += ";\n";
    }
  }
  return out + "}\n";
}

}  // namespace slicevc
