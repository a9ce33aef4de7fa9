#include "slicevc/slice/slice.hpp"

#include <algorithm>
#include <unordered_map>

namespace slicevc {

namespace {

enum class Fate { Live, Dead };

class Truncator {
public:
  Truncator(const Cfg& cfg, const SourceUnit& unit, const Partition& part)
      : cfg_(cfg), unit_(unit), part_(part) {}

  SliceProgram run() {
    out_.partitionIndex = part_.discoveryIndex;
    UnifiedId body = analyzedBody();
    if (blockFate(body) == Fate::Dead) {
      out_.vacuous = true;
      out_.unreachableMarks.push_back({unit_.node(body).range});
      return std::move(out_);
    }
    emitBlock(body);
    return std::move(out_);
  }

private:
  UnifiedId analyzedBody() const {
    UnifiedId root = cfg_.functionRoot;
    if (root != kNoNode && unit_.node(root).kind == NodeKind::FunctionDef) {
      for (UnifiedId c : unit_.node(root).children)
        if (unit_.node(c).kind == NodeKind::Block) return c;
    }
    return root == kNoNode ? unit_.root() : root;
  }

  bool covered(UnifiedId ast) const {
    auto it = cfg_.byAst.find(ast);
    if (it == cfg_.byAst.end()) return true;  // no CFG node, nothing to cut
    return part_.coverage.contains(it->second);
  }

  CfgId cfgOf(UnifiedId ast) const {
    auto it = cfg_.byAst.find(ast);
    return it == cfg_.byAst.end() ? kNoCfg : it->second;
  }

  std::string condTextOf(UnifiedId construct) const {
    for (UnifiedId c : unit_.node(construct).children) {
      if (unit_.node(c).kind == NodeKind::ConditionExpr)
        return std::string(unit_.text(unit_.node(c).range));
    }
    return std::string(unit_.text(unit_.node(construct).range));
  }

  struct Branches {
    UnifiedId thenBlock = kNoNode;
    UnifiedId elseChild = kNoNode;  // Block or a nested If (elif)
    UnifiedId loopBody = kNoNode;
  };

  Branches branchesOf(const UnifiedNode& n) const {
    Branches b;
    for (UnifiedId c : n.children) {
      NodeKind k = unit_.node(c).kind;
      if (n.kind == NodeKind::If) {
        if (k == NodeKind::Block && b.thenBlock == kNoNode) b.thenBlock = c;
        else if ((k == NodeKind::Block || k == NodeKind::If) && b.thenBlock != kNoNode)
          b.elseChild = c;
      } else if (k == NodeKind::Block) {
        b.loopBody = c;
      }
    }
    return b;
  }

  // A block is dead when its first executable child is dead: the region
  // renders as a single assume(0) that the enclosing construct absorbs.
  // Dead tails behind live statements (escaping constructs of real
  // languages) are handled at emit time and keep the block live.
  Fate blockFate(UnifiedId blockId) {
    const UnifiedNode& block = unit_.node(blockId);
    for (UnifiedId childId : block.children) {
      const UnifiedNode& child = unit_.node(childId);
      if (!isExecutableKind(child.kind) && child.kind != NodeKind::Declaration) continue;
      return stmtFate(childId);
    }
    return Fate::Live;
  }

  Fate stmtFate(UnifiedId id) {
    auto it = fateCache_.find(id);
    if (it != fateCache_.end()) return it->second;
    Fate f = computeFate(id);
    fateCache_[id] = f;
    return f;
  }

  Fate computeFate(UnifiedId id) {
    const UnifiedNode& n = unit_.node(id);
    if (!covered(id)) return Fate::Dead;
    if (n.kind == NodeKind::If) {
      Branches b = branchesOf(n);
      Fate thenFate = b.thenBlock != kNoNode ? blockFate(b.thenBlock) : Fate::Live;
      if (b.elseChild == kNoNode) return Fate::Live;  // collapses to assume at worst
      Fate elseFate = unit_.node(b.elseChild).kind == NodeKind::If
                          ? stmtFate(b.elseChild)
                          : blockFate(b.elseChild);
      return thenFate == Fate::Dead && elseFate == Fate::Dead ? Fate::Dead : Fate::Live;
    }
    return Fate::Live;  // loops with dead bodies collapse to assume(!cond)
  }

  void emitBlock(UnifiedId blockId) {
    const UnifiedNode& block = unit_.node(blockId);
    for (UnifiedId childId : block.children) {
      const UnifiedNode& child = unit_.node(childId);
      if (!isExecutableKind(child.kind) && child.kind != NodeKind::Declaration) continue;
      if (stmtFate(childId) == Fate::Dead) {
        // A dead tail behind live statements (escaping constructs); the
        // remainder of the block renders as one assume(0).
        out_.unreachableMarks.push_back({{child.range.begin, block.range.end}});
        return;
      }
      emitStmt(childId);
    }
  }

  void emitStmt(UnifiedId id) {
    const UnifiedNode& n = unit_.node(id);
    switch (n.kind) {
      case NodeKind::If: {
        Branches b = branchesOf(n);
        Fate thenFate = b.thenBlock != kNoNode ? blockFate(b.thenBlock) : Fate::Live;
        Fate elseFate = Fate::Live;
        if (b.elseChild != kNoNode) {
          elseFate = unit_.node(b.elseChild).kind == NodeKind::If
                         ? stmtFate(b.elseChild)
                         : blockFate(b.elseChild);
        }
        if (thenFate == Fate::Dead) {
          // if (b) {assume(0)} else {C} -> assume(!b); C
          out_.synthAssumes.push_back(
              {id, b.elseChild, cfgOf(id), condTextOf(id), true, true});
          if (b.elseChild != kNoNode) {
            if (unit_.node(b.elseChild).kind == NodeKind::If) emitStmt(b.elseChild);
            else emitBlock(b.elseChild);
          }
          return;
        }
        if (b.elseChild != kNoNode && elseFate == Fate::Dead) {
          // if (b) {C} else {assume(0)} -> assume(b); C
          out_.synthAssumes.push_back(
              {id, b.thenBlock, cfgOf(id), condTextOf(id), false, true});
          if (b.thenBlock != kNoNode) emitBlock(b.thenBlock);
          return;
        }
        out_.keptNodes.insert(cfgOf(id));
        if (b.thenBlock != kNoNode) emitBlock(b.thenBlock);
        if (b.elseChild != kNoNode) {
          if (unit_.node(b.elseChild).kind == NodeKind::If) emitStmt(b.elseChild);
          else emitBlock(b.elseChild);
        }
        return;
      }
      case NodeKind::While:
      case NodeKind::For: {
        Branches b = branchesOf(n);
        Fate bodyFate = b.loopBody != kNoNode ? blockFate(b.loopBody) : Fate::Live;
        if (bodyFate == Fate::Dead) {
          // while (b) {assume(0)} -> assume(!b)
          out_.synthAssumes.push_back({id, kNoNode, cfgOf(id), condTextOf(id), true, true});
          return;
        }
        out_.keptNodes.insert(cfgOf(id));
        if (b.loopBody != kNoNode) emitBlock(b.loopBody);
        return;
      }
      default: {
        CfgId c = cfgOf(id);
        if (c != kNoCfg) out_.keptNodes.insert(c);
        return;
      }
    }
  }

  const Cfg& cfg_;
  const SourceUnit& unit_;
  const Partition& part_;
  SliceProgram out_;
  std::unordered_map<UnifiedId, Fate> fateCache_;
};

bool intersects(const std::set<std::string>& a, const std::set<std::string>& b) {
  for (const std::string& x : a)
    if (b.count(x)) return true;
  return false;
}

}  // namespace

SliceProgram truncate(const Cfg& cfg, const SourceUnit& unit,
                      const GrammarAdapter& /*adapter*/, const Partition& part) {
  return Truncator(cfg, unit, part).run();
}

SliceProgram fullSlice(const Cfg& cfg) {
  SliceProgram out;
  for (const CfgNode& n : cfg.nodes) {
    if (n.kind == CfgKind::Stmt || n.kind == CfgKind::Cond) out.keptNodes.insert(n.id);
  }
  return out;
}

SliceProgram backSlice(SliceProgram trunc, const Cfg& cfg, const SourceUnit& unit,
                       const GrammarAdapter& adapter,
                       const std::set<std::string>& criterion) {
  SliceProgram out = std::move(trunc);
  out.sliced = true;
  out.criterionVars = criterion;
  if (out.vacuous) return out;

  if (criterion.empty()) {
    // Degenerate criterion: only the partition's own control assumptions stay.
    out.notes.push_back("empty slicing criterion: keeping only synthesized assumptions");
    out.keptNodes.clear();
    return out;
  }

  struct Cand {
    enum Type { Plain, Cond, AssumeStmt, Input, Output, Synth } type = Plain;
    CfgId cfg = kNoCfg;
    UnifiedId ast = kNoNode;
    std::size_t synthIndex = 0;
    std::uint32_t pos = 0;
  };
  std::vector<Cand> cands;
  for (CfgId id : out.keptNodes) {
    const CfgNode& n = cfg.node(id);
    Cand c;
    c.cfg = id;
    c.ast = n.ast;
    c.pos = unit.node(n.ast).range.begin;
    if (n.kind == CfgKind::Cond) c.type = Cand::Cond;
    else if (adapter.isInputOp(unit, n.ast)) c.type = Cand::Input;
    else if (adapter.isOutputOp(unit, n.ast)) c.type = Cand::Output;
    else if (unit.node(n.ast).kind == NodeKind::Assume) c.type = Cand::AssumeStmt;
    else c.type = Cand::Plain;
    cands.push_back(c);
  }
  for (std::size_t i = 0; i < out.synthAssumes.size(); ++i) {
    Cand c;
    c.type = Cand::Synth;
    c.synthIndex = i;
    c.ast = out.synthAssumes[i].construct;
    c.pos = unit.node(c.ast).range.begin;
    cands.push_back(c);
  }
  // Reverse program order; statements later in the text are processed first.
  std::sort(cands.begin(), cands.end(),
            [](const Cand& a, const Cand& b) { return a.pos > b.pos; });

  const std::set<CfgId> truncKept = out.keptNodes;
  auto controlParents = [&](UnifiedId ast) {
    std::vector<CfgId> parents;
    for (UnifiedId p = unit.node(ast).parent; p != kNoNode; p = unit.node(p).parent) {
      NodeKind k = unit.node(p).kind;
      if (k == NodeKind::If || k == NodeKind::While || k == NodeKind::For) {
        auto it = cfg.byAst.find(p);
        if (it != cfg.byAst.end() && truncKept.count(it->second))
          parents.push_back(it->second);
      }
    }
    return parents;
  };

  std::set<std::string> tracked = criterion;
  std::set<CfgId> kept;
  std::set<CfgId> needed;  // conditionals some kept node is control-dependent on
  std::vector<bool> synthKept(out.synthAssumes.size(), false);

  auto markKept = [&](const Cand& c) {
    if (c.type == Cand::Synth) {
      if (synthKept[c.synthIndex]) return;
      synthKept[c.synthIndex] = true;
      for (const std::string& v :
           scanIdentifiers(out.synthAssumes[c.synthIndex].condText))
        tracked.insert(v);
    } else {
      if (!kept.insert(c.cfg).second) return;
      for (const std::string& v : cfg.node(c.cfg).uses) tracked.insert(v);
    }
    for (CfgId p : controlParents(c.ast)) needed.insert(p);
  };

  for (bool changed = true; changed;) {
    std::size_t keptBefore = kept.size();
    std::size_t trackedBefore = tracked.size();
    std::size_t neededBefore = needed.size();
    auto synthsBefore = std::count(synthKept.begin(), synthKept.end(), true);
    for (const Cand& c : cands) {
      switch (c.type) {
        case Cand::Cond:
          if (needed.count(c.cfg) || intersects(cfg.node(c.cfg).uses, tracked)) markKept(c);
          break;
        case Cand::AssumeStmt:
          // Assumptions survive only when they directly constrain a variable
          // of the original criterion.
          if (intersects(cfg.node(c.cfg).uses, criterion)) markKept(c);
          break;
        case Cand::Input:
          // Consuming an input advances the stream for every later read.
          markKept(c);
          break;
        case Cand::Output:
          // Output matters only when it emits tracked data.
          if (intersects(cfg.node(c.cfg).uses, tracked)) markKept(c);
          break;
        case Cand::Synth: {
          std::set<std::string> ids;
          for (const std::string& v :
               scanIdentifiers(out.synthAssumes[c.synthIndex].condText))
            ids.insert(v);
          if (intersects(ids, criterion)) markKept(c);
          break;
        }
        case Cand::Plain: {
          const CfgNode& n = cfg.node(c.cfg);
          if (n.defsUncertain || intersects(n.defs, tracked)) markKept(c);
          break;
        }
      }
    }
    changed = kept.size() != keptBefore || tracked.size() != trackedBefore ||
              needed.size() != neededBefore ||
              std::count(synthKept.begin(), synthKept.end(), true) != synthsBefore;
  }

  out.keptNodes = std::move(kept);
  for (std::size_t i = 0; i < out.synthAssumes.size(); ++i)
    out.synthAssumes[i].kept = synthKept[i];
  return out;
}

}  // namespace slicevc
