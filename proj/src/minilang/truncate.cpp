#include "slicevc/minilang/truncate.hpp"

namespace slicevc::mini {

namespace {

StmtPtr truncateRec(const Stmt& s, const std::set<NodeId>& covered) {
  switch (s.kind) {
    case StmtKind::Block: {
      auto out = makeStmt(StmtKind::Block);
      out->id = s.id;
      out->origin = s.origin;
      out->range = s.range;
      for (const auto& c : s.body) out->body.push_back(truncateRec(*c, covered));
      return out;
    }
    case StmtKind::If: {
      if (!covered.count(s.origin)) return makeUnreachable(s.origin);
      auto out = clone(s);
      out->thenBranch = truncateRec(*s.thenBranch, covered);
      if (s.elseBranch) out->elseBranch = truncateRec(*s.elseBranch, covered);
      return out;
    }
    case StmtKind::While: {
      if (!covered.count(s.origin)) return makeUnreachable(s.origin);
      auto out = clone(s);
      out->loopBody = truncateRec(*s.loopBody, covered);
      return out;
    }
    default:
      if (!covered.count(s.origin)) return makeUnreachable(s.origin);
      return clone(s);
  }
}

bool isUnreachableMark(const Stmt& s) {
  return s.kind == StmtKind::Assume && s.unreachableMark;
}

// Returns the simplified statement; an assume(0) result signals that the
// construct is unreachable and lets the caller absorb it.
StmtPtr simplifyRec(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Block: {
      auto out = makeStmt(StmtKind::Block);
      out->id = s.id;
      out->origin = s.origin;
      out->range = s.range;
      for (const auto& c : s.body) {
        StmtPtr simplified = simplifyRec(*c);
        if (isUnreachableMark(*simplified)) {
          // Both sequence rules together: any unreachable element collapses
          // the whole block to assume(0).
          return simplified;
        }
        out->body.push_back(std::move(simplified));
      }
      return out;
    }
    case StmtKind::If: {
      StmtPtr thenSide = simplifyRec(*s.thenBranch);
      StmtPtr elseSide = s.elseBranch ? simplifyRec(*s.elseBranch) : nullptr;
      bool thenDead = isUnreachableMark(*thenSide);
      bool elseDead = elseSide ? isUnreachableMark(*elseSide)
                               : false;  // missing else is an empty branch
      if (thenDead && (elseDead || !s.elseBranch)) {
        if (!s.elseBranch) {
          // if (b) {assume(0)} with empty else: assume(!b); skip.
          return makeAssume(makeNot(clone(*s.expr)), s.origin, true);
        }
        return makeUnreachable(s.origin);
      }
      if (s.elseBranch && elseDead) {
        auto out = makeStmt(StmtKind::Block);
        out->origin = s.origin;
        out->body.push_back(makeAssume(clone(*s.expr), s.origin, true));
        out->body.push_back(std::move(thenSide));
        return out;
      }
      if (thenDead) {
        auto out = makeStmt(StmtKind::Block);
        out->origin = s.origin;
        out->body.push_back(makeAssume(makeNot(clone(*s.expr)), s.origin, true));
        if (elseSide) out->body.push_back(std::move(elseSide));
        return out;
      }
      auto out = clone(s);
      out->thenBranch = std::move(thenSide);
      out->elseBranch = std::move(elseSide);
      return out;
    }
    case StmtKind::While: {
      StmtPtr body = simplifyRec(*s.loopBody);
      if (isUnreachableMark(*body)) {
        return makeAssume(makeNot(clone(*s.expr)), s.origin, true);
      }
      auto out = clone(s);
      out->loopBody = std::move(body);
      return out;
    }
    default:
      return clone(s);
  }
}

}  // namespace

StmtPtr truncateRaw(const Stmt& program, const std::set<NodeId>& covered) {
  return truncateRec(program, covered);
}

StmtPtr simplifyTruncation(const Stmt& program) { return simplifyRec(program); }

StmtPtr truncateMini(const Stmt& program, const std::set<NodeId>& covered) {
  StmtPtr raw = truncateRaw(program, covered);
  return simplifyTruncation(*raw);
}

}  // namespace slicevc::mini
