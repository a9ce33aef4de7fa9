#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

ExprPtr clone(const Expr& e) {
  auto out = std::make_unique<Expr>();
  out->kind = e.kind;
  out->intValue = e.intValue;
  out->boolValue = e.boolValue;
  out->var = e.var;
  out->range = e.range;
  out->args.reserve(e.args.size());
  for (const auto& a : e.args) out->args.push_back(clone(*a));
  return out;
}

bool structurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ExprKind::IntLit && !(a.intValue == b.intValue)) return false;
  if (a.kind == ExprKind::BoolLit && a.boolValue != b.boolValue) return false;
  if (a.var != b.var) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!structurallyEqual(*a.args[i], *b.args[i])) return false;
  return true;
}

void collectVars(const Expr& e, std::set<std::string>& out) {
  if (!e.var.empty()) out.insert(e.var);
  for (const auto& a : e.args) collectVars(*a, out);
}

bool isBooleanKind(ExprKind k) {
  switch (k) {
    case ExprKind::BoolLit:
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne:
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Not:
      return true;
    default:
      return false;
  }
}

StmtPtr clone(const Stmt& s) {
  auto out = std::make_unique<Stmt>();
  out->kind = s.kind;
  out->id = s.id;
  out->origin = s.origin;
  out->range = s.range;
  out->synthetic = s.synthetic;
  out->unreachableMark = s.unreachableMark;
  out->target = s.target;
  if (s.expr) out->expr = clone(*s.expr);
  for (const auto& c : s.body) out->body.push_back(clone(*c));
  if (s.thenBranch) out->thenBranch = clone(*s.thenBranch);
  if (s.elseBranch) out->elseBranch = clone(*s.elseBranch);
  if (s.loopBody) out->loopBody = clone(*s.loopBody);
  return out;
}

bool structurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.target != b.target) return false;
  if (static_cast<bool>(a.expr) != static_cast<bool>(b.expr)) return false;
  if (a.expr && !structurallyEqual(*a.expr, *b.expr)) return false;
  if (a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i)
    if (!structurallyEqual(*a.body[i], *b.body[i])) return false;
  auto eqChild = [](const StmtPtr& x, const StmtPtr& y) {
    if (static_cast<bool>(x) != static_cast<bool>(y)) return false;
    return !x || structurallyEqual(*x, *y);
  };
  return eqChild(a.thenBranch, b.thenBranch) && eqChild(a.elseBranch, b.elseBranch) &&
         eqChild(a.loopBody, b.loopBody);
}

StmtPtr makeStmt(StmtKind k) {
  auto out = std::make_unique<Stmt>();
  out->kind = k;
  return out;
}

StmtPtr makeAssume(ExprPtr cond, NodeId origin, bool synthetic) {
  auto out = makeStmt(StmtKind::Assume);
  out->expr = std::move(cond);
  out->origin = origin;
  out->synthetic = synthetic;
  return out;
}

StmtPtr makeUnreachable(NodeId origin) {
  auto cond = std::make_unique<Expr>();
  cond->kind = ExprKind::BoolLit;
  cond->boolValue = false;
  auto out = makeAssume(std::move(cond), origin, true);
  out->unreachableMark = true;
  return out;
}

ExprPtr makeNot(ExprPtr e) {
  auto out = std::make_unique<Expr>();
  out->kind = ExprKind::Not;
  out->args.push_back(std::move(e));
  return out;
}

std::size_t executableCount(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::Block: {
      std::size_t n = 0;
      for (const auto& c : s.body) n += executableCount(*c);
      return n;
    }
    case StmtKind::If: {
      // if and else headers each count as a line, matching rendered output.
      std::size_t n = 1 + executableCount(*s.thenBranch);
      if (s.elseBranch) n += 1 + executableCount(*s.elseBranch);
      return n;
    }
    case StmtKind::While:
      return 1 + executableCount(*s.loopBody);
    default:
      return 1;
  }
}

void forEachStmt(const Stmt& s, const std::function<void(const Stmt&)>& fn) {
  fn(s);
  for (const auto& c : s.body) forEachStmt(*c, fn);
  if (s.thenBranch) forEachStmt(*s.thenBranch, fn);
  if (s.elseBranch) forEachStmt(*s.elseBranch, fn);
  if (s.loopBody) forEachStmt(*s.loopBody, fn);
}

}  // namespace slicevc::mini
