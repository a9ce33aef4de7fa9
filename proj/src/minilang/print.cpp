#include "slicevc/minilang/print.hpp"

namespace slicevc::mini {

namespace {

// Higher binds tighter.
int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Or:
      return 1;
    case ExprKind::And:
      return 2;
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
    case ExprKind::Eq:
    case ExprKind::Ne:
      return 3;
    case ExprKind::Add:
    case ExprKind::Sub:
      return 4;
    case ExprKind::Mul:
      return 5;
    case ExprKind::Neg:
    case ExprKind::Not:
      return 6;
    default:
      return 7;
  }
}

const char* opText(ExprKind k) {
  switch (k) {
    case ExprKind::Or: return "||";
    case ExprKind::And: return "&&";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::Gt: return ">";
    case ExprKind::Ge: return ">=";
    case ExprKind::Eq: return "==";
    case ExprKind::Ne: return "!=";
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    default: return "?";
  }
}

std::string printExprPrec(const Expr& e, int parentPrec) {
  int myPrec = precedence(e.kind);
  std::string out;
  switch (e.kind) {
    case ExprKind::IntLit:
      out = e.intValue.toString();
      break;
    case ExprKind::BoolLit:
      out = e.boolValue ? "true" : "false";
      break;
    case ExprKind::Var:
      out = e.var;
      break;
    case ExprKind::Neg:
      out = "-" + printExprPrec(*e.args[0], myPrec);
      break;
    case ExprKind::Not:
      // Always parenthesized; the negated condition reads unambiguously.
      out = "!(" + printExprPrec(*e.args[0], 0) + ")";
      break;
    case ExprKind::SeqSize:
      out = e.var + ".size()";
      break;
    case ExprKind::SeqInsert:
      out = e.var + ".insert(" + printExprPrec(*e.args[0], 0) + ")";
      break;
    case ExprKind::SeqDelete:
      out = e.var + ".delete(" + printExprPrec(*e.args[0], 0) + ")";
      break;
    default: {
      // Left-associative binary operators; right operand gets a stricter bound.
      out = printExprPrec(*e.args[0], myPrec) + " " + opText(e.kind) + " " +
            printExprPrec(*e.args[1], myPrec + 1);
      break;
    }
  }
  if (myPrec < parentPrec) return "(" + out + ")";
  return out;
}

void printStmtInto(const Stmt& s, int indent, std::string& out) {
  std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  switch (s.kind) {
    case StmtKind::Skip:
      out += pad + "skip\n";
      break;
    case StmtKind::Block:
      for (const auto& c : s.body) printStmtInto(*c, indent, out);
      break;
    case StmtKind::Assume:
      if (s.unreachableMark) {
        out += pad + "assume(0)\n";
      } else {
        out += pad + "assume(" + printExprPrec(*s.expr, 0) + ")\n";
      }
      break;
    case StmtKind::Assign: {
      // Re-sugar sequence updates of the form xs := xs.insert(e).
      if ((s.expr->kind == ExprKind::SeqInsert || s.expr->kind == ExprKind::SeqDelete) &&
          s.expr->var == s.target) {
        out += pad + printExprPrec(*s.expr, 0) + "\n";
      } else {
        out += pad + s.target + " := " + printExprPrec(*s.expr, 0) + "\n";
      }
      break;
    }
    case StmtKind::Read:
      out += pad + "read(" + s.target + ")\n";
      break;
    case StmtKind::Write:
      out += pad + "write(" + printExprPrec(*s.expr, 0) + ")\n";
      break;
    case StmtKind::If:
      out += pad + "if (" + printExprPrec(*s.expr, 0) + ") {\n";
      printStmtInto(*s.thenBranch, indent + 1, out);
      if (s.elseBranch) {
        out += pad + "} else {\n";
        printStmtInto(*s.elseBranch, indent + 1, out);
      }
      out += pad + "}\n";
      break;
    case StmtKind::While:
      out += pad + "while (" + printExprPrec(*s.expr, 0) + ") {\n";
      printStmtInto(*s.loopBody, indent + 1, out);
      out += pad + "}\n";
      break;
  }
}

}  // namespace

std::string printExpr(const Expr& e) { return printExprPrec(e, 0); }

std::string printStmt(const Stmt& s, int indent) {
  std::string out;
  printStmtInto(s, indent, out);
  return out;
}

std::string printProgram(const Stmt& program) { return printStmt(program, 0); }

}  // namespace slicevc::mini
