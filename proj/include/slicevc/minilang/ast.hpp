#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "slicevc/minilang/value.hpp"

namespace slicevc::mini {

using NodeId = std::uint32_t;
constexpr NodeId kNoId = static_cast<NodeId>(-1);

/// Byte range into the source the node was parsed from (half-open).
struct SrcRange {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

enum class ExprKind {
  IntLit,
  BoolLit,
  Var,
  Neg,     // unary minus
  Add,
  Sub,
  Mul,
  SeqInsert,  // receiver.insert(arg)
  SeqDelete,  // receiver.delete(arg) - removes one occurrence
  SeqSize,    // receiver.size()
  Lt,
  Le,
  Gt,
  Ge,
  Eq,
  Ne,
  And,
  Or,
  Not,
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  ExprKind kind;
  BigInt intValue;      // IntLit
  bool boolValue = false;  // BoolLit
  std::string var;      // Var, and the receiver of Seq* operations
  std::vector<ExprPtr> args;
  SrcRange range;
};

ExprPtr clone(const Expr& e);
bool structurallyEqual(const Expr& a, const Expr& b);
/// All variable names read by the expression (receiver included).
void collectVars(const Expr& e, std::set<std::string>& out);
bool isBooleanKind(ExprKind k);

enum class StmtKind {
  Skip,
  Block,   // ordered statement list; the tree form of the Seq constructor
  Assume,
  Assign,
  If,
  While,
  Read,
  Write,
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  StmtKind kind;
  NodeId id = kNoId;      // dense id assigned by the parser
  NodeId origin = kNoId;  // id of the source statement this one stands for
  SrcRange range;
  bool synthetic = false;        // introduced by unfolding/truncation
  bool unreachableMark = false;  // the assume(0) marker

  std::string target;            // Assign, Read
  ExprPtr expr;                  // Assign value, Assume/If/While condition, Write value
  std::vector<StmtPtr> body;     // Block children
  StmtPtr thenBranch;            // If
  StmtPtr elseBranch;            // If, may be null
  StmtPtr loopBody;              // While
};

StmtPtr clone(const Stmt& s);
bool structurallyEqual(const Stmt& a, const Stmt& b);

StmtPtr makeStmt(StmtKind k);
StmtPtr makeAssume(ExprPtr cond, NodeId origin, bool synthetic);
/// The canonical unreachability marker: assume(0).
StmtPtr makeUnreachable(NodeId origin);
ExprPtr makeNot(ExprPtr e);

/// Number of executable statements, counting if/while headers once and
/// blocks as transparent. Matches the "lines" the renderer reports.
std::size_t executableCount(const Stmt& s);

/// Collects every statement node (transparent blocks included) in program order.
void forEachStmt(const Stmt& s, const std::function<void(const Stmt&)>& fn);

}  // namespace slicevc::mini
