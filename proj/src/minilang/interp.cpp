#include "slicevc/minilang/interp.hpp"

#include <stdexcept>

namespace slicevc::mini {

const char* statusName(RunStatus s) {
  switch (s) {
    case RunStatus::Running: return "RUNNING";
    case RunStatus::Done: return "DONE";
    case RunStatus::BlockedAssume: return "BLOCKED_ASSUME";
    case RunStatus::Error: return "ERROR";
  }
  return "?";
}

namespace {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Interp {
public:
  Interp(ConcreteState& state, std::uint64_t budget, RunTrace* trace)
      : state_(state), budget_(budget), trace_(trace) {}

  void run(const Stmt& s) {
    exec(s);
    if (state_.status == RunStatus::Running) state_.status = RunStatus::Done;
  }

private:
  void chargeStep() {
    if (budget_ == 0) {
      state_.status = RunStatus::Error;
      state_.error = "step budget exhausted";
      return;
    }
    --budget_;
  }

  void note(const Stmt& s) {
    if (trace_) trace_->visited.push_back(s.origin);
  }

  void noteRead(const std::string& v) {
    if (trace_ && current_ != kNoId) trace_->reads[current_].insert(v);
  }

  void noteWrite(const std::string& v) {
    if (trace_ && current_ != kNoId) trace_->writes[current_].insert(v);
  }

  bool running() const { return state_.status == RunStatus::Running; }

  const Value& lookup(const std::string& name) {
    auto it = state_.env.find(name);
    if (it == state_.env.end()) throw EvalError("undefined variable '" + name + "'");
    noteRead(name);
    return it->second;
  }

  BigInt evalInt(const Expr& e) {
    Value v = eval(e);
    if (!v.isInt()) throw EvalError("expected an integer operand");
    return std::move(v).asInt();
  }

  bool evalBool(const Expr& e) {
    if (!isBooleanKind(e.kind)) throw EvalError("expected a boolean expression");
    switch (e.kind) {
      case ExprKind::BoolLit:
        return e.boolValue;
      case ExprKind::Not:
        return !evalBool(*e.args[0]);
      case ExprKind::And: {
        // Eager on both sides: expressions are pure, and the read trace then
        // matches the syntactic uses exactly.
        bool lhs = evalBool(*e.args[0]);
        bool rhs = evalBool(*e.args[1]);
        return lhs && rhs;
      }
      case ExprKind::Or: {
        bool lhs = evalBool(*e.args[0]);
        bool rhs = evalBool(*e.args[1]);
        return lhs || rhs;
      }
      default: {
        const BigInt lhs = evalInt(*e.args[0]);
        const BigInt rhs = evalInt(*e.args[1]);
        switch (e.kind) {
          case ExprKind::Lt: return lhs < rhs;
          case ExprKind::Le: return lhs <= rhs;
          case ExprKind::Gt: return lhs > rhs;
          case ExprKind::Ge: return lhs >= rhs;
          case ExprKind::Eq: return lhs == rhs;
          case ExprKind::Ne: return !(lhs == rhs);
          default: throw EvalError("not a comparison");
        }
      }
    }
  }

  Value eval(const Expr& e) {
    switch (e.kind) {
      case ExprKind::IntLit:
        return Value(e.intValue);
      case ExprKind::Var:
        return lookup(e.var);
      case ExprKind::Neg:
        return Value(-evalInt(*e.args[0]));
      case ExprKind::Add:
        return Value(evalInt(*e.args[0]) + evalInt(*e.args[1]));
      case ExprKind::Sub:
        return Value(evalInt(*e.args[0]) - evalInt(*e.args[1]));
      case ExprKind::Mul:
        return Value(evalInt(*e.args[0]) * evalInt(*e.args[1]));
      case ExprKind::SeqSize: {
        const Value& v = lookup(e.var);
        if (!v.isSeq()) throw EvalError("size() on a non-sequence value");
        return Value(BigInt(static_cast<long long>(v.asSeq().size())));
      }
      case ExprKind::SeqInsert: {
        BigInt item = evalInt(*e.args[0]);
        const Value& v = lookup(e.var);
        if (!v.isSeq()) throw EvalError("insert() on a non-sequence value");
        IntSeq seq = v.asSeq();
        seq.push_back(item);
        return Value(std::move(seq));
      }
      case ExprKind::SeqDelete: {
        // Multiset delete: removes one occurrence, no-op when absent.
        BigInt item = evalInt(*e.args[0]);
        const Value& v = lookup(e.var);
        if (!v.isSeq()) throw EvalError("delete() on a non-sequence value");
        IntSeq seq = v.asSeq();
        for (auto it = seq.begin(); it != seq.end(); ++it) {
          if (*it == item) {
            seq.erase(it);
            break;
          }
        }
        return Value(std::move(seq));
      }
      default:
        // Boolean expressions have no first-class value in the mini-language.
        return Value(BigInt(evalBool(e) ? 1 : 0));
    }
  }

  void exec(const Stmt& s) {
    if (!running()) return;
    switch (s.kind) {
      case StmtKind::Block:
        for (const auto& c : s.body) {
          exec(*c);
          if (!running()) return;
        }
        return;
      case StmtKind::Skip:
        chargeStep();
        note(s);
        return;
      default:
        break;
    }
    chargeStep();
    if (!running()) return;
    note(s);
    current_ = s.origin;
    try {
      switch (s.kind) {
        case StmtKind::Assume: {
          if (!evalBool(*s.expr)) {
            state_.status = RunStatus::BlockedAssume;
          }
          break;
        }
        case StmtKind::Assign: {
          Value v = eval(*s.expr);
          noteWrite(s.target);
          state_.env[s.target] = std::move(v);
          break;
        }
        case StmtKind::Read: {
          if (state_.inputQueue.empty()) {
            state_.status = RunStatus::Error;
            state_.error = "read from an empty input queue";
            break;
          }
          noteWrite(s.target);
          state_.env[s.target] = Value(state_.inputQueue.front());
          state_.inputQueue.pop_front();
          break;
        }
        case StmtKind::Write:
          state_.outputLog.push_back(evalInt(*s.expr));
          break;
        case StmtKind::If: {
          bool b = evalBool(*s.expr);
          current_ = kNoId;
          if (b) {
            exec(*s.thenBranch);
          } else if (s.elseBranch) {
            exec(*s.elseBranch);
          }
          break;
        }
        case StmtKind::While: {
          while (running() && evalBool(*s.expr)) {
            current_ = kNoId;
            exec(*s.loopBody);
            if (!running()) return;
            chargeStep();
            if (!running()) return;
            note(s);  // each re-evaluation of the condition is a visit
            current_ = s.origin;
          }
          break;
        }
        default:
          break;
      }
    } catch (const EvalError& err) {
      state_.status = RunStatus::Error;
      state_.error = err.what();
    }
    current_ = kNoId;
  }

  ConcreteState& state_;
  std::uint64_t budget_;
  RunTrace* trace_;
  NodeId current_ = kNoId;
};

}  // namespace

ConcreteState runConcrete(const Stmt& program, ConcreteState init,
                          std::uint64_t stepBudget, RunTrace* trace) {
  Interp interp(init, stepBudget, trace);
  interp.run(program);
  return init;
}

}  // namespace slicevc::mini
