#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <string>
#include <vector>

#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

enum class RunStatus {
  Running,
  Done,
  BlockedAssume,  // an assume condition evaluated to false; terminal
  Error,          // type mismatch, undefined variable, empty input queue,
                  // or step budget exhausted
};

const char* statusName(RunStatus s);

struct ConcreteState {
  std::map<std::string, Value> env;
  std::deque<BigInt> inputQueue;   // consumed by read
  std::vector<BigInt> outputLog;   // produced by write
  RunStatus status = RunStatus::Running;
  std::string error;
};

/// Optional execution trace: which statements ran (by origin id, in order)
/// and the exact variables each statement read/wrote. Conditions of if/while
/// are attributed to the statement's own id.
struct RunTrace {
  std::vector<NodeId> visited;
  std::map<NodeId, std::set<std::string>> reads;
  std::map<NodeId, std::set<std::string>> writes;
};

/// Executes under the usual small-step semantics with a step budget. Each
/// statement execution (including each loop-condition evaluation) costs one
/// step; exhausting the budget yields status Error, distinguishing possible
/// non-termination from completion.
ConcreteState runConcrete(const Stmt& program, ConcreteState init,
                          std::uint64_t stepBudget, RunTrace* trace = nullptr);

}  // namespace slicevc::mini
