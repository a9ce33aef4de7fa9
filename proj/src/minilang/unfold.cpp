#include "slicevc/minilang/unfold.hpp"

#include <map>

#include "slicevc/minilang/print.hpp"

namespace slicevc::mini {

namespace {

// Pending work is a list of statements still to unfold, in order. While
// re-entries are represented by pointing at the same While node again.
using Pending = std::vector<const Stmt*>;

Pending withFront(const Stmt* first, const Pending& rest) {
  Pending out;
  out.reserve(rest.size() + 1);
  out.push_back(first);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

struct Unfolder {
  int loopBound;
  std::size_t maxPaths;
  UnfoldResult result;

  void go(const Pending& pending, std::vector<StmtPtr>& prefix,
          const std::map<NodeId, int>& loopCounts) {
    if (result.hitPathCap) return;
    if (pending.empty()) {
      if (result.paths.size() >= maxPaths) {
        result.hitPathCap = true;
        return;
      }
      LinearPath path;
      path.stmts.reserve(prefix.size());
      for (const auto& s : prefix) path.stmts.push_back(clone(*s));
      result.paths.push_back(std::move(path));
      return;
    }
    const Stmt& s = *pending.front();
    Pending rest(pending.begin() + 1, pending.end());
    switch (s.kind) {
      case StmtKind::Block: {
        Pending extended;
        extended.reserve(s.body.size() + rest.size());
        for (const auto& c : s.body) extended.push_back(c.get());
        extended.insert(extended.end(), rest.begin(), rest.end());
        go(extended, prefix, loopCounts);
        return;
      }
      case StmtKind::If: {
        // unfold(if b then C1 else C2, pi) branches on assume(b)/assume(!b).
        prefix.push_back(makeAssume(clone(*s.expr), s.origin, true));
        go(withFront(s.thenBranch.get(), rest), prefix, loopCounts);
        prefix.pop_back();

        prefix.push_back(makeAssume(makeNot(clone(*s.expr)), s.origin, true));
        if (s.elseBranch) {
          go(withFront(s.elseBranch.get(), rest), prefix, loopCounts);
        } else {
          go(rest, prefix, loopCounts);
        }
        prefix.pop_back();
        return;
      }
      case StmtKind::While: {
        auto it = loopCounts.find(s.origin);
        int taken = it == loopCounts.end() ? 0 : it->second;
        if (taken < loopBound) {
          // unfold(while b do C, pi) continues with C; while b do C.
          prefix.push_back(makeAssume(clone(*s.expr), s.origin, true));
          Pending bodyPending;
          bodyPending.reserve(rest.size() + 2);
          bodyPending.push_back(s.loopBody.get());
          bodyPending.push_back(&s);
          bodyPending.insert(bodyPending.end(), rest.begin(), rest.end());
          auto counts = loopCounts;
          counts[s.origin] = taken + 1;
          go(bodyPending, prefix, counts);
          prefix.pop_back();
        } else {
          result.hitLoopBound = true;
        }
        prefix.push_back(makeAssume(makeNot(clone(*s.expr)), s.origin, true));
        go(rest, prefix, loopCounts);
        prefix.pop_back();
        return;
      }
      default:
        prefix.push_back(clone(s));
        go(rest, prefix, loopCounts);
        prefix.pop_back();
        return;
    }
  }
};

std::size_t countFrom(const Pending& pending, int loopBound,
                      const std::map<NodeId, int>& counts) {
  if (pending.empty()) return 1;
  const Stmt& s = *pending.front();
  Pending rest(pending.begin() + 1, pending.end());
  switch (s.kind) {
    case StmtKind::Block: {
      Pending extended;
      for (const auto& c : s.body) extended.push_back(c.get());
      extended.insert(extended.end(), rest.begin(), rest.end());
      return countFrom(extended, loopBound, counts);
    }
    case StmtKind::If: {
      std::size_t thenCount = countFrom(withFront(s.thenBranch.get(), rest), loopBound, counts);
      std::size_t elseCount = s.elseBranch
                                  ? countFrom(withFront(s.elseBranch.get(), rest), loopBound, counts)
                                  : countFrom(rest, loopBound, counts);
      return thenCount + elseCount;
    }
    case StmtKind::While: {
      std::size_t total = 0;
      auto it = counts.find(s.origin);
      int taken = it == counts.end() ? 0 : it->second;
      if (taken < loopBound) {
        Pending bodyPending;
        bodyPending.push_back(s.loopBody.get());
        bodyPending.push_back(&s);
        bodyPending.insert(bodyPending.end(), rest.begin(), rest.end());
        auto inner = counts;
        inner[s.origin] = taken + 1;
        total += countFrom(bodyPending, loopBound, inner);
      }
      total += countFrom(rest, loopBound, counts);
      return total;
    }
    default:
      return countFrom(rest, loopBound, counts);
  }
}

}  // namespace

UnfoldResult unfoldBounded(const Stmt& program, int loopBound, std::size_t maxPaths) {
  Unfolder u{loopBound, maxPaths, {}};
  std::vector<StmtPtr> prefix;
  u.go({&program}, prefix, {});
  return std::move(u.result);
}

std::size_t countUnfoldPaths(const Stmt& program, int loopBound) {
  return countFrom({&program}, loopBound, {});
}

bool isLinear(const LinearPath& path) {
  for (const auto& s : path.stmts) {
    switch (s->kind) {
      case StmtKind::Skip:
      case StmtKind::Assume:
      case StmtKind::Assign:
      case StmtKind::Read:
      case StmtKind::Write:
        break;
      default:
        return false;
    }
  }
  return true;
}

std::string printPath(const LinearPath& path) {
  std::string out;
  for (const auto& s : path.stmts) out += printStmt(*s, 0);
  return out;
}

StmtPtr pathToProgram(const LinearPath& path) {
  auto block = makeStmt(StmtKind::Block);
  for (const auto& s : path.stmts) block->body.push_back(clone(*s));
  return block;
}

}  // namespace slicevc::mini
