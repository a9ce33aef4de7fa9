#include "slicevc/partition/partition.hpp"

#include <bit>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace slicevc {

bool CoverageSet::containsAll(const CoverageSet& other) const {
  for (std::size_t i = 0; i < other.words_.size(); ++i) {
    std::uint64_t w = other.words_[i];
    if ((i < words_.size() ? (w & ~words_[i]) : w) != 0) return false;
  }
  return true;
}

std::size_t CoverageSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::set<CfgId> CoverageSet::toSet() const {
  std::set<CfgId> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int bit = std::countr_zero(w);
      out.insert(static_cast<CfgId>(i * 64 + static_cast<std::size_t>(bit)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t CoverageSet::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::uint64_t w : words_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

struct PairHash {
  std::size_t operator()(const std::pair<CfgId, CoverageSet>& p) const {
    return p.second.hash() * 31 + p.first;
  }
};

}  // namespace

PartitionResult genPartitions(const Cfg& cfg, std::size_t maxPartitions) {
  PartitionResult out;
  if (cfg.node(cfg.entry).cannotReachExit) {
    out.diagnostics.push_back("exit is unreachable from entry; no partitions");
    return out;
  }
  std::unordered_set<std::pair<CfgId, CoverageSet>, PairHash> seen;

  struct Frame {
    CfgId node;
    CoverageSet covBefore;
    std::size_t nextSucc = 0;
  };
  std::vector<Frame> stack;
  std::vector<CfgId> path;
  CoverageSet cov(cfg.size());

  auto push = [&](CfgId node) -> bool {
    // Returns false when pruned.
    CoverageSet covAfter = cov;
    covAfter.insert(node);
    ++out.visitSteps;
    if (!seen.insert({node, covAfter}).second) return false;
    stack.push_back({node, cov, 0});
    path.push_back(node);
    cov = std::move(covAfter);
    return true;
  };

  if (!push(cfg.entry)) return out;
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.node == cfg.exit && top.nextSucc == 0) {
      if (out.partitions.size() >= maxPartitions) {
        out.capped = true;
        out.diagnostics.push_back("partition cap reached");
        return out;
      }
      Partition p;
      p.reprPath = path;
      p.coverage = cov;
      p.discoveryIndex = static_cast<std::uint32_t>(out.partitions.size());
      out.partitions.push_back(std::move(p));
      // exit has no successors; fall through to pop
    }
    const std::vector<CfgId>& succ = cfg.node(top.node).succ;
    if (top.nextSucc >= succ.size()) {
      cov = top.covBefore;
      path.pop_back();
      stack.pop_back();
      continue;
    }
    CfgId next = succ[top.nextSucc++];
    push(next);
  }
  return out;
}

std::set<CoverageSet> coverageOracle(const Cfg& cfg, int loopBound,
                                     std::uint64_t walkBudget) {
  std::set<CoverageSet> out;
  std::map<std::pair<CfgId, CfgId>, int> backCount;
  std::uint64_t steps = 0;

  std::function<void(CfgId, CoverageSet)> walk = [&](CfgId node, CoverageSet cov) {
    if (++steps > walkBudget)
      throw std::runtime_error("coverage oracle walk budget exceeded");
    cov.insert(node);
    if (node == cfg.exit) {
      out.insert(cov);
      return;
    }
    for (CfgId s : cfg.node(node).succ) {
      auto edge = std::make_pair(node, s);
      bool isBack = cfg.backEdges.count(edge) > 0;
      if (isBack) {
        int& c = backCount[edge];
        if (c >= loopBound) continue;
        ++c;
        walk(s, cov);
        --c;
      } else {
        walk(s, cov);
      }
    }
  };
  walk(cfg.entry, CoverageSet(cfg.size()));
  return out;
}

int oracleLoopBound(const Cfg& cfg) {
  int best = 0;
  for (const auto& [head, range] : cfg.loopBodyRanges) {
    int conds = 0;
    for (CfgId i = range.first; i <= range.second && i < cfg.size(); ++i) {
      if (cfg.node(i).kind == CfgKind::Cond) ++conds;
    }
    best = std::max(best, conds);
  }
  return best + 1;
}

}  // namespace slicevc
