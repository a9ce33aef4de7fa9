#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "slicevc/cfg/cfg.hpp"

namespace slicevc {

/// Fixed-capacity bitset over CFG node ids, with set-equality semantics.
class CoverageSet {
public:
  CoverageSet() = default;
  explicit CoverageSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

  void insert(CfgId id) { words_[id >> 6] |= 1ull << (id & 63); }
  bool contains(CfgId id) const { return (words_[id >> 6] >> (id & 63)) & 1; }
  bool containsAll(const CoverageSet& other) const;
  std::size_t count() const;
  std::set<CfgId> toSet() const;

  bool operator==(const CoverageSet& other) const = default;
  bool operator<(const CoverageSet& other) const { return words_ < other.words_; }
  std::size_t hash() const;

private:
  std::vector<std::uint64_t> words_;
};

/// A representative entry-to-exit walk standing for every path with the same
/// node coverage.
struct Partition {
  std::vector<CfgId> reprPath;
  CoverageSet coverage;
  std::uint32_t discoveryIndex = 0;
};

struct PartitionResult {
  std::vector<Partition> partitions;
  bool capped = false;
  std::uint64_t visitSteps = 0;
  std::vector<std::string> diagnostics;
};

/// Depth-first path enumeration with coverage-prefix pruning. A branch is cut
/// when the pair (node, coverage-after-visiting-node) has been seen before;
/// the continuation behavior from such a configuration is fully determined by
/// the pair, so pruning loses no coverage class. Successors are explored in
/// stored edge order (true branch first), making the output deterministic.
PartitionResult genPartitions(const Cfg& cfg, std::size_t maxPartitions = 4096);

/// Independent oracle: exhaustively enumerates entry-to-exit walks taking
/// each back-edge at most loopBound times and returns the distinct coverage
/// sets. Aborts (throws) past the walk budget.
std::set<CoverageSet> coverageOracle(const Cfg& cfg, int loopBound,
                                     std::uint64_t walkBudget = 4000000);

/// The loop bound the properties use: CONDs inside the deepest loop plus one.
int oracleLoopBound(const Cfg& cfg);

}  // namespace slicevc
