#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "slicevc/oracle/oracle.hpp"

namespace slicevc {

struct Limits {
  std::size_t maxPartitions = 4096;
  bool exhaustive = false;   // query everything instead of stopping at the first FAIL
  int parallel = 1;          // bounded look-ahead for oracle queries
  std::string emitSlicesDir; // when set, rendered slices + sidecar metadata land here
  std::string emitPartitionsFile;  // when set, partitions dump here as JSON
};

struct SliceRecord {
  std::uint32_t partition = 0;
  int stmtCount = 0;
  int tokenCount = 0;
  std::string outcome;  // PASS | FAIL | ERROR | skipped-vacuous | deduplicated | not-queried
  std::string errorKind;
  double latencyMs = 0;
  std::string fingerprint;
};

struct AnalysisReport {
  enum class Verdict { Holds, Counterexample, Inconclusive };
  Verdict verdict = Verdict::Holds;
  int counterexampleIndex = -1;  // index into slices
  std::string counterexampleFingerprint;
  std::string counterexampleText;
  std::vector<SliceRecord> slices;
  std::size_t totalSlices = 0;   // deduplicated, non-vacuous
  std::size_t totalQueries = 0;
  std::size_t totalTokens = 0;   // sum over queried slices
  std::vector<std::string> warnings;
  std::string tokenizerName;

  nlohmann::json toJson() const;
};

const char* verdictName(AnalysisReport::Verdict v);

/// vars(Q): explicit postVars win; code post-conditions contribute their
/// identifiers (method/field names after '.' or '->' are recorded but
/// excluded); natural-language post-conditions are word-matched against the
/// unit's symbols and variables. An empty result falls back to every
/// assigned variable, with a warning.
std::set<std::string> deriveCriterion(const HoareSpec& spec, const SourceUnit& unit,
                                      const Cfg& cfg,
                                      std::vector<std::string>* warnings = nullptr);

/// End-to-end analysis of one unit: partition, truncate, slice, render,
/// deduplicate, order by size, and query the oracle until refutation or
/// exhaustion. Vacuous slices (entire body unreachable) are skipped.
AnalysisReport analyze(const SourceUnit& unit, const GrammarAdapter& adapter,
                       const HoareSpec& spec, Oracle& oracle, const Limits& limits = {},
                       const Tokenizer* tokenizer = nullptr);

}  // namespace slicevc
