#pragma once

#include <string>
#include <vector>

#include "slicevc/driver/analyze.hpp"

namespace slicevc {

struct BenchEntry {
  std::string file;
  std::string language;
  std::string pre;
  std::string post;
  std::string expected;  // HOLDS or COUNTEREXAMPLE
};

struct BenchCase {
  BenchEntry entry;
  std::string got;
  bool correct = false;
};

struct BenchResult {
  std::vector<BenchCase> cases;
  int total = 0;
  int correct = 0;

  /// Total/Correct/Accuracy table, one row per subject plus a summary row.
  std::string table() const;
};

std::vector<BenchEntry> loadManifest(const std::string& path);

/// Runs analyze over every manifest entry. A subject counts as correct only
/// when the verdict matches the expectation exactly; INCONCLUSIVE is
/// incorrect. File paths resolve relative to the manifest.
BenchResult runBench(const std::string& manifestPath, Oracle& oracle,
                     const Limits& limits = {}, const Tokenizer* tokenizer = nullptr);

}  // namespace slicevc
