#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "slicevc/partition/partition.hpp"
#include "support/gen.hpp"

using namespace slicevc;

namespace {

std::string readFixture(const std::string& name) {
  std::ifstream in(std::string(SLICEVC_FIXTURE_DIR) + "/" + name);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Built {
  SourceUnit unit;
  Cfg cfg;
};

Built buildMini(const std::string& src) {
  SourceUnit unit = parseUnit(src, "mini");
  Cfg cfg = buildCfg(unit, AdapterRegistry::instance().get("mini"));
  return {std::move(unit), std::move(cfg)};
}

std::set<CoverageSet> familyOf(const PartitionResult& r) {
  std::set<CoverageSet> fam;
  for (const Partition& p : r.partitions) fam.insert(p.coverage);
  return fam;
}

void checkPartitionInvariants(const Cfg& cfg, const PartitionResult& r) {
  for (const Partition& p : r.partitions) {
    // coverage is exactly the set of path nodes.
    CoverageSet fromPath(cfg.size());
    for (CfgId id : p.reprPath) fromPath.insert(id);
    CHECK(fromPath == p.coverage);
    // The path is a real entry-to-exit walk.
    REQUIRE_FALSE(p.reprPath.empty());
    CHECK(p.reprPath.front() == cfg.entry);
    CHECK(p.reprPath.back() == cfg.exit);
    for (std::size_t i = 0; i + 1 < p.reprPath.size(); ++i) {
      const std::vector<CfgId>& succ = cfg.node(p.reprPath[i]).succ;
      CHECK(std::count(succ.begin(), succ.end(), p.reprPath[i + 1]) >= 1);
    }
  }
  // Pairwise distinct coverage.
  CHECK(familyOf(r).size() == r.partitions.size());
}

}  // namespace

TEST_CASE("a straight-line program is a single partition covering everything") {
  Built b = buildMini("x := 1\ny := 2\n");
  PartitionResult r = genPartitions(b.cfg);
  checkPartitionInvariants(b.cfg, r);
  REQUIRE(r.partitions.size() == 1);
  CHECK(r.partitions[0].coverage.count() == b.cfg.size());
}

TEST_CASE("a diamond gives exactly two partitions") {
  Built b = buildMini("if (x > 0) {\n  y := 1\n} else {\n  y := 2\n}\n");
  PartitionResult r = genPartitions(b.cfg);
  checkPartitionInvariants(b.cfg, r);
  CHECK(r.partitions.size() == 2);
  CHECK(familyOf(r) == coverageOracle(b.cfg, 1));
}

TEST_CASE("a single-statement loop body yields two coverage classes") {
  Built b = buildMini("while (a < 2) {\n  a := a + 1\n}\n");
  PartitionResult r = genPartitions(b.cfg);
  checkPartitionInvariants(b.cfg, r);
  CHECK(r.partitions.size() == 2);  // zero iterations; one or more iterations
  CHECK(familyOf(r) == coverageOracle(b.cfg, 2));
}

TEST_CASE("the multiset loop partitions into the four branch-coverage classes") {
  Built b = buildMini(readFixture("multiset_loop.mini"));
  PartitionResult r = genPartitions(b.cfg);
  checkPartitionInvariants(b.cfg, r);
  CHECK(r.partitions.size() == 4);
  CHECK(familyOf(r) == coverageOracle(b.cfg, oracleLoopBound(b.cfg)));

  // The zero-iteration partition is present: nothing inside the loop covered.
  CfgId readNode = kNoCfg;
  for (const CfgNode& n : b.cfg.nodes)
    if (n.kind == CfgKind::Stmt && n.defs.count("x")) readNode = n.id;
  REQUIRE(readNode != kNoCfg);
  bool sawZeroIteration = false;
  for (const Partition& p : r.partitions)
    if (!p.coverage.contains(readNode)) sawZeroIteration = true;
  CHECK(sawZeroIteration);
}

TEST_CASE("partition families equal the brute-force oracle on fuzzed programs") {
  testgen::Rng rng(307);
  testgen::GenOptions opts;
  opts.maxStmtsPerBlock = 3;
  opts.allowNestedLoops = true;
  int checked = 0;
  for (int i = 0; i < 600 && checked < 200; ++i) {
    Built b = buildMini(testgen::genProgram(rng, opts));
    if (b.cfg.size() > 10) continue;
    PartitionResult r = genPartitions(b.cfg);
    checkPartitionInvariants(b.cfg, r);
    std::set<CoverageSet> oracle = coverageOracle(b.cfg, oracleLoopBound(b.cfg));
    CHECK(familyOf(r) == oracle);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("termination: visit steps stay within the finiteness bound") {
  testgen::Rng rng(311);
  testgen::GenOptions opts;
  opts.maxStmtsPerBlock = 3;
  opts.allowNestedLoops = true;
  int checked = 0;
  for (int i = 0; i < 400 && checked < 150; ++i) {
    Built b = buildMini(testgen::genProgram(rng, opts));
    if (b.cfg.size() > 12) continue;
    PartitionResult r = genPartitions(b.cfg, 1u << 18);
    std::uint64_t bound = static_cast<std::uint64_t>(b.cfg.size()) *
                          (1ull << b.cfg.size()) * 2;  // each step may probe a seen pair
    CHECK(r.visitSteps <= bound);
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("identical input gives byte-identical partition lists") {
  Built b = buildMini(readFixture("multiset_loop.mini"));
  PartitionResult r1 = genPartitions(b.cfg);
  PartitionResult r2 = genPartitions(b.cfg);
  REQUIRE(r1.partitions.size() == r2.partitions.size());
  for (std::size_t i = 0; i < r1.partitions.size(); ++i) {
    CHECK(r1.partitions[i].reprPath == r2.partitions[i].reprPath);
    CHECK(r1.partitions[i].discoveryIndex == i);
  }
}

TEST_CASE("the emission cap trips with a diagnostic") {
  Built b = buildMini(
      "if (a > 0) {\n  x := 1\n} else {\n  x := 2\n}\n"
      "if (b > 0) {\n  y := 1\n} else {\n  y := 2\n}\n"
      "if (c > 0) {\n  z := 1\n} else {\n  z := 2\n}\n");
  PartitionResult full = genPartitions(b.cfg);
  CHECK(full.partitions.size() == 8);
  PartitionResult capped = genPartitions(b.cfg, 3);
  CHECK(capped.capped);
  CHECK(capped.partitions.size() == 3);
  CHECK_FALSE(capped.diagnostics.empty());
}

TEST_CASE("an unreachable exit yields no partitions and a diagnostic") {
  Cfg cfg;
  cfg.nodes.resize(3);
  for (CfgId i = 0; i < 3; ++i) cfg.nodes[i].id = i;
  cfg.entry = 0;
  cfg.exit = 1;
  cfg.nodes[0].kind = CfgKind::Entry;
  cfg.nodes[1].kind = CfgKind::Exit;
  cfg.nodes[2].kind = CfgKind::Stmt;
  cfg.nodes[0].succ = {2};
  cfg.nodes[2].succ = {2};
  cfg.nodes[0].cannotReachExit = true;
  cfg.nodes[2].cannotReachExit = true;
  PartitionResult r = genPartitions(cfg);
  CHECK(r.partitions.empty());
  CHECK_FALSE(r.diagnostics.empty());
}
