#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "slicevc/driver/analyze.hpp"
#include "slicevc/driver/bench.hpp"
#include "slicevc/frontend/annotations.hpp"
#include "support/gen.hpp"

using namespace slicevc;
using nlohmann::json;

namespace {

std::string fixturePath(const std::string& name) {
  return std::string(SLICEVC_FIXTURE_DIR) + "/" + name;
}

std::string readFixture(const std::string& name) {
  std::ifstream in(fixturePath(name));
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct Pipeline {
  SourceUnit unit;
  Cfg cfg;
  const GrammarAdapter* adapter;
  std::vector<RenderedSlice> slices;  // deduplicated, in discovery order
};

// Replays partition/truncate/slice/render to learn the slice fingerprints a
// mock script needs; the driver under test runs the same pipeline itself.
Pipeline renderAll(const std::string& src, const std::string& lang,
                   const HoareSpec& spec) {
  SourceUnit unit = parseUnit(src, lang);
  const GrammarAdapter& adapter = AdapterRegistry::instance().get(lang);
  Cfg cfg = buildCfg(unit, adapter);
  PartitionResult parts = genPartitions(cfg);
  std::set<std::string> criterion = deriveCriterion(spec, unit, cfg);
  Pipeline out{std::move(unit), std::move(cfg), &adapter, {}};
  std::set<std::string> seen;
  for (const Partition& p : parts.partitions) {
    SliceProgram t = truncate(out.cfg, out.unit, adapter, p);
    if (t.vacuous) continue;
    SliceProgram s = backSlice(std::move(t), out.cfg, out.unit, adapter, criterion);
    RenderedSlice r = renderSlice(s, out.unit, out.cfg, adapter);
    if (seen.insert(r.fingerprint).second) out.slices.push_back(std::move(r));
  }
  return out;
}

const std::string kSizes =
    "# PRE: true\n"
    "if (a > 0) {\n"
    "  y := 1\n"
    "} else {\n"
    "  y := a * a + a\n"
    "}\n"
    "if (b > 0) {\n"
    "  y := y + 1\n"
    "} else {\n"
    "  y := y * y * y + b * b\n"
    "}\n"
    "# POST: y > 0\n";

}  // namespace

TEST_CASE("criterion: identifiers of a code post-condition, members excluded") {
  SourceUnit unit = parseUnit(readFixture("multiset_loop.mini"), "mini");
  Cfg cfg = buildCfg(unit, AdapterRegistry::instance().get("mini"));
  HoareSpec spec;
  spec.post = "xs.size() == n";
  CHECK(deriveCriterion(spec, unit, cfg) == std::set<std::string>{"xs", "n"});
}

TEST_CASE("criterion: member accesses are recorded but excluded") {
  std::string src =
      "void f(int db) {\n  // PRE: true\n  db = 1;\n  // POST: x\n}\n";
  SourceUnit unit = parseUnit(src, "c");
  Cfg cfg = buildCfg(unit, AdapterRegistry::instance().get("c"));
  HoareSpec spec;
  spec.post = "db->key != NULL";
  std::vector<std::string> warnings;
  CHECK(deriveCriterion(spec, unit, cfg, &warnings) == std::set<std::string>{"db"});
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("key") != std::string::npos);
}

TEST_CASE("criterion: natural language matches program variables by prefix") {
  SourceUnit unit = parseUnit("out := a\n", "mini");
  Cfg cfg = buildCfg(unit, AdapterRegistry::instance().get("mini"));
  HoareSpec spec;
  spec.post = "the output is sorted";
  CHECK(deriveCriterion(spec, unit, cfg) == std::set<std::string>{"out"});
}

TEST_CASE("criterion: explicit postVars win; empty matches fall back to all defs") {
  SourceUnit unit = parseUnit("out := a\nq := 2\n", "mini");
  Cfg cfg = buildCfg(unit, AdapterRegistry::instance().get("mini"));
  HoareSpec spec;
  spec.post = "the output is sorted";
  spec.postVars = {"q"};
  CHECK(deriveCriterion(spec, unit, cfg) == std::set<std::string>{"q"});

  HoareSpec vague;
  vague.post = "everything is wonderful";
  std::vector<std::string> warnings;
  CHECK(deriveCriterion(vague, unit, cfg, &warnings) ==
        std::set<std::string>{"out", "q"});
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("analyze: the scripted else-branch failure is the least counterexample") {
  std::string src = readFixture("branchy.mini");
  HoareSpec spec;
  spec.post = "z > y";
  Pipeline pipe = renderAll(src, "mini", spec);
  REQUIRE(pipe.slices.size() == 2);

  const RenderedSlice* thenSlice = nullptr;
  const RenderedSlice* elseSlice = nullptr;
  for (const RenderedSlice& r : pipe.slices) {
    if (r.text.find("x + 2") != std::string::npos) thenSlice = &r;
    if (r.text.find("x * y") != std::string::npos) elseSlice = &r;
  }
  REQUIRE(thenSlice != nullptr);
  REQUIRE(elseSlice != nullptr);
  CHECK(elseSlice->text.find("assume(!(x > y))") != std::string::npos);

  MockOracle mock({{thenSlice->fingerprint, Outcome::Pass},
                   {elseSlice->fingerprint, Outcome::Fail}});
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Counterexample);
  CHECK(report.counterexampleText.find("assume(!(x > y))") != std::string::npos);
  CHECK(report.counterexampleText.find("z := x * y") != std::string::npos);
}

TEST_CASE("analyze: straight-line program holds after exactly one query") {
  std::string src = "# PRE: true\nx := 1\ny := x + 1\n# POST: y > x\n";
  HoareSpec spec;
  spec.post = "y > x";
  Pipeline pipe = renderAll(src, "mini", spec);
  REQUIRE(pipe.slices.size() == 1);
  MockOracle mock({{pipe.slices[0].fingerprint, Outcome::Pass}});
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Holds);
  CHECK(report.totalQueries == 1);
}

TEST_CASE("analyze: an oracle error without any failure is inconclusive") {
  HoareSpec spec;
  spec.post = "y > 0";
  Pipeline pipe = renderAll(kSizes, "mini", spec);
  REQUIRE(pipe.slices.size() == 4);
  std::map<std::string, Outcome> script;
  for (const RenderedSlice& r : pipe.slices) script[r.fingerprint] = Outcome::Pass;
  script[pipe.slices[2].fingerprint] = Outcome::Error;
  MockOracle mock(script);
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Inconclusive);
  CHECK(report.totalQueries == 4);
}

TEST_CASE("analyze: queries run in size order and stop at the first failure") {
  HoareSpec spec;
  spec.post = "y > 0";
  Pipeline pipe = renderAll(kSizes, "mini", spec);
  REQUIRE(pipe.slices.size() == 4);

  // Scripted failure on a mid-sized slice, chosen by token count.
  std::vector<const RenderedSlice*> bySize;
  for (const RenderedSlice& r : pipe.slices) bySize.push_back(&r);
  std::sort(bySize.begin(), bySize.end(), [](auto* a, auto* b) {
    return a->tokenCount < b->tokenCount;
  });
  const RenderedSlice* failing = bySize[2];
  std::map<std::string, Outcome> script;
  for (const RenderedSlice& r : pipe.slices) script[r.fingerprint] = Outcome::Pass;
  script[failing->fingerprint] = Outcome::Fail;

  MockOracle mock(script);
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Counterexample);
  CHECK(report.counterexampleFingerprint == failing->fingerprint);

  // The mock saw nondecreasing token counts and nothing after the failure.
  std::vector<std::string> log = mock.callLog();
  REQUIRE(log.size() == 3);
  CHECK(log.back() == failing->fingerprint);
  int last = -1;
  for (const std::string& fp : log) {
    int tokens = -1;
    for (const RenderedSlice& r : pipe.slices)
      if (r.fingerprint == fp) tokens = r.tokenCount;
    CHECK(tokens >= last);
    last = tokens;
  }
  // Smaller scripted-PASS slices were all tried before the failure: the
  // counterexample is minimal.
  CHECK(bySize[0]->fingerprint == log[0]);
  CHECK(bySize[1]->fingerprint == log[1]);

  // Unqueried slices are reported as such.
  int notQueried = 0;
  for (const SliceRecord& rec : report.slices) notQueried += rec.outcome == "not-queried";
  CHECK(notQueried == 1);

  // --exhaustive audits everything.
  MockOracle mock2(script);
  Limits limits;
  limits.exhaustive = true;
  AnalysisReport full = analyze(pipe.unit, *pipe.adapter, spec, mock2, limits);
  CHECK(full.totalQueries == 4);
  CHECK(full.verdict == AnalysisReport::Verdict::Counterexample);
  CHECK(full.counterexampleFingerprint == failing->fingerprint);
}

TEST_CASE("analyze: byte-identical slices are deduplicated before querying") {
  std::string src =
      "# PRE: true\n"
      "if (a > 0) {\n"
      "  t := 1\n"
      "} else {\n"
      "  t := 2\n"
      "}\n"
      "y := 5\n"
      "# POST: y > 0\n";
  HoareSpec spec;
  spec.post = "y > 0";
  Pipeline pipe = renderAll(src, "mini", spec);
  REQUIRE(pipe.slices.size() == 1);  // both partitions slice to `y := 5`
  MockOracle mock({{pipe.slices[0].fingerprint, Outcome::Pass}});
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Holds);
  CHECK(report.totalQueries == 1);
  int deduped = 0;
  for (const SliceRecord& rec : report.slices) deduped += rec.outcome == "deduplicated";
  CHECK(deduped == 1);
}

TEST_CASE("analyze: report totals stay consistent and serialize with a schema") {
  HoareSpec spec;
  spec.post = "y > 0";
  Pipeline pipe = renderAll(kSizes, "mini", spec);
  std::map<std::string, Outcome> script;
  for (const RenderedSlice& r : pipe.slices) script[r.fingerprint] = Outcome::Pass;
  MockOracle mock(script);
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock);
  CHECK(report.verdict == AnalysisReport::Verdict::Holds);
  CHECK(report.totalQueries == pipe.slices.size());

  std::size_t tokenSum = 0;
  for (const SliceRecord& rec : report.slices) {
    if (rec.outcome == "PASS") tokenSum += static_cast<std::size_t>(rec.tokenCount);
  }
  CHECK(tokenSum == report.totalTokens);

  json j = report.toJson();
  CHECK(j["schema"] == "slicevc.report.v1");
  CHECK(j["verdict"] == "HOLDS");
  CHECK(j["counterexample"].is_null());
  CHECK(j["totals"]["queries"] == report.totalQueries);
}

TEST_CASE("analyze: bounded look-ahead respects the parallelism cap") {
  HoareSpec spec;
  spec.post = "y > 0";
  Pipeline pipe = renderAll(kSizes, "mini", spec);
  std::map<std::string, Outcome> script;
  for (const RenderedSlice& r : pipe.slices) script[r.fingerprint] = Outcome::Pass;
  MockOracle mock(script);
  Limits limits;
  limits.parallel = 2;
  AnalysisReport report = analyze(pipe.unit, *pipe.adapter, spec, mock, limits);
  CHECK(report.verdict == AnalysisReport::Verdict::Holds);
  CHECK(report.totalQueries == 4);
  CHECK(mock.maxInFlight() <= 2);
}

TEST_CASE("bench: a three-entry manifest scores 3/3 with a faithful oracle") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "slicevc_bench_test";
  fs::create_directories(dir);

  // Subjects: one refuted, two holding.
  std::map<std::string, Outcome> script;
  HoareSpec branchySpec;
  branchySpec.post = "z > y";
  Pipeline branchy = renderAll(readFixture("branchy.mini"), "mini", branchySpec);
  for (const RenderedSlice& r : branchy.slices) {
    script[r.fingerprint] = r.text.find("x * y") != std::string::npos ? Outcome::Fail
                                                                      : Outcome::Pass;
  }
  HoareSpec sizesSpec;
  sizesSpec.post = "y > 0";
  Pipeline sizes = renderAll(kSizes, "mini", sizesSpec);
  for (const RenderedSlice& r : sizes.slices) script[r.fingerprint] = Outcome::Pass;
  std::string straight = "# PRE: true\nx := 1\ny := x\n# POST: y == x\n";
  HoareSpec straightSpec;
  straightSpec.post = "y == x";
  Pipeline third = renderAll(straight, "mini", straightSpec);
  for (const RenderedSlice& r : third.slices) script[r.fingerprint] = Outcome::Pass;

  std::ofstream(dir / "sizes.mini") << kSizes;
  std::ofstream(dir / "straight.mini") << straight;
  json manifest = json::array({
      json{{"file", fixturePath("branchy.mini")},
           {"language", "mini"},
           {"expected", "COUNTEREXAMPLE"}},
      json{{"file", "sizes.mini"}, {"language", "mini"}, {"expected", "HOLDS"}},
      json{{"file", "straight.mini"}, {"language", "mini"}, {"expected", "HOLDS"}},
  });
  std::ofstream(dir / "manifest.json") << manifest.dump(2);

  MockOracle mock(script);
  BenchResult result = runBench((dir / "manifest.json").string(), mock);
  CHECK(result.total == 3);
  CHECK(result.correct == 3);
  std::string table = result.table();
  CHECK(table.find("Total: 3") != std::string::npos);
  CHECK(table.find("Accuracy: 100") != std::string::npos);
}

TEST_CASE("cli: exit codes distinguish success, analysis errors, and usage errors") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "slicevc_cli_test";
  fs::create_directories(dir);

  // Script every slice of the branchy program PASS.
  HoareSpec spec;
  spec.post = "z > y";
  Pipeline pipe = renderAll(readFixture("branchy.mini"), "mini", spec);
  json script;
  for (const RenderedSlice& r : pipe.slices) script[r.fingerprint] = "PASS";
  std::ofstream(dir / "script.json") << script.dump();

  std::string cli = SLICEVC_CLI_PATH;
  std::string report = (dir / "report.json").string();
  auto run = [&](const std::string& args) {
    std::string cmd = cli + " " + args + " > /dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
  };

  CHECK(run("analyze " + fixturePath("branchy.mini") + " --mock-oracle " +
            (dir / "script.json").string() + " --report " + report) == 0);
  std::ifstream in(report);
  REQUIRE(in.good());
  json j = json::parse(in);
  CHECK(j["verdict"] == "HOLDS");

  // No post-condition anywhere: analysis error.
  std::ofstream(dir / "nopost.mini") << "x := 1\n";
  CHECK(run("analyze " + (dir / "nopost.mini").string() + " --mock-oracle " +
            (dir / "script.json").string()) == 1);

  // Usage errors: unknown flags and missing subcommands.
  CHECK(run("analyze --definitely-not-a-flag") == 2);
  CHECK(run("") == 2);

  // Analyzing the multiset loop with an explicit post-condition.
  HoareSpec loopSpec;
  loopSpec.post = "xs.size() == n";
  Pipeline loop = renderAll(readFixture("multiset_loop.mini"), "mini", loopSpec);
  json loopScript;
  for (const RenderedSlice& r : loop.slices) loopScript[r.fingerprint] = "PASS";
  std::ofstream(dir / "loop_script.json") << loopScript.dump();
  std::string loopReport = (dir / "loop_report.json").string();
  CHECK(run("analyze " + fixturePath("multiset_loop.mini") + " --post \"xs.size() == n\"" +
            " --mock-oracle " + (dir / "loop_script.json").string() + " --report " +
            loopReport) == 0);
  std::ifstream loopIn(loopReport);
  REQUIRE(loopIn.good());
  CHECK(json::parse(loopIn)["verdict"] == "HOLDS");

  // The slices subcommand writes rendered slices without an oracle.
  fs::path slicesDir = dir / "slices";
  CHECK(run("slices " + fixturePath("branchy.mini") + " --emit-slices " +
            slicesDir.string()) == 0);
  CHECK(fs::exists(slicesDir / "slice_0.txt"));
  CHECK(fs::exists(slicesDir / "slice_0.json"));
}
