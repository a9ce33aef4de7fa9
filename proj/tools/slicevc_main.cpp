#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "slicevc/cfg/cfg.hpp"
#include "slicevc/driver/analyze.hpp"
#include "slicevc/driver/bench.hpp"
#include "slicevc/frontend/annotations.hpp"

namespace {

using namespace slicevc;

struct CommonArgs {
  std::string lang;
  std::string pre;
  std::string post;
  std::vector<std::string> postVars;
  std::string endpoint;
  std::string model;
  std::string credentialEnv = "SLICEVC_API_KEY";
  std::string mockScript;
  std::size_t maxPartitions = 4096;
  int parallel = 1;
  bool exhaustive = false;
  std::string emitSlices;
  std::string reportPath;
  std::string emitCfg;
  std::string emitPartitions;
  double temperature = 0.0;
  int retries = 2;
  int timeoutSec = 60;
  int bestOfK = 1;
};

void addOracleOptions(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--endpoint", args.endpoint, "chat-completions endpoint URL");
  cmd->add_option("--model", args.model, "model name");
  cmd->add_option("--credential-env", args.credentialEnv,
                  "environment variable holding the API key");
  cmd->add_option("--mock-oracle", args.mockScript,
                  "JSON file scripting fingerprint -> PASS/FAIL");
  cmd->add_option("--temperature", args.temperature, "sampling temperature");
  cmd->add_option("--retries", args.retries, "retries per query");
  cmd->add_option("--timeout", args.timeoutSec, "per-query timeout in seconds");
  cmd->add_option("--best-of", args.bestOfK, "odd sample count for majority voting");
  cmd->add_option("--parallel", args.parallel, "bounded query look-ahead");
}

void addAnalysisOptions(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--lang", args.lang, "language tag (default: from extension)");
  cmd->add_option("--pre", args.pre, "pre-condition (overrides in-file PRE)");
  cmd->add_option("--post", args.post, "post-condition (overrides in-file POST)");
  cmd->add_option("--post-vars", args.postVars, "explicit slicing criterion variables")
      ->delimiter(',');
  cmd->add_option("--max-partitions", args.maxPartitions, "partition emission cap");
  cmd->add_option("--emit-slices", args.emitSlices, "directory for rendered slices");
  cmd->add_option("--report", args.reportPath, "write the JSON report here");
  cmd->add_option("--emit-cfg", args.emitCfg, "write the CFG in dot format here");
  cmd->add_option("--emit-partitions", args.emitPartitions,
                  "write partitions as a JSON array of node-id lists");
  cmd->add_flag("--exhaustive", args.exhaustive, "query every slice, no short-circuit");
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string languageOf(const CommonArgs& args, const std::string& path) {
  if (!args.lang.empty()) return args.lang;
  std::string ext = std::filesystem::path(path).extension().string();
  if (!ext.empty() && ext.front() == '.') ext = ext.substr(1);
  auto tag = AdapterRegistry::instance().languageForExtension(ext);
  if (!tag) throw std::runtime_error("cannot infer language for ." + ext + "; use --lang");
  return *tag;
}

std::unique_ptr<Oracle> makeOracle(const CommonArgs& args) {
  if (!args.mockScript.empty())
    return std::make_unique<MockOracle>(MockOracle::scriptFromFile(args.mockScript));
  if (args.endpoint.empty())
    throw std::runtime_error("no oracle configured: pass --endpoint or --mock-oracle");
  OracleConfig cfg;
  cfg.endpoint = args.endpoint;
  cfg.model = args.model;
  cfg.credentialEnvVar = args.credentialEnv;
  cfg.temperature = args.temperature;
  cfg.maxRetries = args.retries;
  cfg.parallelism = args.parallel;
  cfg.timeoutSec = args.timeoutSec;
  cfg.bestOfK = args.bestOfK;
  return std::make_unique<HttpOracle>(cfg);
}

Limits makeLimits(const CommonArgs& args) {
  Limits limits;
  limits.maxPartitions = args.maxPartitions;
  limits.exhaustive = args.exhaustive;
  limits.parallel = args.parallel;
  limits.emitSlicesDir = args.emitSlices;
  limits.emitPartitionsFile = args.emitPartitions;
  return limits;
}

HoareSpec makeSpec(const CommonArgs& args, const SourceUnit& unit) {
  HoareSpec spec;
  spec.pre = args.pre;
  spec.post = args.post;
  spec.postVars = args.postVars;
  HoareAnnotations notes = extractAnnotations(unit);
  if (spec.pre.empty() && notes.pre) spec.pre = *notes.pre;
  if (spec.post.empty() && notes.post) spec.post = *notes.post;
  if (spec.post.empty()) throw std::runtime_error("no post-condition");
  return spec;
}

void writeReport(const CommonArgs& args, const AnalysisReport& report) {
  if (args.reportPath.empty()) return;
  std::ofstream out(args.reportPath);
  out << report.toJson().dump(2) << "\n";
}

int runAnalyze(const CommonArgs& args, const std::string& file) {
  std::string language = languageOf(args, file);
  SourceUnit unit = parseUnit(readFile(file), language, file);
  const GrammarAdapter& adapter = AdapterRegistry::instance().get(language);
  if (!args.emitCfg.empty()) {
    Cfg cfg = buildCfg(unit, adapter);
    std::ofstream(args.emitCfg) << toDot(cfg, unit);
  }
  HoareSpec spec = makeSpec(args, unit);
  std::unique_ptr<Oracle> oracle = makeOracle(args);
  AnalysisReport report = analyze(unit, adapter, spec, *oracle, makeLimits(args));
  writeReport(args, report);
  std::cout << "verdict: " << verdictName(report.verdict) << "\n";
  if (report.verdict == AnalysisReport::Verdict::Counterexample) {
    std::cout << "least counterexample slice ("
              << report.slices[report.counterexampleIndex].tokenCount << " tokens):\n"
              << report.counterexampleText << "\n";
  }
  std::cout << "slices: " << report.totalSlices << "  queries: " << report.totalQueries
            << "  tokens: " << report.totalTokens << " (" << report.tokenizerName
            << ")\n";
  for (const std::string& w : report.warnings) std::cerr << "note: " << w << "\n";
  return 0;
}

int runSlices(const CommonArgs& args, const std::string& file) {
  std::string language = languageOf(args, file);
  SourceUnit unit = parseUnit(readFile(file), language, file);
  const GrammarAdapter& adapter = AdapterRegistry::instance().get(language);
  if (!args.emitCfg.empty()) {
    Cfg cfg = buildCfg(unit, adapter);
    std::ofstream(args.emitCfg) << toDot(cfg, unit);
  }
  HoareSpec spec = makeSpec(args, unit);

  Cfg cfg = buildCfg(unit, adapter);
  PartitionResult parts = genPartitions(cfg, args.maxPartitions);
  std::set<std::string> criterion = deriveCriterion(spec, unit, cfg);
  std::string dir = args.emitSlices.empty() ? "slices" : args.emitSlices;
  std::filesystem::create_directories(dir);
  int emitted = 0;
  std::set<std::string> seen;
  for (const Partition& p : parts.partitions) {
    SliceProgram trunc = truncate(cfg, unit, adapter, p);
    if (trunc.vacuous) continue;
    SliceProgram sliced = backSlice(std::move(trunc), cfg, unit, adapter, criterion);
    RenderedSlice rendered = renderSlice(sliced, unit, cfg, adapter);
    if (!seen.insert(rendered.fingerprint).second) continue;
    std::string stem = dir + "/slice_" + std::to_string(emitted);
    std::ofstream(stem + ".txt") << rendered.text;
    std::vector<CfgId> kept(sliced.keptNodes.begin(), sliced.keptNodes.end());
    nlohmann::json meta = {{"partition", p.discoveryIndex},
                           {"keptNodes", kept},
                           {"stmtCount", rendered.stmtCount},
                           {"tokenCount", rendered.tokenCount},
                           {"tokenizer", rendered.tokenizerName},
                           {"fingerprint", rendered.fingerprint}};
    std::ofstream(stem + ".json") << meta.dump(2) << "\n";
    ++emitted;
  }
  std::cout << "wrote " << emitted << " slices to " << dir << "\n";
  return 0;
}

int runBenchCmd(const CommonArgs& args, const std::string& manifest) {
  std::unique_ptr<Oracle> oracle = makeOracle(args);
  BenchResult result = runBench(manifest, *oracle, makeLimits(args));
  std::cout << result.table();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"slicevc: decompose a Hoare triple into coverage-distinct truncated "
               "slices and check each against an LLM oracle"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string file, manifest;

  CLI::App* analyzeCmd = app.add_subcommand("analyze", "analyze one source file");
  analyzeCmd->add_option("file", file, "source file")->required();
  addAnalysisOptions(analyzeCmd, args);
  addOracleOptions(analyzeCmd, args);

  CLI::App* slicesCmd =
      app.add_subcommand("slices", "emit rendered slices without querying any oracle");
  slicesCmd->add_option("file", file, "source file")->required();
  addAnalysisOptions(slicesCmd, args);

  CLI::App* benchCmd =
      app.add_subcommand("bench", "run a manifest of subjects with expected verdicts");
  benchCmd->add_option("manifest", manifest, "JSON manifest")->required();
  addOracleOptions(benchCmd, args);
  benchCmd->add_option("--max-partitions", args.maxPartitions, "partition emission cap");
  benchCmd->add_flag("--exhaustive", args.exhaustive, "query every slice");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (analyzeCmd->parsed()) return runAnalyze(args, file);
    if (slicesCmd->parsed()) return runSlices(args, file);
    if (benchCmd->parsed()) return runBenchCmd(args, manifest);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
