#include "slicevc/driver/analyze.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>

#include "slicevc/cfg/cfg.hpp"

namespace slicevc {

using nlohmann::json;

const char* verdictName(AnalysisReport::Verdict v) {
  switch (v) {
    case AnalysisReport::Verdict::Holds: return "HOLDS";
    case AnalysisReport::Verdict::Counterexample: return "COUNTEREXAMPLE";
    case AnalysisReport::Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

json AnalysisReport::toJson() const {
  json slicesJson = json::array();
  for (const SliceRecord& r : slices) {
    slicesJson.push_back({{"partition", r.partition},
                          {"stmtCount", r.stmtCount},
                          {"tokenCount", r.tokenCount},
                          {"outcome", r.outcome},
                          {"errorKind", r.errorKind},
                          {"latencyMs", r.latencyMs},
                          {"fingerprint", r.fingerprint}});
  }
  json out = {
      {"schema", "slicevc.report.v1"},
      {"verdict", verdictName(verdict)},
      {"tokenizer", tokenizerName},
      {"slices", slicesJson},
      {"totals",
       {{"slices", totalSlices}, {"queries", totalQueries}, {"tokens", totalTokens}}},
      {"warnings", warnings},
  };
  if (verdict == Verdict::Counterexample) {
    out["counterexample"] = {{"fingerprint", counterexampleFingerprint},
                             {"sliceIndex", counterexampleIndex},
                             {"text", counterexampleText}};
  } else {
    out["counterexample"] = nullptr;
  }
  return out;
}

namespace {

bool looksLikeCode(const std::string& post) {
  return post.find_first_of("()[]{}<>=!+-*/.&|") != std::string::npos;
}

const std::set<std::string>& literalWords() {
  static const std::set<std::string> kLits = {"true", "false", "True", "False",
                                              "NULL", "None", "null", "nil"};
  return kLits;
}

// Identifiers of a code post-condition; names directly after '.' or '->'
// are member accesses, recorded separately.
void splitCodeIdents(const std::string& post, std::set<std::string>& idents,
                     std::set<std::string>& members) {
  std::size_t i = 0;
  while (i < post.size()) {
    char c = post[i];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < post.size() && (std::isalnum(static_cast<unsigned char>(post[i])) ||
                                 post[i] == '_'))
        ++i;
      std::string word = post.substr(start, i - start);
      bool member = false;
      if (start > 0 && post[start - 1] == '.') member = true;
      if (start > 1 && post[start - 2] == '-' && post[start - 1] == '>') member = true;
      if (literalWords().count(word)) continue;
      (member ? members : idents).insert(word);
      continue;
    }
    ++i;
  }
}

std::set<std::string> programVariables(const SourceUnit& unit, const Cfg& cfg) {
  std::set<std::string> vars;
  for (const CfgNode& n : cfg.nodes) {
    vars.insert(n.defs.begin(), n.defs.end());
    vars.insert(n.uses.begin(), n.uses.end());
  }
  for (const auto& [name, ids] : unit.symbolIndex()) {
    if (!ids.empty()) vars.insert(name);
  }
  // Parameters of the analyzed function.
  if (cfg.functionRoot != kNoNode) {
    for (UnifiedId c : unit.node(cfg.functionRoot).children) {
      const UnifiedNode& n = unit.node(c);
      if (n.kind == NodeKind::Declaration && !n.nameHint.empty())
        vars.insert(n.nameHint);
    }
  }
  return vars;
}

std::set<std::string> assignedVariables(const Cfg& cfg) {
  std::set<std::string> vars;
  for (const CfgNode& n : cfg.nodes) vars.insert(n.defs.begin(), n.defs.end());
  return vars;
}

}  // namespace

std::set<std::string> deriveCriterion(const HoareSpec& spec, const SourceUnit& unit,
                                      const Cfg& cfg, std::vector<std::string>* warnings) {
  auto warn = [&](const std::string& w) {
    if (warnings) warnings->push_back(w);
  };
  if (!spec.postVars.empty())
    return std::set<std::string>(spec.postVars.begin(), spec.postVars.end());

  std::set<std::string> vars = programVariables(unit, cfg);
  std::set<std::string> out;
  if (looksLikeCode(spec.post)) {
    std::set<std::string> idents, members;
    splitCodeIdents(spec.post, idents, members);
    for (const std::string& id : idents) {
      if (vars.count(id)) out.insert(id);
    }
    for (const std::string& m : members)
      warn("post-condition member name recorded but not a slice criterion: " + m);
  }
  if (out.empty()) {
    // Natural language (or punctuated prose): intersect word tokens with
    // known symbols, allowing prefix matches of at least three characters.
    std::size_t i = 0;
    while (i < spec.post.size()) {
      if (std::isalpha(static_cast<unsigned char>(spec.post[i]))) {
        std::size_t start = i;
        while (i < spec.post.size() &&
               (std::isalnum(static_cast<unsigned char>(spec.post[i])) ||
                spec.post[i] == '_'))
          ++i;
        std::string word = spec.post.substr(start, i - start);
        for (const std::string& v : vars) {
          bool match = word == v;
          if (!match && v.size() >= 3 && word.rfind(v, 0) == 0) match = true;
          if (!match && word.size() >= 3 && v.rfind(word, 0) == 0) match = true;
          if (match) out.insert(v);
        }
        continue;
      }
      ++i;
    }
  }
  if (out.empty()) {
    warn("no post-condition variable matched; falling back to all assigned variables");
    out = assignedVariables(cfg);
  }
  return out;
}

AnalysisReport analyze(const SourceUnit& unit, const GrammarAdapter& adapter,
                       const HoareSpec& spec, Oracle& oracle, const Limits& limits,
                       const Tokenizer* tokenizer) {
  AnalysisReport report;
  const Tokenizer& tok = tokenizer ? *tokenizer : defaultTokenizer();
  report.tokenizerName = tok.name();

  Cfg cfg = buildCfg(unit, adapter);
  PartitionResult parts = genPartitions(cfg, limits.maxPartitions);
  for (const std::string& d : parts.diagnostics) report.warnings.push_back(d);
  if (!limits.emitPartitionsFile.empty()) {
    json dump = json::array();
    for (const Partition& p : parts.partitions)
      dump.push_back(json{{"index", p.discoveryIndex}, {"path", p.reprPath}});
    std::ofstream(limits.emitPartitionsFile) << dump.dump(2) << "\n";
  }

  std::set<std::string> criterion = deriveCriterion(spec, unit, cfg, &report.warnings);

  struct Entry {
    std::uint32_t partition;
    RenderedSlice rendered;
    std::vector<CfgId> keptNodes;
  };
  std::vector<Entry> entries;
  std::set<std::string> seenFingerprints;
  RenderOptions ropts;
  ropts.tokenizer = &tok;

  for (const Partition& p : parts.partitions) {
    SliceProgram trunc = truncate(cfg, unit, adapter, p);
    if (trunc.vacuous) {
      SliceRecord rec;
      rec.partition = p.discoveryIndex;
      rec.outcome = "skipped-vacuous";
      report.slices.push_back(rec);
      report.warnings.push_back("partition " + std::to_string(p.discoveryIndex) +
                                " reduces to assume(0); skipped as vacuous");
      continue;
    }
    SliceProgram sliced = backSlice(std::move(trunc), cfg, unit, adapter, criterion);
    RenderedSlice rendered = renderSlice(sliced, unit, cfg, adapter, ropts);
    if (!seenFingerprints.insert(rendered.fingerprint).second) {
      SliceRecord rec;
      rec.partition = p.discoveryIndex;
      rec.outcome = "deduplicated";
      rec.fingerprint = rendered.fingerprint;
      rec.stmtCount = rendered.stmtCount;
      rec.tokenCount = rendered.tokenCount;
      report.slices.push_back(rec);
      continue;
    }
    Entry entry;
    entry.partition = p.discoveryIndex;
    entry.rendered = std::move(rendered);
    entry.keptNodes.assign(sliced.keptNodes.begin(), sliced.keptNodes.end());
    entries.push_back(std::move(entry));
  }

  // Least-counterexample order: token count, then statement count, then
  // discovery order for determinism.
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.rendered.tokenCount != b.rendered.tokenCount)
      return a.rendered.tokenCount < b.rendered.tokenCount;
    if (a.rendered.stmtCount != b.rendered.stmtCount)
      return a.rendered.stmtCount < b.rendered.stmtCount;
    return a.partition < b.partition;
  });
  report.totalSlices = entries.size();

  if (!limits.emitSlicesDir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(limits.emitSlicesDir);
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::string stem = limits.emitSlicesDir + "/slice_" + std::to_string(i);
      std::ofstream(stem + ".txt") << entries[i].rendered.text;
      json meta = {{"partition", entries[i].partition},
                   {"keptNodes", entries[i].keptNodes},
                   {"stmtCount", entries[i].rendered.stmtCount},
                   {"tokenCount", entries[i].rendered.tokenCount},
                   {"tokenizer", entries[i].rendered.tokenizerName},
                   {"fingerprint", entries[i].rendered.fingerprint}};
      std::ofstream(stem + ".json") << meta.dump(2) << "\n";
    }
  }

  // Query in size order with bounded look-ahead; aggregation stays in order,
  // so results are independent of completion order.
  bool sawFail = false;
  bool sawError = false;
  int window = std::max(1, limits.parallel);
  std::vector<std::future<Verdict>> inflight;
  std::size_t launched = 0;
  auto launchUpTo = [&](std::size_t bound) {
    while (launched < bound && launched < entries.size()) {
      Prompt prompt = buildPrompt(spec, entries[launched].rendered);
      inflight.push_back(std::async(window == 1 ? std::launch::deferred
                                                : std::launch::async,
                                    [&oracle, prompt] { return oracle.query(prompt); }));
      ++launched;
    }
  };

  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (sawFail && !limits.exhaustive) {
      SliceRecord rec;
      rec.partition = entries[i].partition;
      rec.stmtCount = entries[i].rendered.stmtCount;
      rec.tokenCount = entries[i].rendered.tokenCount;
      rec.fingerprint = entries[i].rendered.fingerprint;
      rec.outcome = "not-queried";
      report.slices.push_back(rec);
      continue;
    }
    launchUpTo(i + static_cast<std::size_t>(window));
    Verdict v = inflight[i].get();
    ++report.totalQueries;
    report.totalTokens += static_cast<std::size_t>(entries[i].rendered.tokenCount);
    SliceRecord rec;
    rec.partition = entries[i].partition;
    rec.stmtCount = entries[i].rendered.stmtCount;
    rec.tokenCount = entries[i].rendered.tokenCount;
    rec.fingerprint = entries[i].rendered.fingerprint;
    rec.outcome = outcomeName(v.outcome);
    rec.errorKind = v.errorKind == OracleErrorKind::None ? "" : errorKindName(v.errorKind);
    rec.latencyMs = v.latencyMs;
    report.slices.push_back(rec);
    if (v.outcome == Outcome::Fail && !sawFail) {
      sawFail = true;
      report.counterexampleIndex = static_cast<int>(report.slices.size()) - 1;
      report.counterexampleFingerprint = entries[i].rendered.fingerprint;
      report.counterexampleText = entries[i].rendered.text;
    }
    if (v.outcome == Outcome::Error) sawError = true;
  }

  report.verdict = sawFail ? AnalysisReport::Verdict::Counterexample
                   : sawError ? AnalysisReport::Verdict::Inconclusive
                              : AnalysisReport::Verdict::Holds;
  return report;
}

}  // namespace slicevc
