#include "slicevc/driver/bench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slicevc/frontend/annotations.hpp"

namespace slicevc {

using nlohmann::json;

std::vector<BenchEntry> loadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open bench manifest: " + path);
  json j = json::parse(in);
  std::vector<BenchEntry> out;
  for (const json& item : j) {
    BenchEntry e;
    e.file = item.value("file", "");
    e.language = item.value("language", "");
    e.pre = item.value("pre", "");
    e.post = item.value("post", "");
    e.expected = item.value("expected", "");
    out.push_back(std::move(e));
  }
  return out;
}

std::string BenchResult::table() const {
  std::ostringstream out;
  out << "subject                        expected         got              ok\n";
  for (const BenchCase& c : cases) {
    std::string name = std::filesystem::path(c.entry.file).filename().string();
    name.resize(30, ' ');
    std::string exp = c.entry.expected;
    exp.resize(16, ' ');
    std::string got = c.got;
    got.resize(16, ' ');
    out << name << " " << exp << " " << got << " " << (c.correct ? "yes" : "NO") << "\n";
  }
  out << "Total: " << total << "  Correct: " << correct << "  Accuracy: ";
  if (total > 0) {
    out << (100.0 * correct / total) << "%";
  } else {
    out << "n/a";
  }
  out << "\n";
  return out.str();
}

BenchResult runBench(const std::string& manifestPath, Oracle& oracle,
                     const Limits& limits, const Tokenizer* tokenizer) {
  namespace fs = std::filesystem;
  BenchResult result;
  fs::path baseDir = fs::path(manifestPath).parent_path();
  for (const BenchEntry& entry : loadManifest(manifestPath)) {
    fs::path file = baseDir / entry.file;
    std::ifstream in(file);
    if (!in) throw std::runtime_error("bench subject missing: " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();

    SourceUnit unit = parseUnit(buf.str(), entry.language, file.string());
    HoareSpec spec;
    spec.pre = entry.pre;
    spec.post = entry.post;
    HoareAnnotations notes = extractAnnotations(unit);
    if (spec.pre.empty() && notes.pre) spec.pre = *notes.pre;
    if (spec.post.empty() && notes.post) spec.post = *notes.post;
    if (spec.post.empty())
      throw std::runtime_error("bench subject has no post-condition: " + file.string());

    const GrammarAdapter& adapter = AdapterRegistry::instance().get(entry.language);
    AnalysisReport report = analyze(unit, adapter, spec, oracle, limits, tokenizer);

    BenchCase c;
    c.entry = entry;
    c.got = verdictName(report.verdict);
    c.correct = c.got == entry.expected;
    result.cases.push_back(std::move(c));
    result.total += 1;
    result.correct += result.cases.back().correct ? 1 : 0;
  }
  return result;
}

}  // namespace slicevc
