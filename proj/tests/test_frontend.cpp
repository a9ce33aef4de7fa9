#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "slicevc/frontend/annotations.hpp"
#include "slicevc/frontend/mini_adapter.hpp"
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

const UnifiedNode* findFirst(const SourceUnit& unit, NodeKind kind) {
  const UnifiedNode* found = nullptr;
  forEachNode(unit, unit.root(), [&](UnifiedId, const UnifiedNode& n) {
    if (!found && n.kind == kind) found = &n;
  });
  return found;
}

// Kind shape of an if node: condition-expr plus two blocks.
void checkIfShape(const SourceUnit& unit, const char* label) {
  INFO(label);
  const UnifiedNode* ifNode = findFirst(unit, NodeKind::If);
  REQUIRE(ifNode != nullptr);
  REQUIRE(ifNode->children.size() == 3);
  CHECK(unit.node(ifNode->children[0]).kind == NodeKind::ConditionExpr);
  CHECK(unit.node(ifNode->children[1]).kind == NodeKind::Block);
  CHECK(unit.node(ifNode->children[2]).kind == NodeKind::Block);
}

}  // namespace

TEST_CASE("an if-then-else parses to the same unified shape in every language") {
  checkIfShape(parseUnit("if (x > 0) {\n  y := 1\n} else {\n  y := 2\n}\n", "mini"),
               "mini");
  checkIfShape(parseUnit("if x > 0:\n    y = 1\nelse:\n    y = 2\n", "python"), "python");
  checkIfShape(parseUnit("if (x > 0) { y = 1; } else { y = 2; }\n", "c"), "c");
  checkIfShape(parseUnit("if (x > 0) { y = 1; } else { y = 2; }\n", "java"), "java");
}

TEST_CASE("empty file yields a root block with no children") {
  for (const char* lang : {"mini", "python", "c"}) {
    SourceUnit unit = parseUnit("", lang);
    INFO(lang);
    CHECK(unit.node(unit.root()).kind == NodeKind::Block);
    CHECK(unit.node(unit.root()).children.empty());
  }
}

TEST_CASE("unparseable noise degrades to one opaque node spanning the file") {
  std::string noise = "$$$ ??? @@@ ;;; %%%\n^^^ ~~ ``\n";
  SourceUnit unit = parseUnit(noise, "mini");
  const UnifiedNode& root = unit.node(unit.root());
  REQUIRE(root.children.size() == 1);
  const UnifiedNode& blob = unit.node(root.children[0]);
  CHECK(blob.kind == NodeKind::Other);
  CHECK(blob.range.begin == 0);
  CHECK(blob.range.end == noise.size());
  CHECK_FALSE(unit.diagnostics().empty());
}

TEST_CASE("unknown language tag is an error") {
  CHECK_THROWS_AS(parseUnit("x := 1\n", "cobol"), UnknownLanguage);
}

TEST_CASE("range invariants hold on fuzzed mini programs") {
  testgen::Rng rng(101);
  for (int i = 0; i < 300; ++i) {
    SourceUnit unit = parseUnit(testgen::genProgram(rng), "mini");
    CHECK(checkRangeInvariants(unit) == "");
  }
}

TEST_CASE("range invariants hold on the python case study") {
  SourceUnit unit = parseUnit(readFixture("closest_integer.py"), "python");
  CHECK(checkRangeInvariants(unit) == "");
  forEachNode(unit, unit.root(), [&](UnifiedId, const UnifiedNode& n) {
    CHECK(n.range.end <= unit.bytes().size());
  });
}

TEST_CASE("python elif chains nest as if nodes in the else position") {
  SourceUnit unit = parseUnit(
      "if a > 0:\n    x = 1\nelif a < 0:\n    x = 2\nelse:\n    x = 3\n", "python");
  const UnifiedNode* outer = findFirst(unit, NodeKind::If);
  REQUIRE(outer != nullptr);
  REQUIRE(outer->children.size() == 3);
  const UnifiedNode& elifNode = unit.node(outer->children[2]);
  CHECK(elifNode.kind == NodeKind::If);
  REQUIRE(elifNode.children.size() == 3);
  CHECK(unit.node(elifNode.children[2]).kind == NodeKind::Block);
}

TEST_CASE("symbol index lists every declaration-kind node under its name") {
  SourceUnit unit = parseUnit(readFixture("closest_integer.py"), "python");
  REQUIRE(unit.symbolIndex().count("closest_integer") == 1);
  REQUIRE(unit.symbolIndex().count("value") == 1);  // the parameter
  // Completeness: every declaration-kind node is reachable from its key.
  forEachNode(unit, unit.root(), [&](UnifiedId id, const UnifiedNode& n) {
    if ((n.kind == NodeKind::Declaration || n.kind == NodeKind::FunctionDef) &&
        !n.nameHint.empty()) {
      auto it = unit.symbolIndex().find(n.nameHint);
      REQUIRE(it != unit.symbolIndex().end());
      CHECK(std::count(it->second.begin(), it->second.end(), id) == 1);
    }
  });
}

TEST_CASE("c adapter indexes defines, typedefs, globals, and functions") {
  std::string src =
      "#define SIZE 100\n"
      "typedef struct NODE {\n"
      "    const char *key;\n"
      "} NODE;\n"
      "NODE *db = NULL;\n"
      "\n"
      "void handle(int s) {\n"
      "  int r = 0;\n"
      "  if (r <= 0) { r = 1; }\n"
      "}\n";
  SourceUnit unit = parseUnit(src, "c");
  CHECK(checkRangeInvariants(unit) == "");
  CHECK(unit.symbolIndex().count("SIZE") == 1);
  CHECK(unit.symbolIndex().count("NODE") == 1);
  CHECK(unit.symbolIndex().count("db") == 1);
  CHECK(unit.symbolIndex().count("handle") == 1);
}

TEST_CASE("annotations: tagged assume/assert statements carry pre and post") {
  SourceUnit unit = parseUnit(readFixture("closest_integer.py"), "python");
  HoareAnnotations notes = extractAnnotations(unit);
  REQUIRE(notes.pre.has_value());
  CHECK(*notes.pre == "len(value) > 0");
  REQUIRE(notes.post.has_value());
  CHECK(*notes.post == "abs(res) <= abs(float(value))");
}

TEST_CASE("annotations: comment markers work for the mini language") {
  SourceUnit unit = parseUnit(readFixture("branchy.mini"), "mini");
  HoareAnnotations notes = extractAnnotations(unit);
  REQUIRE(notes.pre.has_value());
  CHECK(*notes.pre == "true");
  REQUIRE(notes.post.has_value());
  CHECK(*notes.post == "z > y");
}

TEST_CASE("annotations: no markers means no conditions") {
  SourceUnit unit = parseUnit("x := 1\n", "mini");
  HoareAnnotations notes = extractAnnotations(unit);
  CHECK_FALSE(notes.pre.has_value());
  CHECK_FALSE(notes.post.has_value());
}

TEST_CASE("annotations: conflicting POST markers are a configuration error") {
  std::string src = "# POST: x > 0\nx := 1\n# POST: x < 0\n";
  SourceUnit unit = parseUnit(src, "mini");
  CHECK_THROWS_AS(extractAnnotations(unit), AnnotationError);
}

TEST_CASE("mini adapter reports exact defs and uses") {
  SourceUnit unit = parseUnit("read(x)\nxs.insert(x)\nwrite(z)\n", "mini");
  const GrammarAdapter& adapter = AdapterRegistry::instance().get("mini");
  const UnifiedNode& root = unit.node(unit.root());
  REQUIRE(root.children.size() == 3);
  DefUse read = adapter.defUses(unit, root.children[0]);
  CHECK(read.defs == std::set<std::string>{"x"});
  CHECK(read.uses.empty());
  DefUse insert = adapter.defUses(unit, root.children[1]);
  CHECK(insert.defs == std::set<std::string>{"xs"});
  CHECK(insert.uses == std::set<std::string>{"x", "xs"});
  DefUse write = adapter.defUses(unit, root.children[2]);
  CHECK(write.defs.empty());
  CHECK(write.uses == std::set<std::string>{"z"});
}
