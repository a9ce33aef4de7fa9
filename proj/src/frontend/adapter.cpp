#include "slicevc/frontend/adapter.hpp"

#include <cctype>

namespace slicevc {

std::shared_ptr<GrammarAdapter> makeMiniAdapter();
std::shared_ptr<GrammarAdapter> makePythonAdapter();
std::shared_ptr<GrammarAdapter> makeClikeAdapter(std::string tag);

std::vector<std::string> scanIdentifiers(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  char quote = 0;
  while (i < text.size()) {
    char c = text[i];
    if (quote) {
      if (c == '\\' && i + 1 < text.size()) {
        i += 2;
        continue;
      }
      if (c == quote) quote = 0;
      ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      quote = c;
      ++i;
      continue;
    }
    if (c == '#') break;  // line comment in the languages we scan
    if (c == '/' && i + 1 < text.size() && text[i + 1] == '/') break;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_'))
        ++i;
      out.emplace_back(text.substr(start, i - start));
      continue;
    }
    ++i;
  }
  return out;
}

DefUse GrammarAdapter::defUses(const SourceUnit& unit, UnifiedId id) const {
  const UnifiedNode& n = unit.node(id);
  std::string_view text = unit.text(n.range);
  DefUse out;
  if (n.kind == NodeKind::If || n.kind == NodeKind::While || n.kind == NodeKind::For) {
    // Only the header condition; branch statements carry their own sets.
    for (UnifiedId c : n.children) {
      if (unit.node(c).kind == NodeKind::ConditionExpr) {
        for (const std::string& v : scanIdentifiers(unit.text(unit.node(c).range)))
          out.uses.insert(v);
        break;
      }
    }
    return out;
  }
  std::vector<std::string> idents = scanIdentifiers(text);
  for (const std::string& v : idents) out.uses.insert(v);
  switch (n.kind) {
    case NodeKind::Assignment:
    case NodeKind::Declaration:
      if (!n.nameHint.empty()) out.defs.insert(n.nameHint);
      break;
    case NodeKind::Call:
      if (argumentsMayAlias()) {
        // Bare-identifier arguments may be written through.
        for (const std::string& v : idents) {
          if (v != n.nameHint) out.defs.insert(v);
        }
        out.uncertain = true;
      }
      break;
    case NodeKind::Other:
      out.uncertain = !idents.empty();
      break;
    default:
      break;
  }
  return out;
}

std::string GrammarAdapter::assumeText(std::string_view cond, bool negate) const {
  std::string c(cond);
  return negate ? "assume(!(" + c + "))" : "assume(" + c + ")";
}

bool GrammarAdapter::isInputOp(const SourceUnit&, UnifiedId) const { return false; }

bool GrammarAdapter::isOutputOp(const SourceUnit&, UnifiedId) const { return false; }

bool GrammarAdapter::reparsesCleanly(const std::string& text) const {
  SourceUnit reparsed = parse(text, "<reparse>");
  bool clean = true;
  forEachNode(reparsed, reparsed.root(), [&](UnifiedId id, const UnifiedNode& n) {
    if (n.kind != NodeKind::Other || !n.children.empty() || n.range.size() == 0) return;
    // Recognized no-op statements (pass, string literals) are fine; opaque
    // regions that still mention identifiers are parse failures.
    if (defUses(reparsed, id).uncertain) clean = false;
  });
  return clean;
}

AdapterRegistry& AdapterRegistry::instance() {
  static AdapterRegistry registry;
  return registry;
}

AdapterRegistry::AdapterRegistry() {
  add(makeMiniAdapter());
  add(makePythonAdapter());
  add(makeClikeAdapter("c"));
  add(makeClikeAdapter("java"));
}

void AdapterRegistry::add(std::shared_ptr<GrammarAdapter> adapter) {
  adapters_[adapter->language()] = std::move(adapter);
}

const GrammarAdapter& AdapterRegistry::get(const std::string& tag) const {
  auto it = adapters_.find(tag);
  if (it == adapters_.end()) throw UnknownLanguage(tag);
  return *it->second;
}

bool AdapterRegistry::has(const std::string& tag) const {
  return adapters_.count(tag) > 0;
}

std::optional<std::string> AdapterRegistry::languageForExtension(
    const std::string& ext) const {
  if (ext == "mini") return "mini";
  if (ext == "py") return "python";
  if (ext == "c" || ext == "h") return "c";
  if (ext == "java") return "java";
  return std::nullopt;
}

SourceUnit parseUnit(std::string bytes, const std::string& language, std::string fileId) {
  const GrammarAdapter& adapter = AdapterRegistry::instance().get(language);
  return adapter.parse(std::move(bytes), std::move(fileId));
}

}  // namespace slicevc
