#include "slicevc/render/render.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <set>

namespace slicevc {

namespace {

class Renderer {
public:
  Renderer(const SliceProgram& slice, const SourceUnit& unit, const Cfg& cfg,
           const GrammarAdapter& adapter)
      : slice_(slice), unit_(unit), cfg_(cfg), adapter_(adapter), bytes_(unit.bytes()) {
    for (const SynthAssume& s : slice_.synthAssumes) {
      if (s.construct != kNoNode) synthByConstruct_[s.construct] = &s;
    }
  }

  ByteRange baseRange() const {
    UnifiedId root = cfg_.functionRoot;
    if (root != kNoNode && unit_.node(root).kind == NodeKind::FunctionDef)
      return unit_.node(root).range;
    return unit_.node(unit_.root()).range;
  }

  std::string renderBody() {
    UnifiedId body = analyzedBody();
    ByteRange base = baseRange();
    if (slice_.vacuous) {
      RangeMap rm;
      ByteRange span = lineSpan(unit_.node(body).range);
      rm.insert(span, RangeMap::Action::Replace,
                indentAt(span.begin) + adapter_.unreachableText() + "\n");
      return rm.apply(bytes_, base);
    }
    RangeMap rm;
    walkBlock(body, rm);
    return rm.apply(bytes_, base);
  }

private:
  UnifiedId analyzedBody() const {
    UnifiedId root = cfg_.functionRoot;
    if (root != kNoNode && unit_.node(root).kind == NodeKind::FunctionDef) {
      for (UnifiedId c : unit_.node(root).children)
        if (unit_.node(c).kind == NodeKind::Block) return c;
    }
    return root == kNoNode ? unit_.root() : root;
  }

  // --- line helpers ------------------------------------------------------

  std::uint32_t lineStartOf(std::uint32_t pos) const {
    while (pos > 0 && bytes_[pos - 1] != '\n') --pos;
    return pos;
  }

  // End of the line containing pos, newline included when present.
  std::uint32_t lineEndOf(std::uint32_t pos) const {
    while (pos < bytes_.size() && bytes_[pos] != '\n') ++pos;
    return pos < bytes_.size() ? pos + 1 : pos;
  }

  ByteRange lineSpan(ByteRange r) const {
    std::uint32_t end = r.end > r.begin ? r.end - 1 : r.begin;
    return {lineStartOf(r.begin), lineEndOf(end)};
  }

  std::string indentAt(std::uint32_t pos) const {
    std::uint32_t ls = lineStartOf(pos);
    std::uint32_t i = ls;
    while (i < bytes_.size() && (bytes_[i] == ' ' || bytes_[i] == '\t')) ++i;
    return bytes_.substr(ls, i - ls);
  }

  static std::string dedent(const std::string& text, std::size_t delta) {
    if (delta == 0) return text;
    std::string out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t eol = text.find('\n', pos);
      std::size_t lineEnd = eol == std::string::npos ? text.size() : eol + 1;
      std::size_t strip = 0;
      while (strip < delta && pos + strip < lineEnd &&
             (text[pos + strip] == ' ' || text[pos + strip] == '\t'))
        ++strip;
      out.append(text, pos + strip, lineEnd - pos - strip);
      pos = lineEnd;
    }
    return out;
  }

  // --- structural queries -------------------------------------------------

  bool isStmtKind(NodeKind k) const {
    return isExecutableKind(k) || k == NodeKind::Declaration;
  }

  bool keptCfg(UnifiedId ast) const {
    auto it = cfg_.byAst.find(ast);
    return it != cfg_.byAst.end() && slice_.keptNodes.count(it->second) > 0;
  }

  bool keptInside(UnifiedId sub) const {
    bool found = false;
    forEachNode(unit_, sub, [&](UnifiedId id, const UnifiedNode&) {
      if (found) return;
      if (keptCfg(id)) found = true;
      auto it = synthByConstruct_.find(id);
      if (it != synthByConstruct_.end() && it->second->kept) found = true;
    });
    if (!found) {
      const UnifiedNode& n = unit_.node(sub);
      for (const UnreachableMark& m : slice_.unreachableMarks) {
        if (m.range.begin >= n.range.begin && m.range.begin < n.range.end) found = true;
      }
    }
    return found;
  }

  const UnreachableMark* markCovering(std::uint32_t pos) const {
    for (const UnreachableMark& m : slice_.unreachableMarks) {
      if (m.range.begin <= pos && pos < m.range.end) return &m;
    }
    return nullptr;
  }

  // True when only blank space (at most one newline) separates a and b.
  bool adjacentLines(std::uint32_t aEnd, std::uint32_t bBegin) const {
    int newlines = 0;
    for (std::uint32_t i = aEnd; i < bBegin && i < bytes_.size(); ++i) {
      if (bytes_[i] == '\n' && ++newlines > 1) return false;
      if (!std::isspace(static_cast<unsigned char>(bytes_[i]))) return false;
    }
    return true;
  }

  // --- walking ------------------------------------------------------------

  void walkBlock(UnifiedId blockId, RangeMap& rm) {
    const UnifiedNode& block = unit_.node(blockId);
    std::vector<UnifiedId> pendingComments;
    const UnreachableMark* emittedMark = nullptr;

    // Comments stacked immediately above a removed statement go with it;
    // anything separated by a blank line is free-standing and stays.
    auto dropComments = [&](std::uint32_t stmtBegin) {
      std::uint32_t attachPoint = stmtBegin;
      for (auto it = pendingComments.rbegin(); it != pendingComments.rend(); ++it) {
        const UnifiedNode& cn = unit_.node(*it);
        if (!adjacentLines(cn.range.end, attachPoint)) break;
        rm.insert(lineSpan(cn.range), RangeMap::Action::Replace, "");
        attachPoint = cn.range.begin;
      }
      pendingComments.clear();
    };

    for (UnifiedId childId : block.children) {
      const UnifiedNode& child = unit_.node(childId);
      if (child.kind == NodeKind::Comment) {
        pendingComments.push_back(childId);
        continue;
      }
      if (!isStmtKind(child.kind)) continue;

      if (const UnreachableMark* m = markCovering(child.range.begin)) {
        if (m != emittedMark) {
          rm.insert(lineSpan(m->range), RangeMap::Action::Replace,
                    indentAt(m->range.begin) + adapter_.unreachableText() + "\n");
          emittedMark = m;
          dropComments(child.range.begin);
        }
        pendingComments.clear();
        continue;
      }
      bool removed = walkStmt(childId, rm);
      if (removed) dropComments(child.range.begin);
      pendingComments.clear();
    }
  }

  // Emits edits for one statement; returns true when the statement was
  // removed or replaced (its attached comments should go too).
  bool walkStmt(UnifiedId childId, RangeMap& rm) {
    const UnifiedNode& child = unit_.node(childId);
    auto synthIt = synthByConstruct_.find(childId);
    if (synthIt != synthByConstruct_.end()) {
      std::string replacement = composeCollapse(*synthIt->second);
      rm.insert(lineSpan(child.range), RangeMap::Action::Replace, replacement);
      return true;
    }
    bool isConstruct = child.kind == NodeKind::If || child.kind == NodeKind::While ||
                       child.kind == NodeKind::For;
    if (isConstruct) {
      if (!keptCfg(childId) && !keptInside(childId)) {
        rm.insert(lineSpan(child.range), RangeMap::Action::Replace, "");
        return true;
      }
      for (UnifiedId c : unit_.node(childId).children) {
        const UnifiedNode& cn = unit_.node(c);
        if (cn.kind == NodeKind::Block) {
          walkBranch(c, rm);
        } else if (cn.kind == NodeKind::If) {
          walkStmt(c, rm);
        }
      }
      return false;
    }
    if (keptCfg(childId)) return false;
    rm.insert(lineSpan(child.range), RangeMap::Action::Replace, "");
    return true;
  }

  // Branch block of a kept construct: recurse, or fill with the language's
  // no-op when everything inside goes away (indentation-sensitive syntax).
  void walkBranch(UnifiedId blockId, RangeMap& rm) {
    const UnifiedNode& block = unit_.node(blockId);
    bool hasStmts = false;
    for (UnifiedId c : block.children)
      if (isStmtKind(unit_.node(c).kind)) hasStmts = true;
    if (!hasStmts) return;
    if (!keptInside(blockId)) {
      std::string filler = adapter_.emptyBlockText();
      ByteRange span = contentSpan(blockId);
      std::string text = filler.empty() ? "" : indentAt(span.begin) + filler + "\n";
      rm.insert(span, RangeMap::Action::Replace, text);
      return;
    }
    walkBlock(blockId, rm);
  }

  // Full lines of a block's children.
  ByteRange contentSpan(UnifiedId blockId) const {
    const UnifiedNode& block = unit_.node(blockId);
    if (block.children.empty()) return lineSpan(block.range);
    ByteRange r{unit_.node(block.children.front()).range.begin,
                unit_.node(block.children.back()).range.end};
    return lineSpan(r);
  }

  std::string composeCollapse(const SynthAssume& s) {
    const UnifiedNode& construct = unit_.node(s.construct);
    std::string constructIndent = indentAt(construct.range.begin);
    std::string out;
    if (s.kept)
      out = constructIndent + adapter_.assumeText(s.condText, s.negate) + "\n";
    if (s.surviving == kNoNode) return out;

    const UnifiedNode& surv = unit_.node(s.surviving);
    if (!keptInside(s.surviving)) return out;
    std::string sub;
    std::size_t delta = 0;
    if (surv.kind == NodeKind::If) {
      // Surviving elif chain: render the construct and turn "elif" into "if".
      RangeMap inner;
      walkStmt(s.surviving, inner);
      sub = inner.apply(bytes_, lineSpan(surv.range));
      std::size_t firstContent = sub.find_first_not_of(" \t");
      if (firstContent != std::string::npos && sub.compare(firstContent, 4, "elif") == 0)
        sub = sub.substr(0, firstContent) + "if" + sub.substr(firstContent + 4);
      delta = indentAt(surv.range.begin).size() > constructIndent.size()
                  ? indentAt(surv.range.begin).size() - constructIndent.size()
                  : 0;
    } else {
      if (surv.children.empty()) return out;
      RangeMap inner;
      walkBlock(s.surviving, inner);
      ByteRange span = contentSpan(s.surviving);
      sub = inner.apply(bytes_, span);
      std::string branchIndent = indentAt(span.begin);
      delta = branchIndent.size() > constructIndent.size()
                  ? branchIndent.size() - constructIndent.size()
                  : 0;
    }
    out += dedent(sub, delta);
    return out;
  }

  const SliceProgram& slice_;
  const SourceUnit& unit_;
  const Cfg& cfg_;
  const GrammarAdapter& adapter_;
  const std::string& bytes_;
  std::map<UnifiedId, const SynthAssume*> synthByConstruct_;
};

}  // namespace

std::string fingerprintText(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::vector<ContextItem> gatherContext(const SliceProgram& slice, const SourceUnit& unit,
                                       const Cfg& cfg) {
  std::set<std::string> names;
  for (CfgId id : slice.keptNodes) {
    const CfgNode& n = cfg.node(id);
    for (const std::string& v : n.uses) names.insert(v);
    for (const std::string& v : n.defs) names.insert(v);
    if (n.ast != kNoNode) {
      const std::string& hint = unit.node(n.ast).nameHint;
      if (!hint.empty()) names.insert(hint);
    }
  }
  for (const SynthAssume& s : slice.synthAssumes) {
    if (!s.kept) continue;
    for (const std::string& v : scanIdentifiers(s.condText)) names.insert(v);
  }

  ByteRange base{0, 0};
  if (cfg.functionRoot != kNoNode) base = unit.node(cfg.functionRoot).range;

  std::vector<ContextItem> items;
  for (const auto& [name, decls] : unit.symbolIndex()) {
    if (!names.count(name)) continue;
    for (UnifiedId d : decls) {
      const UnifiedNode& dn = unit.node(d);
      if (base.contains(dn.range)) continue;  // already part of the rendered body
      if (dn.range.begin <= base.begin && base.end <= dn.range.end) continue;
      items.push_back({d, name, dn.range, false});
    }
  }
  std::sort(items.begin(), items.end(),
            [](const ContextItem& a, const ContextItem& b) { return a.range.begin < b.range.begin; });
  items.erase(std::unique(items.begin(), items.end(),
                          [](const ContextItem& a, const ContextItem& b) {
                            return a.decl == b.decl;
                          }),
              items.end());
  return items;
}

RenderedSlice renderSlice(const SliceProgram& slice, const SourceUnit& unit,
                          const Cfg& cfg, const GrammarAdapter& adapter,
                          const RenderOptions& opts) {
  Renderer renderer(slice, unit, cfg, adapter);
  std::string body = renderer.renderBody();

  RenderedSlice out;
  out.language = unit.language();

  std::string contextText;
  if (opts.includeContext) {
    out.contextItems = gatherContext(slice, unit, cfg);
    for (ContextItem& item : out.contextItems) {
      std::string text(unit.text(item.range));
      int lines = static_cast<int>(std::count(text.begin(), text.end(), '\n')) + 1;
      if (lines > opts.contextLineCap) {
        item.capped = true;
        const UnifiedNode& dn = unit.node(item.decl);
        std::size_t eol = text.find('\n');
        std::string head = eol == std::string::npos ? text : text.substr(0, eol);
        if (dn.kind == NodeKind::FunctionDef) {
          std::size_t brace = head.find('{');
          if (brace != std::string::npos) head = head.substr(0, brace);
          while (!head.empty() && (head.back() == ' ' || head.back() == '\t'))
            head.pop_back();
          if (unit.language() == "python")
            text = head + "\n    pass";
          else
            text = head + ";";
        } else {
          text = head;
        }
      }
      contextText += text + "\n\n";
    }
  }

  out.text = contextText + body;
  const Tokenizer& tok = opts.tokenizer ? *opts.tokenizer : defaultTokenizer();
  out.tokenizerName = tok.name();
  out.tokenCount = tok.count(out.text);
  int keptSynths = 0;
  for (const SynthAssume& s : slice.synthAssumes) keptSynths += s.kept ? 1 : 0;
  out.stmtCount = static_cast<int>(slice.keptNodes.size()) + keptSynths +
                  static_cast<int>(slice.unreachableMarks.size());
  out.fingerprint = fingerprintText(out.text);

  if (opts.verifyReparse && !adapter.reparsesCleanly(out.text)) {
    throw RenderError("rendered slice does not re-parse cleanly", out.text);
  }
  return out;
}

}  // namespace slicevc
