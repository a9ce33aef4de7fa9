#include <cctype>
#include <optional>

#include "slicevc/frontend/adapter.hpp"

namespace slicevc {

namespace {

struct Line {
  std::uint32_t start = 0;        // byte offset of the line
  std::uint32_t end = 0;          // byte offset of the newline (or EOF)
  std::uint32_t contentStart = 0; // first non-whitespace byte
  int indent = 0;
  bool blank = true;
  bool comment = false;  // comment-only line
};

std::vector<Line> splitLines(const std::string& src) {
  std::vector<Line> out;
  std::uint32_t i = 0;
  while (i <= src.size()) {
    if (i == src.size() && !out.empty() && out.back().end == src.size()) break;
    Line line;
    line.start = i;
    std::uint32_t j = i;
    int indent = 0;
    while (j < src.size() && (src[j] == ' ' || src[j] == '\t')) {
      indent += src[j] == '\t' ? 8 : 1;
      ++j;
    }
    line.contentStart = j;
    line.indent = indent;
    while (j < src.size() && src[j] != '\n') ++j;
    line.end = j;
    line.blank = line.contentStart == line.end;
    line.comment = !line.blank && src[line.contentStart] == '#';
    out.push_back(line);
    if (j >= src.size()) break;
    i = j + 1;
  }
  return out;
}

bool startsWithWord(std::string_view s, std::string_view word) {
  if (s.substr(0, word.size()) != word) return false;
  if (s.size() == word.size()) return true;
  char c = s[word.size()];
  return !(std::isalnum(static_cast<unsigned char>(c)) || c == '_');
}

std::string leadingIdent(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
    ++i;
  return std::string(s.substr(0, i));
}

// Position of a top-level assignment operator, skipping quotes and brackets.
// Returns the '=' offset and whether the assignment is augmented (x += e).
std::optional<std::pair<std::size_t, bool>> findAssignOp(std::string_view s) {
  int depth = 0;
  char quote = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (quote) {
      if (c == '\\') ++i;
      else if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') { quote = c; continue; }
    if (c == '(' || c == '[' || c == '{') { ++depth; continue; }
    if (c == ')' || c == ']' || c == '}') { --depth; continue; }
    if (c == '#') break;
    if (c == '=' && depth == 0) {
      if (i + 1 < s.size() && s[i + 1] == '=') { ++i; continue; }
      if (i > 0 && (s[i - 1] == '=' || s[i - 1] == '<' || s[i - 1] == '>' ||
                    s[i - 1] == '!'))
        continue;
      bool augmented = i > 0 && std::string_view("+-*/%&|^").find(s[i - 1]) !=
                                    std::string_view::npos;
      return std::make_pair(i, augmented);
    }
  }
  return std::nullopt;
}

bool isPythonKeyword(const std::string& w) {
  static const std::set<std::string> kw = {
      "and",  "or",    "not",   "in",   "is",     "if",   "elif", "else",
      "while", "for",  "def",   "return", "assume", "assert", "True", "False",
      "None", "pass",  "break", "continue", "lambda", "import", "from", "print"};
  return kw.count(w) > 0;
}

class PythonAdapter : public GrammarAdapter {
public:
  std::string language() const override { return "python"; }

  SourceUnit parse(std::string bytes, std::string fileId) const override {
    SourceUnit unit(std::move(fileId), std::move(bytes), "python");
    Builder b{unit, unit.bytes(), splitLines(unit.bytes())};
    UnifiedId root =
        unit.addNode(NodeKind::Block, {0, static_cast<std::uint32_t>(unit.bytes().size())});
    std::size_t i = 0;
    b.parseStmtList(i, 0, root);
    unit.setRoot(root);
    unit.buildSymbolIndex();
    return unit;
  }

  DefUse defUses(const SourceUnit& unit, UnifiedId id) const override {
    const UnifiedNode& n = unit.node(id);
    std::string_view text = unit.text(n.range);
    DefUse out;
    auto useAll = [&](std::string_view t) {
      for (const std::string& v : scanIdentifiers(t))
        if (!isPythonKeyword(v)) out.uses.insert(v);
    };
    switch (n.kind) {
      case NodeKind::Assignment: {
        auto op = findAssignOp(text);
        if (!op) {
          useAll(text);
          break;
        }
        std::string_view lhs = text.substr(0, op->first - (op->second ? 1 : 0));
        std::string_view rhs = text.substr(op->first + 1);
        for (const std::string& v : scanIdentifiers(lhs))
          if (!isPythonKeyword(v)) out.defs.insert(v);
        useAll(rhs);
        // Subscripted or augmented targets also read the previous value.
        if (op->second || lhs.find('[') != std::string_view::npos) useAll(lhs);
        break;
      }
      case NodeKind::If:
      case NodeKind::While:
      case NodeKind::For: {
        // Only the header condition; branch statements carry their own sets.
        for (UnifiedId c : n.children) {
          if (unit.node(c).kind == NodeKind::ConditionExpr) {
            useAll(unit.text(unit.node(c).range));
            break;
          }
        }
        if (n.kind == NodeKind::For) {
          // The loop target is written each iteration.
          std::string_view header = text.substr(0, text.find(':'));
          std::size_t inPos = header.find(" in ");
          if (header.substr(0, 4) == "for " && inPos != std::string_view::npos) {
            for (const std::string& v :
                 scanIdentifiers(header.substr(4, inPos - 4)))
              if (!isPythonKeyword(v)) out.defs.insert(v);
          }
        }
        break;
      }
      case NodeKind::Other:
        // Docstrings and string-literal statements have no dependencies.
        if (!text.empty() && (text[0] == '"' || text[0] == '\'')) break;
        useAll(text);
        out.uncertain = !out.uses.empty();
        break;
      default:
        useAll(text);
        break;
    }
    return out;
  }

  std::string emptyBlockText() const override { return "pass"; }

  std::string assumeText(std::string_view cond, bool negate) const override {
    std::string c(cond);
    return negate ? "assume not (" + c + ")" : "assume " + c;
  }

  bool isInputOp(const SourceUnit& unit, UnifiedId id) const override {
    const UnifiedNode& n = unit.node(id);
    return n.kind == NodeKind::Call && n.nameHint == "input";
  }

private:
  struct Builder {
    SourceUnit& unit;
    const std::string& src;
    std::vector<Line> lines;

    std::string_view content(const Line& l) const {
      return std::string_view(src).substr(l.contentStart, l.end - l.contentStart);
    }

    void parseStmtList(std::size_t& i, int minIndent, UnifiedId parent) {
      while (i < lines.size()) {
        const Line& line = lines[i];
        if (line.blank) {
          ++i;
          continue;
        }
        if (line.indent < minIndent) break;
        parseStmt(i, parent);
      }
    }

    // Block of statements strictly deeper than headerIndent. The block range
    // spans from the first to the last consumed line.
    UnifiedId parseBlockAfter(std::size_t& i, int headerIndent, std::uint32_t headerEnd) {
      UnifiedId block = unit.addNode(NodeKind::Block, {headerEnd, headerEnd});
      // Find the block indent from the first non-blank line.
      std::size_t j = i;
      while (j < lines.size() && lines[j].blank) ++j;
      if (j >= lines.size() || lines[j].indent <= headerIndent) return block;
      int blockIndent = lines[j].indent;
      i = j;
      parseStmtList(i, blockIndent, block);
      const auto& children = unit.node(block).children;
      if (!children.empty()) {
        ByteRange r{unit.node(children.front()).range.begin,
                    unit.node(children.back()).range.end};
        unit.setRange(block, r);
      }
      return block;
    }

    void parseStmt(std::size_t& i, UnifiedId parent) {
      const Line line = lines[i];
      std::string_view c = content(line);
      std::uint32_t begin = line.contentStart;

      if (line.comment) {
        UnifiedId node = unit.addNode(NodeKind::Comment, {begin, line.end});
        unit.addChild(parent, node);
        ++i;
        return;
      }
      // Triple-quoted string statement (typically a docstring).
      if (c.substr(0, 3) == "\"\"\"" || c.substr(0, 3) == "'''") {
        std::string delim(c.substr(0, 3));
        std::uint32_t endByte = line.end;
        std::size_t j = i;
        if (c.find(delim, 3) != std::string_view::npos) {
          // closes on the same line
        } else {
          for (j = i + 1; j < lines.size(); ++j) {
            auto lc = std::string_view(src).substr(lines[j].start, lines[j].end - lines[j].start);
            if (lc.find(delim) != std::string_view::npos) break;
          }
          if (j >= lines.size()) j = lines.size() - 1;
          endByte = lines[j].end;
        }
        UnifiedId node = unit.addNode(NodeKind::Other, {begin, endByte});
        unit.addChild(parent, node);
        i = j + 1;
        return;
      }

      std::string word = leadingIdent(c);
      if (word == "def") {
        parseDef(i, parent);
        return;
      }
      if (word == "if") {
        unit.addChild(parent, parseIfChain(i, "if"));
        return;
      }
      if (word == "while" || word == "for") {
        const Line header = lines[i];
        std::size_t colon = c.rfind(':');
        std::uint32_t condBegin =
            header.contentStart + static_cast<std::uint32_t>(word.size()) + 1;
        std::uint32_t condEnd = colon == std::string_view::npos
                                    ? header.end
                                    : header.contentStart + static_cast<std::uint32_t>(colon);
        UnifiedId node = unit.addNode(
            word == "while" ? NodeKind::While : NodeKind::For, {header.contentStart, header.end});
        UnifiedId cond = unit.addNode(NodeKind::ConditionExpr,
                                      {std::min(condBegin, condEnd), condEnd});
        unit.addChild(node, cond);
        ++i;
        UnifiedId body = parseBlockAfter(i, header.indent, header.end);
        unit.addChild(node, body);
        unit.setRange(node, {header.contentStart,
                             std::max(header.end, unit.node(body).range.end)});
        unit.addChild(parent, node);
        return;
      }
      if (word == "return") {
        UnifiedId node = unit.addNode(NodeKind::Return, {begin, line.end});
        unit.addChild(parent, node);
        ++i;
        return;
      }
      if (word == "assume" || word == "assert") {
        UnifiedId node = unit.addNode(NodeKind::Assume, {begin, line.end}, word);
        unit.addChild(parent, node);
        ++i;
        return;
      }
      if (word == "pass") {
        UnifiedId node = unit.addNode(NodeKind::Other, {begin, line.end});
        unit.addChild(parent, node);
        ++i;
        return;
      }
      if (auto op = findAssignOp(c)) {
        std::string target;
        for (const std::string& v : scanIdentifiers(c.substr(0, op->first))) {
          target = v;
          break;
        }
        UnifiedId node = unit.addNode(NodeKind::Assignment, {begin, line.end}, target);
        unit.addChild(parent, node);
        ++i;
        return;
      }
      // Call statement: ident chain followed by '('.
      if (!word.empty()) {
        std::size_t paren = c.find('(');
        if (paren != std::string_view::npos) {
          std::size_t k = paren;
          while (k > 0 && (std::isalnum(static_cast<unsigned char>(c[k - 1])) || c[k - 1] == '_'))
            --k;
          std::string callee(c.substr(k, paren - k));
          UnifiedId node = unit.addNode(NodeKind::Call, {begin, line.end}, callee);
          unit.addChild(parent, node);
          ++i;
          return;
        }
      }
      UnifiedId node = unit.addNode(NodeKind::Other, {begin, line.end});
      unit.addChild(parent, node);
      ++i;
    }

    void parseDef(std::size_t& i, UnifiedId parent) {
      const Line header = lines[i];
      std::string_view c = content(header);
      std::size_t nameStart = 4;  // past "def "
      while (nameStart < c.size() && c[nameStart] == ' ') ++nameStart;
      std::size_t nameEnd = nameStart;
      while (nameEnd < c.size() &&
             (std::isalnum(static_cast<unsigned char>(c[nameEnd])) || c[nameEnd] == '_'))
        ++nameEnd;
      std::string name(c.substr(nameStart, nameEnd - nameStart));
      UnifiedId node =
          unit.addNode(NodeKind::FunctionDef, {header.contentStart, header.end}, name);
      // Parameters become declaration children.
      std::size_t open = c.find('(', nameEnd);
      std::size_t close = c.find(')', open == std::string_view::npos ? 0 : open);
      if (open != std::string_view::npos && close != std::string_view::npos) {
        std::size_t pos = open + 1;
        while (pos < close) {
          std::size_t comma = c.find(',', pos);
          if (comma == std::string_view::npos || comma > close) comma = close;
          std::string_view param = c.substr(pos, comma - pos);
          std::size_t ps = param.find_first_not_of(" \t");
          if (ps != std::string_view::npos) {
            std::string pname = leadingIdent(param.substr(ps));
            if (!pname.empty()) {
              UnifiedId decl = unit.addNode(
                  NodeKind::Declaration,
                  {header.contentStart + static_cast<std::uint32_t>(pos + ps),
                   header.contentStart + static_cast<std::uint32_t>(pos + ps + pname.size())},
                  pname);
              unit.addChild(node, decl);
            }
          }
          pos = comma + 1;
        }
      }
      ++i;
      UnifiedId body = parseBlockAfter(i, header.indent, header.end);
      unit.addChild(node, body);
      unit.setRange(node, {header.contentStart,
                           std::max(header.end, unit.node(body).range.end)});
      unit.addChild(parent, node);
    }

    // if/elif/else chains become nested If nodes: the elif is an If placed in
    // the enclosing else position.
    UnifiedId parseIfChain(std::size_t& i, const std::string& keyword) {
      const Line header = lines[i];
      std::string_view c = content(header);
      std::size_t colon = c.rfind(':');
      std::uint32_t condBegin =
          header.contentStart + static_cast<std::uint32_t>(keyword.size()) + 1;
      std::uint32_t condEnd = colon == std::string_view::npos
                                  ? header.end
                                  : header.contentStart + static_cast<std::uint32_t>(colon);
      UnifiedId node = unit.addNode(NodeKind::If, {header.contentStart, header.end});
      UnifiedId cond =
          unit.addNode(NodeKind::ConditionExpr, {std::min(condBegin, condEnd), condEnd});
      unit.addChild(node, cond);
      ++i;
      UnifiedId thenBlock = parseBlockAfter(i, header.indent, header.end);
      unit.addChild(node, thenBlock);
      std::uint32_t endByte = std::max(header.end, unit.node(thenBlock).range.end);

      // Look for elif/else at the same indent.
      std::size_t j = i;
      while (j < lines.size() && lines[j].blank) ++j;
      if (j < lines.size() && lines[j].indent == header.indent) {
        std::string_view nc = content(lines[j]);
        if (startsWithWord(nc, "elif")) {
          i = j;
          UnifiedId elifNode = parseIfChain(i, "elif");
          unit.addChild(node, elifNode);
          endByte = std::max(endByte, unit.node(elifNode).range.end);
        } else if (startsWithWord(nc, "else")) {
          i = j + 1;
          UnifiedId elseBlock = parseBlockAfter(i, lines[j].indent, lines[j].end);
          unit.addChild(node, elseBlock);
          endByte = std::max(endByte, unit.node(elseBlock).range.end);
        }
      }
      unit.setRange(node, {header.contentStart, endByte});
      return node;
    }
  };
};

}  // namespace

std::shared_ptr<GrammarAdapter> makePythonAdapter() {
  return std::make_shared<PythonAdapter>();
}

}  // namespace slicevc
