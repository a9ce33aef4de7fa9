#include <cctype>

#include "slicevc/frontend/adapter.hpp"

namespace slicevc {

namespace {

const std::set<std::string>& typeWords() {
  static const std::set<std::string> kTypes = {
      "void",   "int",    "char",   "long",   "short",  "float",  "double",
      "signed", "unsigned", "const", "static", "struct", "union",  "enum",
      "size_t", "ssize_t", "bool",  "auto",   "final",  "public", "private",
      "protected", "String", "boolean"};
  return kTypes;
}

bool isControlWord(const std::string& w) {
  return w == "if" || w == "while" || w == "for" || w == "else" || w == "switch" ||
         w == "do";
}

// Names declared by a declaration statement: for each top-level declarator
// (comma separated), the identifier right before '=', '[', or the end.
std::vector<std::string> declaredNames(std::string_view text) {
  std::vector<std::string> out;
  int depth = 0;
  char quote = 0;
  std::string lastIdent, current;
  auto flush = [&] {
    if (!current.empty() && !typeWords().count(current)) out.push_back(current);
    current.clear();
    lastIdent.clear();
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quote) {
      if (c == '\\') ++i;
      else if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') { quote = c; continue; }
    if (c == '(' || c == '{') { ++depth; continue; }
    if (c == ')' || c == '}') { --depth; continue; }
    if (depth > 0) continue;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) ||
                                 text[i] == '_'))
        ++i;
      lastIdent = std::string(text.substr(start, i - start));
      if (!typeWords().count(lastIdent)) current = lastIdent;
      --i;
      continue;
    }
    if (c == '=' || c == '[') {
      if (c == '=' && i + 1 < text.size() && text[i + 1] == '=') { ++i; continue; }
      flush();
      // Skip to the next top-level comma or the end.
      while (i < text.size() && !(depth == 0 && text[i] == ',') && text[i] != ';') {
        char d = text[i];
        if (d == '(' || d == '{' || d == '[') ++depth;
        if (d == ')' || d == '}' || d == ']') --depth;
        ++i;
      }
      continue;
    }
    if (c == ',' || c == ';') flush();
  }
  flush();
  return out;
}

class ClikeAdapter : public GrammarAdapter {
public:
  explicit ClikeAdapter(std::string tag) : tag_(std::move(tag)) {}

  std::string language() const override { return tag_; }
  bool argumentsMayAlias() const override { return tag_ == "c"; }

  DefUse defUses(const SourceUnit& unit, UnifiedId id) const override {
    const UnifiedNode& n = unit.node(id);
    if (n.kind == NodeKind::Declaration) {
      DefUse out;
      std::string_view text = unit.text(n.range);
      for (const std::string& v : scanIdentifiers(text)) out.uses.insert(v);
      for (const std::string& v : declaredNames(text)) out.defs.insert(v);
      return out;
    }
    return GrammarAdapter::defUses(unit, id);
  }

  SourceUnit parse(std::string bytes, std::string fileId) const override {
    SourceUnit unit(std::move(fileId), std::move(bytes), tag_);
    UnifiedId root =
        unit.addNode(NodeKind::Block, {0, static_cast<std::uint32_t>(unit.bytes().size())});
    Cursor cur{unit.bytes(), 0};
    parseStatements(unit, cur, static_cast<std::uint32_t>(unit.bytes().size()), root);
    unit.setRoot(root);
    unit.buildSymbolIndex();
    return unit;
  }

  std::string assumeText(std::string_view cond, bool negate) const override {
    std::string c(cond);
    return negate ? "assume(!(" + c + "));" : "assume(" + c + ");";
  }

  std::string unreachableText() const override { return "assume(0);"; }

private:
  struct Cursor {
    const std::string& src;
    std::uint32_t pos;
  };

  static void skipWs(Cursor& c, std::uint32_t end) {
    while (c.pos < end && std::isspace(static_cast<unsigned char>(c.src[c.pos]))) ++c.pos;
  }

  static std::string identAt(const std::string& src, std::uint32_t pos, std::uint32_t end) {
    std::uint32_t i = pos;
    while (i < end && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_'))
      ++i;
    return src.substr(pos, i - pos);
  }

  // Advances past one balanced (...) or {...} group starting at pos.
  static std::uint32_t skipBalanced(const std::string& src, std::uint32_t pos,
                                    std::uint32_t end) {
    char open = src[pos];
    char close = open == '(' ? ')' : open == '{' ? '}' : open == '[' ? ']' : 0;
    if (!close) return pos + 1;
    int depth = 0;
    char quote = 0;
    for (std::uint32_t i = pos; i < end; ++i) {
      char ch = src[i];
      if (quote) {
        if (ch == '\\') ++i;
        else if (ch == quote) quote = 0;
        continue;
      }
      if (ch == '"' || ch == '\'') { quote = ch; continue; }
      if (ch == open) ++depth;
      if (ch == close && --depth == 0) return i + 1;
    }
    return end;
  }

  // Scans to the first top-level ';' or '{'; returns its offset (or end).
  static std::uint32_t scanToStmtEnd(const std::string& src, std::uint32_t pos,
                                     std::uint32_t end, char& hit) {
    char quote = 0;
    for (std::uint32_t i = pos; i < end; ++i) {
      char ch = src[i];
      if (quote) {
        if (ch == '\\') ++i;
        else if (ch == quote) quote = 0;
        continue;
      }
      if (ch == '"' || ch == '\'') { quote = ch; continue; }
      if (ch == '(' || ch == '[') {
        i = skipBalanced(src, i, end) - 1;
        continue;
      }
      if (ch == ';' || ch == '{') {
        hit = ch;
        return i;
      }
      if (ch == '}') {
        hit = ch;
        return i;
      }
    }
    hit = 0;
    return end;
  }

  void parseStatements(SourceUnit& unit, Cursor& cur, std::uint32_t end,
                       UnifiedId parent) const {
    const std::string& src = cur.src;
    while (true) {
      skipWs(cur, end);
      if (cur.pos >= end) return;
      std::uint32_t begin = cur.pos;
      char c = src[cur.pos];
      if (c == '}') return;  // caller consumes
      if (c == '/' && cur.pos + 1 < end && src[cur.pos + 1] == '/') {
        std::uint32_t e = begin;
        while (e < end && src[e] != '\n') ++e;
        unit.addChild(parent, unit.addNode(NodeKind::Comment, {begin, e}));
        cur.pos = e;
        continue;
      }
      if (c == '/' && cur.pos + 1 < end && src[cur.pos + 1] == '*') {
        std::size_t close = src.find("*/", cur.pos + 2);
        std::uint32_t e = close == std::string::npos ? end
                                                     : static_cast<std::uint32_t>(close + 2);
        unit.addChild(parent, unit.addNode(NodeKind::Comment, {begin, e}));
        cur.pos = e;
        continue;
      }
      if (c == '#') {
        std::uint32_t e = begin;
        while (e < end && src[e] != '\n') ++e;
        std::string word = identAt(src, begin + 1, e);
        std::string name;
        if (word == "define" || word == "include") {
          std::uint32_t p = begin + 1 + static_cast<std::uint32_t>(word.size());
          while (p < e && std::isspace(static_cast<unsigned char>(src[p]))) ++p;
          name = identAt(src, p, e);
        }
        unit.addChild(parent,
                      unit.addNode(word == "define" ? NodeKind::Declaration : NodeKind::Other,
                                   {begin, e}, name));
        cur.pos = e;
        continue;
      }
      std::string word = identAt(src, cur.pos, end);
      if (word == "if") {
        unit.addChild(parent, parseIf(unit, cur, end));
        continue;
      }
      if (word == "while" || word == "for" || word == "switch") {
        NodeKind kind = word == "while" ? NodeKind::While
                        : word == "for" ? NodeKind::For
                                        : NodeKind::Other;
        UnifiedId node = parseLoop(unit, cur, end, kind, word);
        unit.addChild(parent, node);
        continue;
      }
      if (word == "return" || word == "break" || word == "continue" || word == "goto") {
        char hit;
        std::uint32_t e = scanToStmtEnd(src, cur.pos, end, hit);
        std::uint32_t stop = hit == ';' ? e + 1 : e;
        unit.addChild(parent, unit.addNode(word == "return" ? NodeKind::Return : NodeKind::Other,
                                           {begin, stop}));
        cur.pos = stop;
        continue;
      }
      if (word == "assume" || word == "assert") {
        char hit;
        std::uint32_t e = scanToStmtEnd(src, cur.pos, end, hit);
        std::uint32_t stop = hit == ';' ? e + 1 : e;
        unit.addChild(parent, unit.addNode(NodeKind::Assume, {begin, stop}, word));
        cur.pos = stop;
        continue;
      }
      char hit;
      std::uint32_t e = scanToStmtEnd(src, cur.pos, end, hit);
      if (hit == '{') {
        // Function definition, type definition, or a stray block.
        std::uint32_t bodyEnd = skipBalanced(src, e, end);
        std::string head = src.substr(begin, e - begin);
        std::size_t paren = head.find('(');
        if (word == "typedef" || word == "struct" || word == "union" || word == "enum" ||
            word == "class") {
          // Trailing name (typedef struct {...} NAME;) or the tag itself.
          std::uint32_t p = bodyEnd;
          while (p < end && std::isspace(static_cast<unsigned char>(src[p]))) ++p;
          std::string name = identAt(src, p, end);
          std::uint32_t stop = bodyEnd;
          char h2;
          std::uint32_t semi = scanToStmtEnd(src, bodyEnd, end, h2);
          if (h2 == ';') stop = semi + 1;
          if (name.empty() || isControlWord(name)) {
            std::size_t tagPos = head.find(word == "typedef" ? "struct" : word);
            name = tagPos == std::string::npos
                       ? ""
                       : identAt(src, begin + static_cast<std::uint32_t>(tagPos + (word == "typedef" ? 7 : word.size() + 1)), e);
          }
          unit.addChild(parent, unit.addNode(NodeKind::Declaration, {begin, stop}, name));
          cur.pos = stop;
          continue;
        }
        if (paren != std::string::npos && !isControlWord(word)) {
          std::size_t np = paren;
          while (np > 0 && !(std::isalnum(static_cast<unsigned char>(head[np - 1])) ||
                             head[np - 1] == '_'))
            --np;
          std::size_t ns = np;
          while (ns > 0 && (std::isalnum(static_cast<unsigned char>(head[ns - 1])) ||
                            head[ns - 1] == '_'))
            --ns;
          std::string name = head.substr(ns, np - ns);
          UnifiedId fn = unit.addNode(NodeKind::FunctionDef, {begin, bodyEnd}, name);
          UnifiedId body = unit.addNode(NodeKind::Block, {e + 1, bodyEnd > e ? bodyEnd - 1 : e + 1});
          Cursor inner{src, e + 1};
          parseStatements(unit, inner, bodyEnd > 0 ? bodyEnd - 1 : bodyEnd, body);
          unit.addChild(fn, body);
          unit.addChild(parent, fn);
          cur.pos = bodyEnd;
          continue;
        }
        // Anonymous block.
        UnifiedId block = unit.addNode(NodeKind::Block, {begin, bodyEnd});
        Cursor inner{src, e + 1};
        parseStatements(unit, inner, bodyEnd > 0 ? bodyEnd - 1 : bodyEnd, block);
        unit.addChild(parent, block);
        cur.pos = bodyEnd;
        continue;
      }
      if (hit == '}' ) {
        // Unbalanced close at this level; treat the remainder as opaque.
        if (e > begin)
          unit.addChild(parent, unit.addNode(NodeKind::Other, {begin, e}));
        cur.pos = e;
        return;
      }
      std::uint32_t stop = hit == ';' ? e + 1 : e;
      unit.addChild(parent, classifySimple(unit, begin, stop, word));
      cur.pos = stop;
    }
  }

  UnifiedId classifySimple(SourceUnit& unit, std::uint32_t begin, std::uint32_t stop,
                           const std::string& word) const {
    const std::string& src = unit.bytes();
    std::string text = src.substr(begin, stop - begin);
    // Assignment: top-level '=' that is not a comparison.
    int depth = 0;
    char quote = 0;
    std::size_t assignPos = std::string::npos;
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (quote) {
        if (ch == '\\') ++i;
        else if (ch == quote) quote = 0;
        continue;
      }
      if (ch == '"' || ch == '\'') { quote = ch; continue; }
      if (ch == '(' || ch == '[') ++depth;
      if (ch == ')' || ch == ']') --depth;
      if (ch == '=' && depth == 0) {
        if (i + 1 < text.size() && text[i + 1] == '=') { ++i; continue; }
        if (i > 0 && (text[i - 1] == '=' || text[i - 1] == '<' || text[i - 1] == '>' ||
                      text[i - 1] == '!'))
          continue;
        assignPos = i;
        break;
      }
    }
    bool typeLead = typeWords().count(word) > 0;
    if (!typeLead && !word.empty()) {
      // "NAME ident" with both plain identifiers also reads as a declaration.
      std::uint32_t p = begin + static_cast<std::uint32_t>(word.size());
      while (p < stop && (src[p] == ' ' || src[p] == '*' || src[p] == '&')) ++p;
      std::string second = identAt(src, p, stop);
      if (!second.empty() && src[p + second.size()] != '(' &&
          std::isupper(static_cast<unsigned char>(word[0])))
        typeLead = true;
    }
    if (typeLead) {
      return unit.addNode(NodeKind::Declaration, {begin, stop},
                          declaredNames(text).empty() ? "" : declaredNames(text).front());
    }
    if (assignPos != std::string::npos) {
      std::vector<std::string> lhs = scanIdentifiers(text.substr(0, assignPos));
      return unit.addNode(NodeKind::Assignment, {begin, stop},
                          lhs.empty() ? "" : lhs.front());
    }
    std::size_t paren = text.find('(');
    if (paren != std::string::npos && paren > 0) {
      std::size_t np = paren;
      while (np > 0 && !(std::isalnum(static_cast<unsigned char>(text[np - 1])) ||
                         text[np - 1] == '_'))
        --np;
      std::size_t ns = np;
      while (ns > 0 && (std::isalnum(static_cast<unsigned char>(text[ns - 1])) ||
                        text[ns - 1] == '_'))
        --ns;
      if (np > ns)
        return unit.addNode(NodeKind::Call, {begin, stop}, text.substr(ns, np - ns));
    }
    return unit.addNode(NodeKind::Other, {begin, stop});
  }

  UnifiedId parseIf(SourceUnit& unit, Cursor& cur, std::uint32_t end) const {
    const std::string& src = cur.src;
    std::uint32_t begin = cur.pos;
    cur.pos += 2;  // "if"
    skipWs(cur, end);
    UnifiedId node = unit.addNode(NodeKind::If, {begin, begin});
    if (cur.pos < end && src[cur.pos] == '(') {
      std::uint32_t condEnd = skipBalanced(src, cur.pos, end);
      unit.addChild(node, unit.addNode(NodeKind::ConditionExpr, {cur.pos + 1, condEnd - 1}));
      cur.pos = condEnd;
    }
    UnifiedId thenBlock = parseBranch(unit, cur, end);
    unit.addChild(node, thenBlock);
    std::uint32_t stop = unit.node(thenBlock).range.end;
    std::uint32_t save = cur.pos;
    skipWs(cur, end);
    if (identAt(src, cur.pos, end) == "else") {
      cur.pos += 4;
      skipWs(cur, end);
      if (identAt(src, cur.pos, end) == "if") {
        UnifiedId elseIf = parseIf(unit, cur, end);
        unit.addChild(node, elseIf);
        stop = unit.node(elseIf).range.end;
      } else {
        UnifiedId elseBlock = parseBranch(unit, cur, end);
        unit.addChild(node, elseBlock);
        stop = unit.node(elseBlock).range.end;
      }
    } else {
      cur.pos = save;
    }
    unit.setRange(node, {begin, stop});
    return node;
  }

  UnifiedId parseLoop(SourceUnit& unit, Cursor& cur, std::uint32_t end, NodeKind kind,
                      const std::string& word) const {
    const std::string& src = cur.src;
    std::uint32_t begin = cur.pos;
    cur.pos += static_cast<std::uint32_t>(word.size());
    skipWs(cur, end);
    UnifiedId node = unit.addNode(kind, {begin, begin});
    if (cur.pos < end && src[cur.pos] == '(') {
      std::uint32_t condEnd = skipBalanced(src, cur.pos, end);
      unit.addChild(node, unit.addNode(NodeKind::ConditionExpr, {cur.pos + 1, condEnd - 1}));
      cur.pos = condEnd;
    }
    UnifiedId body = parseBranch(unit, cur, end);
    unit.addChild(node, body);
    unit.setRange(node, {begin, unit.node(body).range.end});
    return node;
  }

  // A braced block or a single statement.
  UnifiedId parseBranch(SourceUnit& unit, Cursor& cur, std::uint32_t end) const {
    const std::string& src = cur.src;
    skipWs(cur, end);
    if (cur.pos < end && src[cur.pos] == '{') {
      std::uint32_t open = cur.pos;
      std::uint32_t close = skipBalanced(src, open, end);
      UnifiedId block = unit.addNode(NodeKind::Block, {open, close});
      Cursor inner{src, open + 1};
      parseStatements(unit, inner, close > 0 ? close - 1 : close, block);
      cur.pos = close;
      return block;
    }
    UnifiedId block = unit.addNode(NodeKind::Block, {cur.pos, cur.pos});
    std::uint32_t save = cur.pos;
    Cursor single{src, cur.pos};
    // Parse exactly one statement into the block.
    parseOne(unit, single, end, block);
    cur.pos = single.pos;
    unit.setRange(block, {save, cur.pos});
    return block;
  }

  void parseOne(SourceUnit& unit, Cursor& cur, std::uint32_t end, UnifiedId parent) const {
    const std::string& src = cur.src;
    skipWs(cur, end);
    if (cur.pos >= end) return;
    std::string word = identAt(src, cur.pos, end);
    if (word == "if") {
      unit.addChild(parent, parseIf(unit, cur, end));
      return;
    }
    if (word == "while" || word == "for") {
      unit.addChild(parent,
                    parseLoop(unit, cur, end,
                              word == "while" ? NodeKind::While : NodeKind::For, word));
      return;
    }
    std::uint32_t begin = cur.pos;
    char hit;
    std::uint32_t e = scanToStmtEnd(src, cur.pos, end, hit);
    std::uint32_t stop = hit == ';' ? e + 1 : e;
    NodeKind kind = word == "return" ? NodeKind::Return : NodeKind::Other;
    if (word == "return") {
      unit.addChild(parent, unit.addNode(kind, {begin, stop}));
    } else {
      unit.addChild(parent, classifySimple(unit, begin, stop, word));
    }
    cur.pos = stop;
  }

  std::string tag_;
};

}  // namespace

std::shared_ptr<GrammarAdapter> makeClikeAdapter(std::string tag) {
  return std::make_shared<ClikeAdapter>(std::move(tag));
}

}  // namespace slicevc
