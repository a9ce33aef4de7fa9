#include "slicevc/frontend/annotations.hpp"

#include <algorithm>
#include <cctype>

namespace slicevc {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Strips comment lead-in: "#", "//", "/*".
std::string stripCommentLead(std::string text) {
  std::string t = trim(text);
  if (t.rfind("//", 0) == 0) t = t.substr(2);
  else if (t.rfind("#", 0) == 0) t = t.substr(1);
  else if (t.rfind("/*", 0) == 0) {
    t = t.substr(2);
    if (t.size() >= 2 && t.substr(t.size() - 2) == "*/") t = t.substr(0, t.size() - 2);
  }
  return trim(t);
}

// Condition carried by an assume/assert statement: the text minus the
// keyword, trailing comment, trailing semicolon, and one wrapping paren pair.
std::string conditionOf(std::string_view stmtText) {
  std::string t = trim(stmtText);
  for (const char* lead : {"assume", "assert"}) {
    if (t.rfind(lead, 0) == 0) {
      t = trim(t.substr(std::string(lead).size()));
      break;
    }
  }
  // Cut a trailing line comment.
  for (const char* mark : {"#", "//"}) {
    std::size_t p = t.find(mark);
    if (p != std::string::npos) t = trim(t.substr(0, p));
  }
  if (!t.empty() && t.back() == ';') t = trim(t.substr(0, t.size() - 1));
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
    // Only strip when the parens wrap the whole expression.
    int depth = 0;
    bool wraps = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') {
        --depth;
        if (depth == 0 && i + 1 != t.size()) {
          wraps = false;
          break;
        }
      }
    }
    if (wraps) t = trim(t.substr(1, t.size() - 2));
  }
  return t;
}

// The marker word on the statement's own line, if any: PRE or POST inside a
// trailing comment.
std::optional<std::string> lineMarker(const SourceUnit& unit, const UnifiedNode& n) {
  const std::string& bytes = unit.bytes();
  std::size_t lineEnd = bytes.find('\n', n.range.begin);
  if (lineEnd == std::string::npos) lineEnd = bytes.size();
  std::string_view line(bytes.data() + n.range.begin, lineEnd - n.range.begin);
  std::size_t cm = line.find('#');
  if (cm == std::string_view::npos) cm = line.find("//");
  if (cm == std::string_view::npos) return std::nullopt;
  std::string comment(line.substr(cm));
  if (comment.find("PRE") != std::string::npos &&
      comment.find("POST") == std::string::npos)
    return "PRE";
  if (comment.find("POST") != std::string::npos) return "POST";
  return std::nullopt;
}

}  // namespace

HoareAnnotations extractAnnotations(const SourceUnit& unit) {
  HoareAnnotations out;
  bool postSeen = false;
  forEachNode(unit, unit.root(), [&](UnifiedId id, const UnifiedNode& n) {
    if (n.kind == NodeKind::Assume) {
      auto marker = lineMarker(unit, n);
      if (!marker) return;
      std::string cond = conditionOf(unit.text(n.range));
      if (*marker == "PRE") {
        if (!out.pre) out.pre = cond;
        return;
      }
      if (postSeen && out.post && *out.post != cond)
        throw AnnotationError("multiple conflicting POST markers");
      out.post = cond;
      out.postNode = id;
      postSeen = true;
      return;
    }
    if (n.kind == NodeKind::Comment) {
      std::string body = stripCommentLead(std::string(unit.text(n.range)));
      for (const char* tag : {"PRE", "POST"}) {
        std::string lead = std::string(tag) + ":";
        if (body.rfind(lead, 0) == 0) {
          std::string cond = trim(body.substr(lead.size()));
          if (std::string(tag) == "PRE") {
            if (!out.pre) out.pre = cond;
          } else {
            if (postSeen && out.post && *out.post != cond)
              throw AnnotationError("multiple conflicting POST markers");
            out.post = cond;
            postSeen = true;
          }
        }
      }
    }
  });
  return out;
}

}  // namespace slicevc
