#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "slicevc/minilang/ast.hpp"

namespace slicevc::mini {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line(line),
        column(column) {}
  int line;
  int column;
};

/// A line comment in the source, kept for annotation extraction and rendering.
struct CommentToken {
  SrcRange range;  // starts at '#', excludes the newline
  std::string text;
};

struct ParseResult {
  StmtPtr program;  // root Block spanning the file
  std::vector<CommentToken> comments;
  NodeId nodeCount = 0;
};

/// Parses mini-language source text. The concrete syntax is line-oriented and
/// brace-delimited:
///
///   skip
///   x := e
///   xs.insert(e)        sugar for  xs := xs.insert(e)
///   xs.delete(e)        sugar for  xs := xs.delete(e)
///   assume(b)           assume(0) is accepted as assume(false)
///   read(x)
///   write(e)
///   if (b) { ... } else { ... }      else part optional
///   while (b) { ... }
///   # line comment
///
/// Expressions: integer literals, variables, + - *, unary -, xs.size(),
/// xs.insert(e), xs.delete(e); conditions: < <= > >= == !=, && || !,
/// true/false. Throws ParseError with line/column on malformed input.
ParseResult parseMini(const std::string& source);

}  // namespace slicevc::mini
