#include "slicevc/minilang/parse.hpp"

#include <cctype>
#include <optional>

namespace slicevc::mini {

namespace {

enum class Tok { Ident, Int, Punct, Newline, End };

struct Token {
  Tok kind;
  std::string text;
  std::uint32_t pos = 0;  // byte offset
  int line = 1;
  int col = 1;
  std::uint32_t endPos() const { return pos + static_cast<std::uint32_t>(text.size()); }
};

const char* kReserved[] = {"skip", "assume", "read", "write", "if",
                           "else", "while", "true", "false"};

bool isReserved(const std::string& s) {
  for (const char* r : kReserved)
    if (s == r) return true;
  return false;
}

class Lexer {
public:
  Lexer(const std::string& src, std::vector<CommentToken>& comments)
      : src_(src), comments_(comments) {
    lexAll();
  }
  const std::vector<Token>& tokens() const { return tokens_; }

private:
  void lexAll() {
    std::uint32_t i = 0;
    int line = 1, col = 1;
    auto push = [&](Tok k, std::string text, std::uint32_t pos, int l, int c) {
      tokens_.push_back({k, std::move(text), pos, l, c});
    };
    while (i < src_.size()) {
      char c = src_[i];
      if (c == '\n') {
        push(Tok::Newline, "\n", i, line, col);
        ++i;
        ++line;
        col = 1;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
        ++col;
        continue;
      }
      if (c == '#') {
        std::uint32_t start = i;
        while (i < src_.size() && src_[i] != '\n') ++i;
        comments_.push_back({{start, i}, src_.substr(start, i - start)});
        col += static_cast<int>(i - start);
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::uint32_t start = i;
        while (i < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i])) ||
                                   src_[i] == '_'))
          ++i;
        push(Tok::Ident, src_.substr(start, i - start), start, line, col);
        col += static_cast<int>(i - start);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint32_t start = i;
        while (i < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i]))) ++i;
        push(Tok::Int, src_.substr(start, i - start), start, line, col);
        col += static_cast<int>(i - start);
        continue;
      }
      // Two-character operators first.
      static const char* kDigraphs[] = {":=", "<=", ">=", "==", "!=", "&&", "||"};
      bool matched = false;
      for (const char* d : kDigraphs) {
        if (src_.compare(i, 2, d) == 0) {
          push(Tok::Punct, d, i, line, col);
          i += 2;
          col += 2;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      static const std::string kSingles = "()+-*<>!{}.";
      if (kSingles.find(c) != std::string::npos) {
        push(Tok::Punct, std::string(1, c), i, line, col);
        ++i;
        ++col;
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    tokens_.push_back({Tok::End, "", static_cast<std::uint32_t>(src_.size()), line, col});
  }

  const std::string& src_;
  std::vector<CommentToken>& comments_;
  std::vector<Token> tokens_;
};

class Parser {
public:
  explicit Parser(const std::vector<Token>& toks) : toks_(toks) {}

  StmtPtr parseProgram() {
    auto root = makeStmt(StmtKind::Block);
    root->range.begin = 0;
    skipNewlines();
    while (!at(Tok::End)) {
      root->body.push_back(parseStmt());
      expectStmtEnd();
    }
    root->range.end = cur().pos;
    return root;
  }

private:
  const Token& cur() const { return toks_[idx_]; }
  const Token& peek(std::size_t n = 1) const {
    return toks_[std::min(idx_ + n, toks_.size() - 1)];
  }
  bool at(Tok k) const { return cur().kind == k; }
  bool atPunct(const char* p) const { return at(Tok::Punct) && cur().text == p; }
  bool atIdent(const char* w) const { return at(Tok::Ident) && cur().text == w; }
  Token take() { return toks_[idx_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur().line, cur().col);
  }

  void expectPunct(const char* p) {
    if (!atPunct(p)) fail(std::string("expected '") + p + "'");
    take();
  }

  void skipNewlines() {
    while (at(Tok::Newline)) take();
  }

  void expectStmtEnd() {
    if (at(Tok::End)) return;
    if (!at(Tok::Newline)) fail("expected end of statement");
    skipNewlines();
  }

  std::string expectVar() {
    if (!at(Tok::Ident)) fail("expected variable name");
    if (isReserved(cur().text)) fail("reserved word '" + cur().text + "' used as a variable");
    return take().text;
  }

  StmtPtr parseStmt() {
    std::uint32_t start = cur().pos;
    StmtPtr s;
    if (atIdent("skip")) {
      Token t = take();
      s = makeStmt(StmtKind::Skip);
      s->range = {start, t.endPos()};
      return s;
    }
    if (atIdent("assume")) {
      take();
      expectPunct("(");
      ExprPtr cond;
      bool unreachable = false;
      if (at(Tok::Int) && cur().text == "0" && peek().kind == Tok::Punct &&
          peek().text == ")") {
        take();
        cond = std::make_unique<Expr>();
        cond->kind = ExprKind::BoolLit;
        cond->boolValue = false;
        unreachable = true;
      } else {
        cond = parseExpr();
      }
      Token close = cur();
      expectPunct(")");
      s = makeStmt(StmtKind::Assume);
      s->expr = std::move(cond);
      s->unreachableMark = unreachable;
      s->range = {start, close.endPos()};
      return s;
    }
    if (atIdent("read")) {
      take();
      expectPunct("(");
      std::string v = expectVar();
      Token close = cur();
      expectPunct(")");
      s = makeStmt(StmtKind::Read);
      s->target = v;
      s->range = {start, close.endPos()};
      return s;
    }
    if (atIdent("write")) {
      take();
      expectPunct("(");
      ExprPtr e = parseExpr();
      Token close = cur();
      expectPunct(")");
      s = makeStmt(StmtKind::Write);
      s->expr = std::move(e);
      s->range = {start, close.endPos()};
      return s;
    }
    if (atIdent("if")) {
      take();
      expectPunct("(");
      ExprPtr cond = parseExpr();
      expectPunct(")");
      s = makeStmt(StmtKind::If);
      s->expr = std::move(cond);
      s->thenBranch = parseBlock();
      std::uint32_t end = s->thenBranch->range.end;
      if (atIdent("else")) {
        take();
        s->elseBranch = parseBlock();
        end = s->elseBranch->range.end;
      }
      s->range = {start, end};
      return s;
    }
    if (atIdent("while")) {
      take();
      expectPunct("(");
      ExprPtr cond = parseExpr();
      expectPunct(")");
      s = makeStmt(StmtKind::While);
      s->expr = std::move(cond);
      s->loopBody = parseBlock();
      s->range = {start, s->loopBody->range.end};
      return s;
    }
    if (at(Tok::Ident)) {
      if (isReserved(cur().text))
        fail("reserved word '" + cur().text + "' cannot start a statement here");
      std::string name = take().text;
      if (atPunct(":=")) {
        take();
        ExprPtr e = parseExpr();
        s = makeStmt(StmtKind::Assign);
        s->target = name;
        std::uint32_t end = e->range.end;
        s->expr = std::move(e);
        s->range = {start, end};
        return s;
      }
      if (atPunct(".")) {
        take();
        if (!at(Tok::Ident)) fail("expected method name after '.'");
        std::string method = take().text;
        if (method != "insert" && method != "delete")
          fail("unknown statement method '" + method + "'");
        expectPunct("(");
        ExprPtr arg = parseExpr();
        Token close = cur();
        expectPunct(")");
        // Sugar: xs.insert(e) is xs := xs.insert(e).
        auto call = std::make_unique<Expr>();
        call->kind = method == "insert" ? ExprKind::SeqInsert : ExprKind::SeqDelete;
        call->var = name;
        call->args.push_back(std::move(arg));
        call->range = {start, close.endPos()};
        s = makeStmt(StmtKind::Assign);
        s->target = name;
        s->expr = std::move(call);
        s->range = {start, close.endPos()};
        return s;
      }
      fail("expected ':=' or '.' after identifier");
    }
    fail("expected a statement");
  }

  StmtPtr parseBlock() {
    std::uint32_t start = cur().pos;
    expectPunct("{");
    skipNewlines();
    auto block = makeStmt(StmtKind::Block);
    block->range.begin = start;
    while (!atPunct("}")) {
      if (at(Tok::End)) fail("unterminated block, expected '}'");
      block->body.push_back(parseStmt());
      if (atPunct("}")) break;
      expectStmtEnd();
    }
    Token close = take();  // '}'
    block->range.end = close.endPos();
    return block;
  }

  // Precedence: || < && < comparisons < + - < * < unary (- !) < primary.
  ExprPtr parseExpr() { return parseOr(); }

  ExprPtr binary(ExprKind k, ExprPtr lhs, ExprPtr rhs) {
    auto out = std::make_unique<Expr>();
    out->kind = k;
    out->range = {lhs->range.begin, rhs->range.end};
    out->args.push_back(std::move(lhs));
    out->args.push_back(std::move(rhs));
    return out;
  }

  ExprPtr parseOr() {
    ExprPtr lhs = parseAnd();
    while (atPunct("||")) {
      take();
      lhs = binary(ExprKind::Or, std::move(lhs), parseAnd());
    }
    return lhs;
  }

  ExprPtr parseAnd() {
    ExprPtr lhs = parseCompare();
    while (atPunct("&&")) {
      take();
      lhs = binary(ExprKind::And, std::move(lhs), parseCompare());
    }
    return lhs;
  }

  ExprPtr parseCompare() {
    ExprPtr lhs = parseAdd();
    struct Op {
      const char* text;
      ExprKind kind;
    };
    static const Op kOps[] = {{"<=", ExprKind::Le}, {">=", ExprKind::Ge},
                              {"==", ExprKind::Eq}, {"!=", ExprKind::Ne},
                              {"<", ExprKind::Lt},  {">", ExprKind::Gt}};
    for (const Op& op : kOps) {
      if (atPunct(op.text)) {
        take();
        return binary(op.kind, std::move(lhs), parseAdd());
      }
    }
    return lhs;
  }

  ExprPtr parseAdd() {
    ExprPtr lhs = parseMul();
    while (atPunct("+") || atPunct("-")) {
      ExprKind k = cur().text == "+" ? ExprKind::Add : ExprKind::Sub;
      take();
      lhs = binary(k, std::move(lhs), parseMul());
    }
    return lhs;
  }

  ExprPtr parseMul() {
    ExprPtr lhs = parseUnary();
    while (atPunct("*")) {
      take();
      lhs = binary(ExprKind::Mul, std::move(lhs), parseUnary());
    }
    return lhs;
  }

  ExprPtr parseUnary() {
    std::uint32_t start = cur().pos;
    if (atPunct("-")) {
      take();
      auto out = std::make_unique<Expr>();
      out->kind = ExprKind::Neg;
      out->args.push_back(parseUnary());
      out->range = {start, out->args[0]->range.end};
      return out;
    }
    if (atPunct("!")) {
      take();
      auto out = std::make_unique<Expr>();
      out->kind = ExprKind::Not;
      out->args.push_back(parseUnary());
      out->range = {start, out->args[0]->range.end};
      return out;
    }
    return parsePrimary();
  }

  ExprPtr parsePrimary() {
    std::uint32_t start = cur().pos;
    if (atPunct("(")) {
      take();
      ExprPtr inner = parseExpr();
      Token close = cur();
      expectPunct(")");
      inner->range = {start, close.endPos()};
      return inner;
    }
    if (at(Tok::Int)) {
      Token t = take();
      auto out = std::make_unique<Expr>();
      out->kind = ExprKind::IntLit;
      out->intValue = BigInt::fromDecimal(t.text);
      out->range = {t.pos, t.endPos()};
      return out;
    }
    if (atIdent("true") || atIdent("false")) {
      Token t = take();
      auto out = std::make_unique<Expr>();
      out->kind = ExprKind::BoolLit;
      out->boolValue = t.text == "true";
      out->range = {t.pos, t.endPos()};
      return out;
    }
    if (at(Tok::Ident)) {
      if (isReserved(cur().text))
        fail("reserved word '" + cur().text + "' used in an expression");
      Token t = take();
      if (atPunct(".")) {
        take();
        if (!at(Tok::Ident)) fail("expected method name after '.'");
        std::string method = take().text;
        expectPunct("(");
        auto out = std::make_unique<Expr>();
        out->var = t.text;
        if (method == "size") {
          out->kind = ExprKind::SeqSize;
        } else if (method == "insert" || method == "delete") {
          out->kind = method == "insert" ? ExprKind::SeqInsert : ExprKind::SeqDelete;
          out->args.push_back(parseExpr());
        } else {
          fail("unknown method '" + method + "'");
        }
        Token close = cur();
        expectPunct(")");
        out->range = {start, close.endPos()};
        return out;
      }
      auto out = std::make_unique<Expr>();
      out->kind = ExprKind::Var;
      out->var = t.text;
      out->range = {t.pos, t.endPos()};
      return out;
    }
    fail("expected an expression");
  }

  const std::vector<Token>& toks_;
  std::size_t idx_ = 0;
};

void assignIds(Stmt& s, NodeId& next) {
  s.id = next++;
  if (s.origin == kNoId) s.origin = s.id;
  for (auto& c : s.body) assignIds(*c, next);
  if (s.thenBranch) assignIds(*s.thenBranch, next);
  if (s.elseBranch) assignIds(*s.elseBranch, next);
  if (s.loopBody) assignIds(*s.loopBody, next);
}

}  // namespace

ParseResult parseMini(const std::string& source) {
  ParseResult out;
  Lexer lexer(source, out.comments);
  Parser parser(lexer.tokens());
  out.program = parser.parseProgram();
  NodeId next = 0;
  assignIds(*out.program, next);
  out.nodeCount = next;
  return out;
}

}  // namespace slicevc::mini
