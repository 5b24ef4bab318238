#include "dlfd/parser.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <vector>

namespace dlfd {

ParseError::ParseError(Kind kind, std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column),
      detail_(message) {}

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::lexical:
      return "lexical error";
    case ParseError::Kind::syntax:
      return "syntax error";
    case ParseError::Kind::pfd_position:
      return "PFD in forbidden position";
    case ParseError::Kind::empty_path_list:
      return "empty PFD path list";
  }
  return "error";
}

namespace {

enum class Tok { ident, amp, bar, tilde, dot, lparen, rparen, colon, comma, arrow, sqsub, semi, end };

const char* describe(Tok t) {
  switch (t) {
    case Tok::ident: return "identifier";
    case Tok::amp: return "'&'";
    case Tok::bar: return "'|'";
    case Tok::tilde: return "'~'";
    case Tok::dot: return "'.'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::colon: return "':'";
    case Tok::comma: return "','";
    case Tok::arrow: return "'->'";
    case Tok::sqsub: return "'<='";
    case Tok::semi: return "';'";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok type;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, k = 0;
  auto advance = [&](std::size_t count) {
    for (std::size_t j = 0; j < count; ++j) {
      if (src[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++k;
    }
  };
  while (k < src.size()) {
    const char ch = src[k];
    const auto uch = static_cast<unsigned char>(ch);
    if (std::isspace(uch)) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (k < src.size() && src[k] != '\n') advance(1);
      continue;
    }
    const std::size_t l = line, c = col;
    if (std::isalpha(uch) || ch == '_') {
      std::size_t end = k + 1;
      while (end < src.size()) {
        const auto e = static_cast<unsigned char>(src[end]);
        if (!std::isalnum(e) && e != '_' && e != '\'') break;
        ++end;
      }
      out.push_back({Tok::ident, std::string(src.substr(k, end - k)), l, c});
      advance(end - k);
      continue;
    }
    auto single = [&](Tok t) {
      out.push_back({t, std::string(1, ch), l, c});
      advance(1);
    };
    switch (ch) {
      case '&': single(Tok::amp); continue;
      case '|': single(Tok::bar); continue;
      case '~': single(Tok::tilde); continue;
      case '.': single(Tok::dot); continue;
      case '(': single(Tok::lparen); continue;
      case ')': single(Tok::rparen); continue;
      case ':': single(Tok::colon); continue;
      case ',': single(Tok::comma); continue;
      case ';': single(Tok::semi); continue;
      case '-':
        if (k + 1 < src.size() && src[k + 1] == '>') {
          out.push_back({Tok::arrow, "->", l, c});
          advance(2);
          continue;
        }
        break;
      case '<':
        if (k + 1 < src.size() && src[k + 1] == '=') {
          out.push_back({Tok::sqsub, "<=", l, c});
          advance(2);
          continue;
        }
        break;
      default:
        break;
    }
    std::string shown = uch < 0x20 || uch >= 0x7f ? "byte 0x" + [&] {
      const char* hex = "0123456789abcdef";
      return std::string{hex[uch >> 4], hex[uch & 15]};
    }() : std::string("'") + ch + "'";
    throw ParseError(ParseError::Kind::lexical, l, c, "unexpected character " + shown);
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

// Unified expression tree: concepts and fd(...) share one grammar so that a
// misplaced PFD is reported as such rather than as a generic syntax error.
struct Expr {
  enum class Kind { name, top, bot, neg, all, conj, disj, fd } kind;
  std::string text;  // concept name or restriction feature
  std::vector<std::unique_ptr<Expr>> kids;
  std::vector<PathExpr> fd_lhs;
  PathExpr fd_rhs;
  std::size_t line = 0, column = 0;

  bool contains_fd() const {
    if (kind == Kind::fd) return true;
    for (const auto& k : kids)
      if (k->contains_fd()) return true;
    return false;
  }
};

using ExprPtr = std::unique_ptr<Expr>;

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Terminology terminology() {
    Terminology t;
    while (peek().type != Tok::end) t.axioms.push_back(axiom(true));
    return t;
  }

  Axiom single_axiom() {
    Axiom a = axiom(false);
    if (peek().type == Tok::semi) next();
    expect_end();
    return a;
  }

  Concept single_concept() {
    ExprPtr e = disj();
    expect_end();
    return to_concept(*e);
  }

  RhsConcept single_rhs() {
    ExprPtr e = disj();
    expect_end();
    return to_rhs(*e);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(const Token& at, const std::string& msg) const {
    throw ParseError(ParseError::Kind::syntax, at.line, at.column, msg);
  }

  const Token& expect(Tok t) {
    if (peek().type != t) {
      fail(peek(), std::string("expected ") + describe(t) + ", found " +
                       (peek().type == Tok::ident ? "'" + peek().text + "'" : describe(peek().type)));
    }
    return next();
  }

  void expect_end() {
    if (peek().type != Tok::end) fail(peek(), std::string("unexpected ") + describe(peek().type) + " after expression");
  }

  bool at_keyword(std::string_view kw) const { return peek().type == Tok::ident && peek().text == kw; }

  Axiom axiom(bool require_semi) {
    const Token& start = peek();
    ExprPtr lhs = disj();
    if (lhs->contains_fd()) fail(start, "PFD on the left-hand side of '<='; fd(...) is only allowed on the right");
    expect(Tok::sqsub);
    ExprPtr rhs = disj();
    if (require_semi) expect(Tok::semi);
    return Axiom{to_concept(*lhs), to_rhs(*rhs)};
  }

  ExprPtr binary(Expr::Kind kind, const Token& at, ExprPtr a, ExprPtr b) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->line = at.line;
    e->column = at.column;
    e->kids.push_back(std::move(a));
    e->kids.push_back(std::move(b));
    return e;
  }

  ExprPtr disj() {
    ExprPtr acc = conj();
    while (peek().type == Tok::bar) {
      const Token op = next();
      acc = binary(Expr::Kind::disj, op, std::move(acc), conj());
    }
    return acc;
  }

  ExprPtr conj() {
    ExprPtr acc = unary();
    while (peek().type == Tok::amp) {
      const Token op = next();
      acc = binary(Expr::Kind::conj, op, std::move(acc), unary());
    }
    return acc;
  }

  ExprPtr unary() {
    const Token& t = peek();
    if (t.type == Tok::tilde) {
      next();
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::neg;
      e->line = t.line;
      e->column = t.column;
      e->kids.push_back(unary());
      return e;
    }
    if (at_keyword("all")) {
      const Token kw = next();
      const Token& f = expect(Tok::ident);
      check_feature(f);
      auto e = std::make_unique<Expr>();
      e->kind = Expr::Kind::all;
      e->text = f.text;
      e->line = kw.line;
      e->column = kw.column;
      expect(Tok::dot);
      e->kids.push_back(unary());
      return e;
    }
    return atom();
  }

  void check_feature(const Token& f) const {
    if (!is_identifier(f.text)) fail(f, "'" + f.text + "' is reserved and cannot name a feature");
  }

  ExprPtr atom() {
    const Token t = peek();
    auto e = std::make_unique<Expr>();
    e->line = t.line;
    e->column = t.column;
    if (t.type == Tok::lparen) {
      next();
      ExprPtr inner = disj();
      expect(Tok::rparen);
      return inner;
    }
    if (t.type != Tok::ident) {
      fail(t, std::string("expected a concept, found ") + describe(t.type));
    }
    if (t.text == "Top") {
      next();
      e->kind = Expr::Kind::top;
      return e;
    }
    if (t.text == "Bot") {
      next();
      e->kind = Expr::Kind::bot;
      return e;
    }
    if (t.text == "fd") {
      next();
      expect(Tok::lparen);
      e->kind = Expr::Kind::fd;
      e->kids.push_back(disj());
      expect(Tok::colon);
      if (peek().type == Tok::arrow) {
        throw ParseError(ParseError::Kind::empty_path_list, peek().line, peek().column,
                         "PFD needs at least one path before '->'");
      }
      e->fd_lhs.push_back(path());
      while (peek().type == Tok::comma) {
        next();
        e->fd_lhs.push_back(path());
      }
      expect(Tok::arrow);
      e->fd_rhs = path();
      expect(Tok::rparen);
      return e;
    }
    if (!is_identifier(t.text)) fail(t, "'" + t.text + "' is reserved and cannot name a concept");
    next();
    e->kind = Expr::Kind::name;
    e->text = t.text;
    return e;
  }

  PathExpr path() {
    const Token& first = expect(Tok::ident);
    if (first.text == "id") return PathExpr::identity();
    check_feature(first);
    PathExpr p;
    p.steps.emplace_back(first.text);
    while (peek().type == Tok::dot) {
      next();
      const Token& f = expect(Tok::ident);
      check_feature(f);
      p.steps.emplace_back(f.text);
    }
    return p;
  }

  static Concept to_concept(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::name:
        return Concept::primitive(ConceptName(e.text));
      case Expr::Kind::top:
        return Concept::top();
      case Expr::Kind::bot:
        return Concept::bot();
      case Expr::Kind::neg:
        return Concept::neg(to_concept(*e.kids[0]));
      case Expr::Kind::all:
        return Concept::all(FeatureName(e.text), to_concept(*e.kids[0]));
      case Expr::Kind::conj:
        return Concept::conj(to_concept(*e.kids[0]), to_concept(*e.kids[1]));
      case Expr::Kind::disj:
        return Concept::disj(to_concept(*e.kids[0]), to_concept(*e.kids[1]));
      case Expr::Kind::fd:
        break;
    }
    throw ParseError(ParseError::Kind::pfd_position, e.line, e.column,
                     "fd(...) may only appear as a conjunct on the right-hand side");
  }

  static RhsConcept to_rhs(const Expr& e) {
    if (!e.contains_fd()) return RhsConcept::plain(to_concept(e));
    if (e.kind == Expr::Kind::conj) return RhsConcept::conj(to_rhs(*e.kids[0]), to_rhs(*e.kids[1]));
    if (e.kind == Expr::Kind::fd) {
      const Expr& over = *e.kids[0];
      if (over.contains_fd()) {
        throw ParseError(ParseError::Kind::pfd_position, over.line, over.column, "fd(...) nested inside a PFD");
      }
      return RhsConcept::pfd(to_concept(over), e.fd_lhs, e.fd_rhs);
    }
    // The PFD sits under ~, all, or |; report the offending fd node.
    const Expr* cur = &e;
    while (cur->kind != Expr::Kind::fd) {
      for (const auto& k : cur->kids) {
        if (k->contains_fd()) {
          cur = k.get();
          break;
        }
      }
    }
    throw ParseError(ParseError::Kind::pfd_position, cur->line, cur->column,
                     "fd(...) may not occur under '~', 'all' or '|'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Terminology parse_terminology(std::string_view text) { return Parser(text).terminology(); }

Axiom parse_axiom(std::string_view text) { return Parser(text).single_axiom(); }

Concept parse_concept(std::string_view text) { return Parser(text).single_concept(); }

RhsConcept parse_rhs_concept(std::string_view text) { return Parser(text).single_rhs(); }

}  // namespace dlfd
