#include <set>

#include <fmt/format.h>

#include "totcheck/surface.hpp"

namespace totcheck {

namespace {

std::string describe(const Token& t) {
  if (t.kind == Token::Kind::End) return "end of input";
  return "`" + t.text + "`";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Program program() {
    Program p;
    while (!at_end()) {
      if (is_kw("data") || is_kw("codata")) {
        p.type_groups.push_back(type_group());
      } else if (is_kw("val")) {
        p.def_groups.push_back(val_block());
      } else {
        fail({"`data`", "`codata`", "`val`"});
      }
    }
    return p;
  }

  Term standalone_term() {
    Term t = term();
    if (!at_end()) fail({"end of input"});
    return t;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> vars_;

  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is_sym(const char* s, size_t k = 0) const {
    return peek(k).kind == Token::Kind::Symbol && peek(k).text == s;
  }
  bool is_kw(const char* s) const { return peek().kind == Token::Kind::Keyword && peek().text == s; }
  bool is(Token::Kind k) const { return peek().kind == k; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string msg = "expected ";
    if (expected.size() == 1) {
      msg += expected[0];
    } else {
      msg += "one of ";
      for (size_t i = 0; i < expected.size(); ++i) msg += (i ? ", " : "") + expected[i];
    }
    msg += ", found " + describe(peek());
    throw ParseError(msg, peek().span, std::move(expected));
  }

  Token expect_sym(const char* s) {
    if (!is_sym(s)) fail({fmt::format("`{}`", s)});
    return next();
  }
  Token expect_kw(const char* s) {
    if (!is_kw(s)) fail({fmt::format("`{}`", s)});
    return next();
  }
  Token expect(Token::Kind k, const char* what) {
    if (!is(k)) fail({what});
    return next();
  }

  // ---- types ----------------------------------------------------------

  TypeGroup type_group() {
    TypeGroup group;
    Polarity pol = next().text == "data" ? Polarity::Data : Polarity::Codata;
    group.push_back(type_decl(pol));
    while (is_kw("and")) {
      next();
      if (is_kw("data") || is_kw("codata")) pol = next().text == "data" ? Polarity::Data : Polarity::Codata;
      group.push_back(type_decl(pol));
    }
    return group;
  }

  TypeDecl type_decl(Polarity pol) {
    TypeDecl d;
    d.polarity = pol;
    d.span = peek().span;
    d.name = expect(Token::Kind::Ident, "type name").text;
    if (is_sym("(")) {
      next();
      d.params.push_back(expect(Token::Kind::TyVar, "type variable").text);
      while (is_sym(",")) {
        next();
        d.params.push_back(expect(Token::Kind::TyVar, "type variable").text);
      }
      expect_sym(")");
    }
    expect_kw("where");
    if (is_sym("|")) {
      next();
      if (!is(Token::Kind::Label)) fail({"constructor or destructor name"});
    }
    while (is(Token::Kind::Label)) {
      TypeItem item;
      item.span = peek().span;
      item.label = next().text;
      expect_sym(":");
      item.sig = type();
      d.items.push_back(std::move(item));
      if (!is_sym("|")) break;
      next();
      if (!is(Token::Kind::Label)) fail({"constructor or destructor name"});
    }
    return d;
  }

  TypeExpr type() {
    TypeExpr lhs = type_atom();
    if (is_sym("->")) {
      next();
      return TypeExpr::arrow(std::move(lhs), type());
    }
    return lhs;
  }

  TypeExpr type_atom() {
    if (is(Token::Kind::TyVar)) return TypeExpr::var(next().text);
    if (is(Token::Kind::Ident)) {
      std::string name = next().text;
      std::vector<TypeExpr> args;
      if (is_sym("(")) {
        next();
        args.push_back(type());
        while (is_sym(",")) {
          next();
          args.push_back(type());
        }
        expect_sym(")");
      }
      return TypeExpr::app(std::move(name), std::move(args));
    }
    if (is_sym("(")) {
      next();
      TypeExpr t = type();
      expect_sym(")");
      return t;
    }
    fail({"type"});
  }

  // ---- definitions ----------------------------------------------------

  DefGroup val_block() {
    DefGroup g;
    g.span = next().span;
    if (is_sym("|")) next();
    val_item(g);
    while (is_sym("|") || is_kw("and")) {
      next();
      val_item(g);
    }
    return g;
  }

  void val_item(DefGroup& g) {
    if (is_sym("(")) {
      throw ParseError(
          "copattern clauses such as `(f x).D = u` are not supported; build the record on the "
          "right-hand side instead",
          peek().span, {"function name"});
    }
    Span span = peek().span;
    std::string name = expect(Token::Kind::Ident, "function name").text;
    auto declare = [&](const std::string& n) -> FunSig* {
      for (auto& f : g.functions)
        if (f.name == n) return &f;
      g.functions.push_back(FunSig{n, std::nullopt, span});
      return &g.functions.back();
    };

    if (is_sym(":")) {
      next();
      FunSig* sig = declare(name);
      if (sig->annotation) throw ParseError(fmt::format("`{}` already has a type annotation", name), span);
      sig->annotation = type();
      return;
    }

    declare(name);
    Clause c;
    c.name = name;
    c.span = span;
    vars_.clear();
    while (starts_pattern_atom()) c.pats.push_back(pattern_atom());
    if (is_sym(".")) {
      throw ParseError("copattern clauses are not supported; build the record on the right-hand side instead",
                       peek().span);
    }
    expect_sym("=");
    c.rhs = term();
    vars_.clear();
    g.clauses.push_back(std::move(c));
  }

  // ---- patterns -------------------------------------------------------

  bool starts_pattern_atom() const {
    return is(Token::Kind::Ident) || is(Token::Kind::Underscore) || is(Token::Kind::Int) ||
           is(Token::Kind::Label) || is_sym("(") || is_sym("{") || is_sym("[");
  }

  Pattern bind_var(const Token& t) {
    if (!vars_.insert(t.text).second)
      throw ParseError(fmt::format("variable `{}` occurs more than once in the patterns", t.text), t.span);
    return Pattern::var(t.text, t.span);
  }

  Pattern pattern_atom() {
    Span span = peek().span;
    if (is(Token::Kind::Ident)) return bind_var(next());
    if (is(Token::Kind::Underscore)) {
      next();
      return Pattern::var("_", span);
    }
    if (is(Token::Kind::Int)) {
      Pattern p;
      p.kind = Pattern::Kind::Num;
      p.number = std::stol(next().text);
      p.span = span;
      return p;
    }
    if (is(Token::Kind::Label)) {
      Pattern p;
      p.kind = Pattern::Kind::Ctor;
      p.name = next().text;
      p.span = span;
      return p;
    }
    if (is_sym("(")) {
      next();
      Pattern p = pattern();
      expect_sym(")");
      return p;
    }
    if (is_sym("{")) {
      next();
      std::vector<std::pair<std::string, Pattern>> fields;
      std::set<std::string> seen;
      while (!is_sym("}")) {
        Token l = expect(Token::Kind::Label, "field name");
        if (!seen.insert(l.text).second)
          throw ParseError(fmt::format("field `{}` appears twice", l.text), l.span);
        expect_sym("=");
        fields.emplace_back(l.text, pattern());
        if (!is_sym(";")) break;
        next();
      }
      expect_sym("}");
      return Pattern::record(std::move(fields), span);
    }
    if (is_sym("[")) {
      next();
      Pattern p;
      p.kind = Pattern::Kind::List;
      p.span = span;
      if (!is_sym("]")) {
        p.args.push_back(pattern());
        while (is_sym(",")) {
          next();
          p.args.push_back(pattern());
        }
      }
      expect_sym("]");
      return p;
    }
    fail({"pattern"});
  }

  Pattern pattern_app() {
    Pattern p;
    if (is(Token::Kind::Label)) {
      p.kind = Pattern::Kind::Ctor;
      p.span = peek().span;
      p.name = next().text;
      while (starts_pattern_atom()) p.args.push_back(pattern_atom());
    } else {
      p = pattern_atom();
    }
    while (is_sym("+")) {
      Span span = next().span;
      Pattern plus;
      plus.kind = Pattern::Kind::Plus;
      plus.span = span;
      plus.number = std::stol(expect(Token::Kind::Int, "integer").text);
      plus.args.push_back(std::move(p));
      p = std::move(plus);
    }
    return p;
  }

  Pattern pattern() {
    Pattern head = pattern_app();
    if (is_sym("::")) {
      Span span = next().span;
      Pattern cons;
      cons.kind = Pattern::Kind::Cons;
      cons.span = span;
      cons.args.push_back(std::move(head));
      cons.args.push_back(pattern());
      return cons;
    }
    return head;
  }

  // ---- terms ----------------------------------------------------------

  bool starts_term_atom() const {
    return is(Token::Kind::Ident) || is(Token::Kind::Int) || is(Token::Kind::Label) || is_sym("(") ||
           is_sym("{") || is_sym("[");
  }

  void reject_projection() const {
    if (is_sym("."))
      throw ParseError(
          "projections are not allowed in terms; match on the record in a pattern instead",
          peek().span);
  }

  Term term() {
    reject_projection();
    Term head = term_plus();
    if (is_sym("::")) {
      Span span = next().span;
      Term cons;
      cons.kind = Term::Kind::Cons;
      cons.span = span;
      cons.args.push_back(std::move(head));
      cons.args.push_back(term());
      return cons;
    }
    return head;
  }

  Term term_plus() {
    Term t = term_app();
    while (is_sym("+")) {
      Span span = next().span;
      Term plus;
      plus.kind = Term::Kind::Plus;
      plus.span = span;
      plus.number = std::stol(expect(Token::Kind::Int, "integer").text);
      plus.args.push_back(std::move(t));
      t = std::move(plus);
    }
    return t;
  }

  Term term_app() {
    bool bare_label = is(Token::Kind::Label);
    Term head = term_atom();
    if (bare_label) {
      while (starts_term_atom()) head.args.push_back(term_atom());
      return head;
    }
    while (starts_term_atom()) {
      Span span = head.span;
      head = Term::app(std::move(head), term_atom(), span);
    }
    return head;
  }

  Term term_atom() {
    Span span = peek().span;
    Term t;
    if (is(Token::Kind::Ident)) {
      std::string name = next().text;
      t = vars_.count(name) ? Term::var(name, span) : Term::fun(name, span);
    } else if (is(Token::Kind::Int)) {
      t.kind = Term::Kind::Num;
      t.number = std::stol(next().text);
      t.span = span;
    } else if (is(Token::Kind::Label)) {
      t = Term::ctor_fn(next().text, span);
    } else if (is_sym("(")) {
      next();
      t = term();
      expect_sym(")");
    } else if (is_sym("{")) {
      next();
      std::vector<std::pair<std::string, Term>> fields;
      std::set<std::string> seen;
      while (!is_sym("}")) {
        Token l = expect(Token::Kind::Label, "field name");
        if (!seen.insert(l.text).second)
          throw ParseError(fmt::format("field `{}` appears twice", l.text), l.span);
        expect_sym("=");
        fields.emplace_back(l.text, term());
        if (!is_sym(";")) break;
        next();
      }
      expect_sym("}");
      t = Term::record(std::move(fields), span);
    } else if (is_sym("[")) {
      next();
      t.kind = Term::Kind::List;
      t.span = span;
      if (!is_sym("]")) {
        t.args.push_back(term());
        while (is_sym(",")) {
          next();
          t.args.push_back(term());
        }
      }
      expect_sym("]");
    } else {
      fail({"term"});
    }
    reject_projection();
    return t;
  }
};

}  // namespace

Program parse_program(std::string_view source) { return Parser(lex(source)).program(); }

Term parse_term(std::string_view source) { return Parser(lex(source)).standalone_term(); }

}  // namespace totcheck
