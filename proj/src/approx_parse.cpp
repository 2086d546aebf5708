#include <fmt/format.h>

#include "totcheck/approx.hpp"
#include "totcheck/surface.hpp"

namespace totcheck::sct {

namespace {

class DumpParser {
 public:
  explicit DumpParser(std::string_view text) : toks_(lex(text)) {}

  ApproxTerm whole_term() {
    ApproxTerm t = term();
    if (peek().kind != Token::Kind::End) fail("end of input");
    return t;
  }

  Weight whole_weight() {
    Weight w = weight();
    if (peek().kind != Token::Kind::End) fail("end of input");
    return w;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;

  const Token& peek() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool is_sym(const char* s) const { return peek().kind == Token::Kind::Symbol && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(fmt::format("expected {} in approximation term, found `{}`", what, peek().text), peek().span,
                     {what});
  }

  void expect_sym(const char* s) {
    if (!is_sym(s)) fail(fmt::format("`{}`", s));
    next();
  }

  long integer() {
    if (peek().kind != Token::Kind::Int) fail("integer");
    return std::stol(next().text);
  }

  int priority() {
    expect_sym("^");
    if (is_sym("-")) {
      next();
      return -static_cast<int>(integer());
    }
    return static_cast<int>(integer());
  }

  Weight weight() {
    expect_sym("<");
    if (peek().kind == Token::Kind::Label && peek().text == "T") {
      next();
      expect_sym(">");
      return Weight::daimon();
    }
    Weight w;
    while (!is_sym(">")) {
      int sign = 1;
      if (is_sym("+")) {
        next();
      } else if (is_sym("-")) {
        next();
        sign = -1;
      }
      ZInf v;
      if (peek().kind == Token::Kind::Ident && peek().text == "inf") {
        next();
        v = kInf;
      } else {
        v = sign * integer();
      }
      expect_sym("@");
      w += Weight::single(static_cast<int>(integer()), v);
      if (!is_sym(",")) break;
      next();
    }
    expect_sym(">");
    return w;
  }

  ApproxTerm term() {
    bool explicit_weight = is_sym("<");
    std::vector<Factor> fs;
    fs.push_back(factor());
    while (is_sym("*")) {
      next();
      fs.push_back(factor());
    }
    if (fs.size() == 1) return explicit_weight ? weighted(fs[0].weight, fs[0].term) : fs[0].term;
    return product(std::move(fs));
  }

  // An unweighted factor of a product carries the identity weight.
  Factor factor() {
    if (is_sym("<")) {
      Weight w = weight();
      return {w, unary()};
    }
    return {Weight::empty(), unary()};
  }

  ApproxTerm unary() {
    if (is_sym("!")) {
      next();
      return err();
    }
    if (is_sym("(")) {
      next();
      ApproxTerm t = term();
      expect_sym(")");
      return t;
    }
    if (is_sym("<")) {
      Weight w = weight();
      return weighted(w, unary());
    }
    if (is_sym(".")) {
      next();
      if (peek().kind != Token::Kind::Label) fail("destructor name");
      std::string label = next().text;
      int p = priority();
      return proj(label, p, unary());
    }
    if (is_sym("{")) {
      next();
      std::vector<std::pair<std::string, ApproxTerm>> fields;
      while (!is_sym("}")) {
        if (peek().kind != Token::Kind::Label) fail("field name");
        std::string label = next().text;
        expect_sym("=");
        fields.emplace_back(label, term());
        if (!is_sym(";")) break;
        next();
      }
      expect_sym("}");
      int p = is_sym("^") ? priority() : -1;
      return record(std::move(fields), p);
    }
    if (peek().kind == Token::Kind::Label) {
      std::string label = next().text;
      int p = priority();
      if (is_sym("-")) {
        next();
        return ctor_inv(label, p, unary());
      }
      return ctor(label, p, unary());
    }
    if (peek().kind == Token::Kind::Ident && peek().text.size() > 1 && peek().text[0] == 'x') {
      std::string name = next().text;
      int idx = std::stoi(name.substr(1));
      if (idx < 1) fail("parameter x1, x2, ...");
      return param(idx - 1);
    }
    fail("approximation term");
  }
};

}  // namespace

ApproxTerm parse_approx(std::string_view text) { return DumpParser(text).whole_term(); }

Weight parse_weight(std::string_view text) { return DumpParser(text).whole_weight(); }

}  // namespace totcheck::sct
