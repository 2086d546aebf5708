#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "totcheck/ast.hpp"

namespace totcheck {

// Lexer output, exposed for diagnostics and tests.
struct Token {
  enum class Kind { Ident, Label, TyVar, Int, Keyword, Symbol, Underscore, End };
  Kind kind = Kind::End;
  std::string text;
  Span span;
};

std::vector<Token> lex(std::string_view source);

Program parse_program(std::string_view source);

// Parses a standalone term such as the EXPR argument of `totcheck eval`.
// Every lowercase identifier is read as a function name.
Term parse_term(std::string_view source);

// Rewrites numerals, `n+k`, list sugar, nullary and n-ary constructors into
// core forms.  Constructor arities come from the program's own declarations.
Program desugar(const Program& p);

// Desugars a standalone term against the declarations of `p` (already
// desugared).
Term desugar_term(const Term& t, const Program& p);

std::string format(const Program& p);
std::string format(const TypeDecl& d);
std::string format(const Term& t);
std::string format(const Pattern& p);

}  // namespace totcheck
