#include <cctype>

#include <fmt/format.h>

#include "totcheck/surface.hpp"

namespace totcheck {

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

bool is_keyword(const std::string& s) {
  return s == "data" || s == "codata" || s == "where" || s == "val" || s == "and";
}

}  // namespace

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n && i < src.size(); ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }

    Token tok;
    tok.span = {line, col};
    size_t start = i;

    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
      tok.kind = Token::Kind::Int;
    } else if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      while (i < src.size() && is_ident_char(src[i])) advance(1);
      std::string word(src.substr(start, i - start));
      if (word == "_")
        tok.kind = Token::Kind::Underscore;
      else if (is_keyword(word))
        tok.kind = Token::Kind::Keyword;
      else
        tok.kind = Token::Kind::Ident;
    } else if (std::isupper(static_cast<unsigned char>(c))) {
      while (i < src.size() && is_ident_char(src[i])) advance(1);
      tok.kind = Token::Kind::Label;
    } else if (c == '\'') {
      advance(1);
      if (i >= src.size() || !std::islower(static_cast<unsigned char>(src[i])))
        throw ParseError("a type variable must start with a lowercase letter after the quote", tok.span,
                         {"type variable"});
      while (i < src.size() && is_ident_char(src[i])) advance(1);
      tok.kind = Token::Kind::TyVar;
      tok.text = std::string(src.substr(start + 1, i - start - 1));
      out.push_back(std::move(tok));
      continue;
    } else {
      static const char* two[] = {"->", "::"};
      bool matched = false;
      for (const char* s : two) {
        if (src.substr(i, 2) == s) {
          advance(2);
          matched = true;
          break;
        }
      }
      if (!matched) {
        static const std::string singles = "(){}[];,=|:+.^-*<>@!";
        if (singles.find(c) == std::string::npos)
          throw ParseError(fmt::format("unexpected character '{}'", c), tok.span);
        advance(1);
      }
      tok.kind = Token::Kind::Symbol;
    }
    tok.text = std::string(src.substr(start, i - start));
    out.push_back(std::move(tok));
  }

  Token end;
  end.kind = Token::Kind::End;
  end.span = {line, col};
  out.push_back(end);
  return out;
}

}  // namespace totcheck
