#pragma once

#include <optional>
#include <string>
#include <vector>

#include "totcheck/errors.hpp"

namespace totcheck {

struct TypeExpr {
  enum class Kind { Var, App, Arrow };

  Kind kind = Kind::App;
  std::string name;            // variable name (without quote) or type name
  std::vector<TypeExpr> args;  // App parameters; Arrow: {from, to}

  static TypeExpr var(std::string name);
  static TypeExpr app(std::string name, std::vector<TypeExpr> args = {});
  static TypeExpr arrow(TypeExpr from, TypeExpr to);

  bool is_var() const { return kind == Kind::Var; }
  bool is_app() const { return kind == Kind::App; }
  bool is_arrow() const { return kind == Kind::Arrow; }
  const TypeExpr& from() const { return args[0]; }
  const TypeExpr& to() const { return args[1]; }

  bool operator==(const TypeExpr&) const = default;
};

std::string to_string(const TypeExpr& t);
bool is_closed(const TypeExpr& t);
bool occurs_in(const TypeExpr& needle, const TypeExpr& haystack);

// Patterns and terms share one node layout.  Sugar kinds (Num, Plus, List,
// Cons) only appear before desugaring.
struct Pattern {
  enum class Kind { Var, Ctor, Record, Num, Plus, List, Cons };

  Kind kind = Kind::Var;
  Span span;
  std::string name;                 // variable name ("_" is a wildcard) or label
  long number = 0;                  // Num value, Plus offset
  std::vector<Pattern> args;        // Ctor argument(s), Record values, sugar operands
  std::vector<std::string> labels;  // Record labels, parallel to args, sorted

  std::optional<TypeExpr> type;     // stamped by inference
  int prio = -1;                    // stamped by the game

  static Pattern var(std::string name, Span span = {});
  static Pattern ctor(std::string label, Pattern arg, Span span = {});
  static Pattern record(std::vector<std::pair<std::string, Pattern>> fields, Span span = {});

  bool is_wildcard() const { return kind == Kind::Var && name == "_"; }
};

struct Term {
  enum class Kind { Var, Fun, Ctor, Record, App, Num, Plus, List, Cons };

  Kind kind = Kind::Var;
  Span span;
  std::string name;
  long number = 0;
  // Ctor: zero args is an unapplied constructor used as a function; after
  // desugaring an applied constructor has exactly one argument.
  // App: {function, argument}.
  std::vector<Term> args;
  std::vector<std::string> labels;

  std::optional<TypeExpr> type;
  int prio = -1;

  static Term var(std::string name, Span span = {});
  static Term fun(std::string name, Span span = {});
  static Term ctor(std::string label, Term arg, Span span = {});
  static Term ctor_fn(std::string label, Span span = {});
  static Term record(std::vector<std::pair<std::string, Term>> fields, Span span = {});
  static Term app(Term fn, Term arg, Span span = {});
};

// Structural equality, ignoring spans and annotations.
bool operator==(const Pattern& a, const Pattern& b);
bool operator==(const Term& a, const Term& b);

enum class Polarity { Data, Codata };

struct TypeItem {
  std::string label;
  TypeExpr sig;  // data: `arg -> self`; codata: `self -> result`
  Span span;
};

struct TypeDecl {
  std::string name;
  Polarity polarity = Polarity::Data;
  std::vector<std::string> params;
  std::vector<TypeItem> items;
  Span span;

  TypeExpr self_type() const;
  bool operator==(const TypeDecl& o) const;
};

using TypeGroup = std::vector<TypeDecl>;

struct FunSig {
  std::string name;
  std::optional<TypeExpr> annotation;
  Span span;
};

struct Clause {
  std::string name;
  std::vector<Pattern> pats;
  Term rhs;
  Span span;
};

struct DefGroup {
  std::vector<FunSig> functions;
  std::vector<Clause> clauses;
  Span span;

  bool defines(const std::string& name) const;
  std::vector<std::string> names() const;
  // Number of patterns of the first clause of `name` (0 when it has none).
  size_t arity(const std::string& name) const;
};

struct Program {
  std::vector<TypeGroup> type_groups;
  std::vector<DefGroup> def_groups;
};

bool operator==(const DefGroup& a, const DefGroup& b);
bool operator==(const Program& a, const Program& b);

}  // namespace totcheck
