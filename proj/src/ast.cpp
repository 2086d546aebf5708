#include "totcheck/ast.hpp"

#include <algorithm>

namespace totcheck {

TypeExpr TypeExpr::var(std::string name) {
  TypeExpr t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  return t;
}

TypeExpr TypeExpr::app(std::string name, std::vector<TypeExpr> args) {
  TypeExpr t;
  t.kind = Kind::App;
  t.name = std::move(name);
  t.args = std::move(args);
  return t;
}

TypeExpr TypeExpr::arrow(TypeExpr from, TypeExpr to) {
  TypeExpr t;
  t.kind = Kind::Arrow;
  t.args.push_back(std::move(from));
  t.args.push_back(std::move(to));
  return t;
}

std::string to_string(const TypeExpr& t) {
  switch (t.kind) {
    case TypeExpr::Kind::Var:
      return "'" + t.name;
    case TypeExpr::Kind::App: {
      if (t.args.empty()) return t.name;
      std::string out = t.name + "(";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) out += ", ";
        out += to_string(t.args[i]);
      }
      return out + ")";
    }
    case TypeExpr::Kind::Arrow: {
      std::string lhs = to_string(t.from());
      if (t.from().is_arrow()) lhs = "(" + lhs + ")";
      return lhs + " -> " + to_string(t.to());
    }
  }
  return {};
}

bool is_closed(const TypeExpr& t) {
  if (t.is_var()) return false;
  return std::all_of(t.args.begin(), t.args.end(), [](const TypeExpr& a) { return is_closed(a); });
}

bool occurs_in(const TypeExpr& needle, const TypeExpr& haystack) {
  if (needle == haystack) return true;
  return std::any_of(haystack.args.begin(), haystack.args.end(),
                     [&](const TypeExpr& a) { return occurs_in(needle, a); });
}

namespace {

template <class Node>
void sort_fields(Node& n) {
  std::vector<size_t> idx(n.labels.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return n.labels[a] < n.labels[b]; });
  std::vector<std::string> labels;
  decltype(n.args) args;
  for (size_t i : idx) {
    labels.push_back(std::move(n.labels[i]));
    args.push_back(std::move(n.args[i]));
  }
  n.labels = std::move(labels);
  n.args = std::move(args);
}

template <class Node>
bool same_node(const Node& a, const Node& b) {
  return a.kind == b.kind && a.name == b.name && a.number == b.number && a.labels == b.labels &&
         a.args == b.args;
}

}  // namespace

Pattern Pattern::var(std::string name, Span span) {
  Pattern p;
  p.kind = Kind::Var;
  p.name = std::move(name);
  p.span = span;
  return p;
}

Pattern Pattern::ctor(std::string label, Pattern arg, Span span) {
  Pattern p;
  p.kind = Kind::Ctor;
  p.name = std::move(label);
  p.args.push_back(std::move(arg));
  p.span = span;
  return p;
}

Pattern Pattern::record(std::vector<std::pair<std::string, Pattern>> fields, Span span) {
  Pattern p;
  p.kind = Kind::Record;
  p.span = span;
  for (auto& [l, v] : fields) {
    p.labels.push_back(l);
    p.args.push_back(std::move(v));
  }
  sort_fields(p);
  return p;
}

Term Term::var(std::string name, Span span) {
  Term t;
  t.kind = Kind::Var;
  t.name = std::move(name);
  t.span = span;
  return t;
}

Term Term::fun(std::string name, Span span) {
  Term t;
  t.kind = Kind::Fun;
  t.name = std::move(name);
  t.span = span;
  return t;
}

Term Term::ctor(std::string label, Term arg, Span span) {
  Term t;
  t.kind = Kind::Ctor;
  t.name = std::move(label);
  t.args.push_back(std::move(arg));
  t.span = span;
  return t;
}

Term Term::ctor_fn(std::string label, Span span) {
  Term t;
  t.kind = Kind::Ctor;
  t.name = std::move(label);
  t.span = span;
  return t;
}

Term Term::record(std::vector<std::pair<std::string, Term>> fields, Span span) {
  Term t;
  t.kind = Kind::Record;
  t.span = span;
  for (auto& [l, v] : fields) {
    t.labels.push_back(l);
    t.args.push_back(std::move(v));
  }
  sort_fields(t);
  return t;
}

Term Term::app(Term fn, Term arg, Span span) {
  Term t;
  t.kind = Kind::App;
  t.args.push_back(std::move(fn));
  t.args.push_back(std::move(arg));
  t.span = span;
  return t;
}

bool operator==(const Pattern& a, const Pattern& b) { return same_node(a, b); }
bool operator==(const Term& a, const Term& b) { return same_node(a, b); }

TypeExpr TypeDecl::self_type() const {
  std::vector<TypeExpr> args;
  for (const auto& p : params) args.push_back(TypeExpr::var(p));
  return TypeExpr::app(name, std::move(args));
}

bool TypeDecl::operator==(const TypeDecl& o) const {
  if (name != o.name || polarity != o.polarity || params != o.params || items.size() != o.items.size())
    return false;
  for (size_t i = 0; i < items.size(); ++i) {
    if (items[i].label != o.items[i].label || !(items[i].sig == o.items[i].sig)) return false;
  }
  return true;
}

bool DefGroup::defines(const std::string& name) const {
  return std::any_of(functions.begin(), functions.end(), [&](const FunSig& f) { return f.name == name; });
}

std::vector<std::string> DefGroup::names() const {
  std::vector<std::string> out;
  for (const auto& f : functions) out.push_back(f.name);
  return out;
}

size_t DefGroup::arity(const std::string& name) const {
  for (const auto& c : clauses)
    if (c.name == name) return c.pats.size();
  return 0;
}

bool operator==(const DefGroup& a, const DefGroup& b) {
  if (a.functions.size() != b.functions.size() || a.clauses.size() != b.clauses.size()) return false;
  // Function order inside a group carries no meaning.
  auto sorted = [](const DefGroup& g) {
    std::vector<std::pair<std::string, std::optional<TypeExpr>>> out;
    for (const auto& f : g.functions) out.emplace_back(f.name, f.annotation);
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  };
  if (sorted(a) != sorted(b)) return false;
  for (size_t i = 0; i < a.clauses.size(); ++i) {
    const auto& x = a.clauses[i];
    const auto& y = b.clauses[i];
    if (x.name != y.name || !(x.pats == y.pats) || !(x.rhs == y.rhs)) return false;
  }
  return true;
}

bool operator==(const Program& a, const Program& b) {
  return a.type_groups == b.type_groups && a.def_groups == b.def_groups;
}

}  // namespace totcheck
