#include <fmt/format.h>

#include "totcheck/surface.hpp"

namespace totcheck {

namespace {

// Precedence levels shared by patterns and terms.
enum Level { kCons = 0, kPlus = 1, kApp = 2, kAtom = 3 };

std::string paren_if(bool cond, std::string s) { return cond ? "(" + s + ")" : s; }

bool is_unit_record(const std::vector<Pattern>& args) {
  return args.size() == 1 && args[0].kind == Pattern::Kind::Record && args[0].args.empty();
}
bool is_unit_record(const std::vector<Term>& args) {
  return args.size() == 1 && args[0].kind == Term::Kind::Record && args[0].args.empty();
}

std::string pat(const Pattern& p, Level ctx);

std::string pat_record(const Pattern& p) {
  if (p.args.empty()) return "{}";
  std::string s = "{ ";
  for (size_t i = 0; i < p.args.size(); ++i) {
    if (i) s += " ; ";
    s += p.labels[i] + " = " + pat(p.args[i], kCons);
  }
  return s + " }";
}

std::string pat(const Pattern& p, Level ctx) {
  switch (p.kind) {
    case Pattern::Kind::Var:
      return p.name;
    case Pattern::Kind::Num:
      return std::to_string(p.number);
    case Pattern::Kind::Record:
      return pat_record(p);
    case Pattern::Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < p.args.size(); ++i) s += (i ? ", " : "") + pat(p.args[i], kCons);
      return s + "]";
    }
    case Pattern::Kind::Ctor: {
      if (p.args.empty() || is_unit_record(p.args)) return p.name;
      std::string s = p.name;
      for (const auto& a : p.args) s += " " + pat(a, kAtom);
      return paren_if(ctx > kApp, s);
    }
    case Pattern::Kind::Plus:
      return paren_if(ctx > kPlus, pat(p.args[0], kApp) + "+" + std::to_string(p.number));
    case Pattern::Kind::Cons:
      return paren_if(ctx > kCons, pat(p.args[0], kPlus) + " :: " + pat(p.args[1], kCons));
  }
  return "?";
}

std::string term(const Term& t, Level ctx);

std::string term(const Term& t, Level ctx) {
  switch (t.kind) {
    case Term::Kind::Var:
    case Term::Kind::Fun:
      return t.name;
    case Term::Kind::Num:
      return std::to_string(t.number);
    case Term::Kind::Record: {
      if (t.args.empty()) return "{}";
      std::string s = "{ ";
      for (size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += " ; ";
        s += t.labels[i] + " = " + term(t.args[i], kCons);
      }
      return s + " }";
    }
    case Term::Kind::List: {
      std::string s = "[";
      for (size_t i = 0; i < t.args.size(); ++i) s += (i ? ", " : "") + term(t.args[i], kCons);
      return s + "]";
    }
    case Term::Kind::Ctor: {
      if (t.args.empty() || is_unit_record(t.args)) return t.name;
      std::string s = t.name;
      for (const auto& a : t.args) s += " " + term(a, kAtom);
      return paren_if(ctx > kApp, s);
    }
    case Term::Kind::App: {
      // An applied constructor in head position needs its own parentheses,
      // otherwise the extra argument would be read as a constructor argument.
      const Term& fn = t.args[0];
      bool wrap_head = fn.kind == Term::Kind::Ctor && !(fn.args.empty() || is_unit_record(fn.args));
      std::string head = wrap_head ? "(" + term(fn, kCons) + ")" : term(fn, kApp);
      if (fn.kind == Term::Kind::Ctor && fn.args.empty()) head = "(" + head + ")";
      return paren_if(ctx > kApp, head + " " + term(t.args[1], kAtom));
    }
    case Term::Kind::Plus:
      return paren_if(ctx > kPlus, term(t.args[0], kApp) + "+" + std::to_string(t.number));
    case Term::Kind::Cons:
      return paren_if(ctx > kCons, term(t.args[0], kPlus) + " :: " + term(t.args[1], kCons));
  }
  return "?";
}

std::string type_params(const std::vector<std::string>& ps) {
  if (ps.empty()) return "";
  std::string s = "(";
  for (size_t i = 0; i < ps.size(); ++i) s += (i ? ", '" : "'") + ps[i];
  return s + ")";
}

std::string decl_body(const TypeDecl& d) {
  std::string s = d.name + type_params(d.params) + " where";
  for (size_t i = 0; i < d.items.size(); ++i)
    s += fmt::format("\n  {} {} : {}", i ? "|" : " ", d.items[i].label, to_string(d.items[i].sig));
  return s;
}

const char* polarity_kw(Polarity p) { return p == Polarity::Data ? "data" : "codata"; }

}  // namespace

std::string format(const Pattern& p) { return pat(p, kCons); }

std::string format(const Term& t) { return term(t, kCons); }

std::string format(const TypeDecl& d) { return std::string(polarity_kw(d.polarity)) + " " + decl_body(d); }

std::string format(const Program& p) {
  std::string out;
  for (const auto& g : p.type_groups) {
    for (size_t i = 0; i < g.size(); ++i) {
      if (i) out += "\nand ";
      out += format(g[i]);
    }
    out += "\n\n";
  }
  for (const auto& g : p.def_groups) {
    std::vector<std::string> items;
    for (const auto& f : g.functions)
      if (f.annotation) items.push_back(f.name + " : " + to_string(*f.annotation));
    for (const auto& c : g.clauses) {
      std::string s = c.name;
      for (const auto& q : c.pats) s += " " + pat(q, kAtom);
      items.push_back(s + " = " + term(c.rhs, kCons));
    }
    out += "val";
    for (size_t i = 0; i < items.size(); ++i) out += (i ? "\n  | " : " ") + items[i];
    out += "\n\n";
  }
  return out;
}

}  // namespace totcheck
