#include <map>

#include <fmt/format.h>

#include "totcheck/surface.hpp"

namespace totcheck {

namespace {

struct CtorInfo {
  bool unit_arg = false;            // argument is a codata without destructors
  std::vector<std::string> fields;  // destructors of the argument when it is a codata with >= 2
};

std::vector<TypeExpr> arrow_spine(const TypeExpr& t, TypeExpr& result) {
  std::vector<TypeExpr> args;
  const TypeExpr* cur = &t;
  while (cur->is_arrow()) {
    args.push_back(cur->from());
    cur = &cur->to();
  }
  result = *cur;
  return args;
}

std::string tuple_name(size_t k) { return fmt::format("tuple{}", k); }

TypeDecl make_tuple_decl(size_t k) {
  TypeDecl d;
  d.name = tuple_name(k);
  d.polarity = Polarity::Codata;
  for (size_t i = 1; i <= k; ++i) d.params.push_back(fmt::format("a{}", i));
  for (size_t i = 1; i <= k; ++i)
    d.items.push_back({fmt::format("Arg{}", i), TypeExpr::arrow(d.self_type(), TypeExpr::var(d.params[i - 1])), {}});
  return d;
}

TypeDecl make_unit_decl() {
  TypeDecl d;
  d.name = "unit";
  d.polarity = Polarity::Codata;
  return d;
}

class Desugarer {
 public:
  explicit Desugarer(const Program& p) { index(p); }

  Program run(const Program& in) {
    Program out;
    std::vector<TypeGroup> synthesized;
    std::map<std::string, const TypeDecl*> existing;
    for (const auto& g : in.type_groups)
      for (const auto& d : g) existing[d.name] = &d;

    auto require_decl = [&](const TypeDecl& wanted, Span span) {
      auto it = existing.find(wanted.name);
      if (it != existing.end()) {
        if (!(*it->second == wanted))
          throw DesugarError(fmt::format("the name `{}` is reserved for a generated declaration", wanted.name),
                             span);
        return;
      }
      for (const auto& g : synthesized)
        if (g[0].name == wanted.name) return;
      synthesized.push_back({wanted});
    };

    std::vector<TypeGroup> groups;
    for (const auto& g : in.type_groups) {
      TypeGroup ng;
      for (TypeDecl d : g) {
        if (d.polarity == Polarity::Data) {
          for (auto& item : d.items) {
            TypeExpr result;
            std::vector<TypeExpr> args = arrow_spine(item.sig, result);
            if (!result.is_app() || result.name != d.name) continue;
            if (args.empty()) {
              require_decl(make_unit_decl(), item.span);
              item.sig = TypeExpr::arrow(TypeExpr::app("unit"), result);
            } else if (args.size() >= 2) {
              require_decl(make_tuple_decl(args.size()), item.span);
              item.sig = TypeExpr::arrow(TypeExpr::app(tuple_name(args.size()), args), result);
            }
          }
        }
        ng.push_back(std::move(d));
      }
      groups.push_back(std::move(ng));
    }
    for (auto& g : synthesized) out.type_groups.push_back(std::move(g));
    for (auto& g : groups) out.type_groups.push_back(std::move(g));

    index(out);
    for (const auto& g : in.def_groups) {
      DefGroup ng = g;
      for (auto& c : ng.clauses) {
        for (auto& p : c.pats) p = pattern(p);
        c.rhs = term(c.rhs);
      }
      out.def_groups.push_back(std::move(ng));
    }
    return out;
  }

  Term term(const Term& t) {
    switch (t.kind) {
      case Term::Kind::Var:
      case Term::Kind::Fun:
        return t;
      case Term::Kind::Ctor:
        return ctor_term(t.name, t.args, t.span);
      case Term::Kind::Record: {
        Term r = t;
        for (auto& a : r.args) a = term(a);
        return r;
      }
      case Term::Kind::App: {
        std::vector<const Term*> spine;
        const Term* head = &t;
        while (head->kind == Term::Kind::App) {
          spine.push_back(&head->args[1]);
          head = &head->args[0];
        }
        std::vector<Term> args;
        for (auto it = spine.rbegin(); it != spine.rend(); ++it) args.push_back(**it);
        if (head->kind == Term::Kind::Ctor && head->args.empty()) {
          std::vector<Term> all = head->args;
          for (auto& a : args) all.push_back(std::move(a));
          return ctor_term(head->name, all, head->span);
        }
        Term out = term(*head);
        for (auto& a : args) out = Term::app(std::move(out), term(a), t.span);
        return out;
      }
      case Term::Kind::Num:
        return numeral(t.number, t.span);
      case Term::Kind::Plus: {
        Term base = term(t.args[0]);
        need("Succ", "`+`", t.span);
        for (long i = 0; i < t.number; ++i) base = Term::ctor("Succ", std::move(base), t.span);
        return base;
      }
      case Term::Kind::List: {
        Term acc = nil_term(t.span);
        for (auto it = t.args.rbegin(); it != t.args.rend(); ++it) acc = cons_term(term(*it), std::move(acc), t.span);
        return acc;
      }
      case Term::Kind::Cons:
        return cons_term(term(t.args[0]), term(t.args[1]), t.span);
    }
    return t;
  }

 private:
  std::map<std::string, CtorInfo> ctors_;

  void index(const Program& p) {
    ctors_.clear();
    std::map<std::string, const TypeDecl*> decls;
    for (const auto& g : p.type_groups)
      for (const auto& d : g) decls[d.name] = &d;
    for (const auto& g : p.type_groups) {
      for (const auto& d : g) {
        if (d.polarity != Polarity::Data) continue;
        for (const auto& item : d.items) {
          CtorInfo info;
          TypeExpr result;
          std::vector<TypeExpr> args = arrow_spine(item.sig, result);
          if (args.empty()) {
            info.unit_arg = true;
          } else if (args.size() == 1 && args[0].is_app()) {
            auto it = decls.find(args[0].name);
            if (it != decls.end() && it->second->polarity == Polarity::Codata) {
              if (it->second->items.empty()) info.unit_arg = true;
              if (it->second->items.size() >= 2)
                for (const auto& f : it->second->items) info.fields.push_back(f.label);
            }
          } else if (args.size() >= 2) {
            for (size_t i = 1; i <= args.size(); ++i) info.fields.push_back(fmt::format("Arg{}", i));
          }
          ctors_[item.label] = info;
        }
      }
    }
  }

  const CtorInfo& need(const std::string& label, const std::string& sugar, Span span) const {
    auto it = ctors_.find(label);
    if (it == ctors_.end())
      throw DesugarError(fmt::format("{} needs a declared constructor `{}`", sugar, label), span);
    return it->second;
  }

  const CtorInfo* lookup(const std::string& label) const {
    auto it = ctors_.find(label);
    return it == ctors_.end() ? nullptr : &it->second;
  }

  Term unit_term(Span span) const { return Term::record({}, span); }

  Term numeral(long k, Span span) {
    need("Zero", "a numeral", span);
    Term acc = Term::ctor("Zero", unit_term(span), span);
    if (k > 0) need("Succ", "a numeral", span);
    for (long i = 0; i < k; ++i) acc = Term::ctor("Succ", std::move(acc), span);
    return acc;
  }

  Term nil_term(Span span) {
    need("Nil", "`[]`", span);
    return Term::ctor("Nil", unit_term(span), span);
  }

  Term cons_term(Term h, Term t, Span span) {
    const CtorInfo& info = need("Cons", "`::`", span);
    if (info.fields.size() != 2)
      throw DesugarError("`::` needs `Cons` to take a record with exactly two fields", span);
    return Term::ctor("Cons", Term::record({{info.fields[0], std::move(h)}, {info.fields[1], std::move(t)}}, span),
                      span);
  }

  Term ctor_term(const std::string& label, const std::vector<Term>& raw_args, Span span) {
    std::vector<Term> args;
    for (const auto& a : raw_args) args.push_back(term(a));
    const CtorInfo* info = lookup(label);
    if (args.empty()) {
      if (info && info->unit_arg) return Term::ctor(label, unit_term(span), span);
      return Term::ctor_fn(label, span);
    }
    size_t used = 1;
    Term out;
    if (info && info->fields.size() >= 2 && args.size() >= 2) {
      if (args.size() < info->fields.size())
        throw DesugarError(fmt::format("constructor `{}` expects {} arguments, got {}", label, info->fields.size(),
                                       args.size()),
                           span);
      std::vector<std::pair<std::string, Term>> fields;
      for (size_t i = 0; i < info->fields.size(); ++i) fields.emplace_back(info->fields[i], args[i]);
      used = info->fields.size();
      out = Term::ctor(label, Term::record(std::move(fields), span), span);
    } else {
      out = Term::ctor(label, args[0], span);
    }
    for (size_t i = used; i < args.size(); ++i) out = Term::app(std::move(out), args[i], span);
    return out;
  }

 public:
  Pattern pattern(const Pattern& p) {
    switch (p.kind) {
      case Pattern::Kind::Var:
        return p;
      case Pattern::Kind::Ctor: {
        const CtorInfo* info = lookup(p.name);
        if (p.args.empty()) {
          if (info && !info->unit_arg)
            throw DesugarError(fmt::format("constructor `{}` expects an argument in a pattern", p.name), p.span);
          return Pattern::ctor(p.name, Pattern::record({}, p.span), p.span);
        }
        if (p.args.size() == 1) return Pattern::ctor(p.name, pattern(p.args[0]), p.span);
        if (!info || info->fields.size() != p.args.size())
          throw DesugarError(fmt::format("constructor `{}` does not take {} arguments", p.name, p.args.size()),
                             p.span);
        std::vector<std::pair<std::string, Pattern>> fields;
        for (size_t i = 0; i < p.args.size(); ++i) fields.emplace_back(info->fields[i], pattern(p.args[i]));
        return Pattern::ctor(p.name, Pattern::record(std::move(fields), p.span), p.span);
      }
      case Pattern::Kind::Record: {
        Pattern r = p;
        for (auto& a : r.args) a = pattern(a);
        return r;
      }
      case Pattern::Kind::Num: {
        need("Zero", "a numeral pattern", p.span);
        Pattern acc = Pattern::ctor("Zero", Pattern::record({}, p.span), p.span);
        if (p.number > 0) need("Succ", "a numeral pattern", p.span);
        for (long i = 0; i < p.number; ++i) acc = Pattern::ctor("Succ", std::move(acc), p.span);
        return acc;
      }
      case Pattern::Kind::Plus: {
        need("Succ", "an `n+k` pattern", p.span);
        Pattern acc = pattern(p.args[0]);
        for (long i = 0; i < p.number; ++i) acc = Pattern::ctor("Succ", std::move(acc), p.span);
        return acc;
      }
      case Pattern::Kind::List: {
        need("Nil", "`[]`", p.span);
        Pattern acc = Pattern::ctor("Nil", Pattern::record({}, p.span), p.span);
        for (auto it = p.args.rbegin(); it != p.args.rend(); ++it) acc = cons_pattern(pattern(*it), acc, p.span);
        return acc;
      }
      case Pattern::Kind::Cons:
        return cons_pattern(pattern(p.args[0]), pattern(p.args[1]), p.span);
    }
    return p;
  }

 private:
  Pattern cons_pattern(Pattern h, Pattern t, Span span) {
    const CtorInfo& info = need("Cons", "`::`", span);
    if (info.fields.size() != 2)
      throw DesugarError("`::` needs `Cons` to take a record with exactly two fields", span);
    return Pattern::ctor("Cons", Pattern::record({{info.fields[0], std::move(h)}, {info.fields[1], std::move(t)}}, span),
                         span);
  }
};

}  // namespace

Program desugar(const Program& p) { return Desugarer(p).run(p); }

Term desugar_term(const Term& t, const Program& p) { return Desugarer(p).term(t); }

}  // namespace totcheck
