#include "totcheck/typesys.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <fmt/format.h>

namespace totcheck {

const TypeDecl* TypeEnv::decl(const std::string& name) const {
  auto it = decls.find(name);
  return it == decls.end() ? nullptr : &it->second;
}

const ItemInfo* TypeEnv::item(const std::string& label) const {
  auto it = items.find(label);
  return it == items.end() ? nullptr : &it->second;
}

TypeExpr instantiate_decl(const TypeDecl& d, const std::vector<TypeExpr>& args, const TypeExpr& t) {
  if (t.is_var()) {
    for (size_t i = 0; i < d.params.size() && i < args.size(); ++i)
      if (d.params[i] == t.name) return args[i];
    return t;
  }
  TypeExpr out = t;
  for (auto& a : out.args) a = instantiate_decl(d, args, a);
  return out;
}

TypeExpr item_type_at(const TypeEnv& env, const std::string& label, const TypeExpr& self) {
  const ItemInfo* info = env.item(label);
  const TypeDecl* d = info ? env.decl(info->type_name) : nullptr;
  if (!d) throw TypeError(fmt::format("unknown constructor or destructor `{}`", label), {});
  TypeExpr sig = instantiate_decl(*d, self.args, info->sig);
  return info->polarity == Polarity::Data ? sig.from() : sig.to();
}

// ---- declarations ----------------------------------------------------------

namespace {

void check_decl_type(const TypeExpr& t, const TypeDecl& d, const std::map<std::string, size_t>& scope,
                     const std::set<std::string>& group, Span span) {
  switch (t.kind) {
    case TypeExpr::Kind::Var:
      if (std::find(d.params.begin(), d.params.end(), t.name) == d.params.end())
        throw TypeError(fmt::format("type variable '{} is not a parameter of `{}`", t.name, d.name), span);
      return;
    case TypeExpr::Kind::Arrow:
      throw TypeError(fmt::format("declaration of `{}` uses a function type; only (co)datatypes may appear", d.name),
                      span);
    case TypeExpr::Kind::App: {
      auto it = scope.find(t.name);
      if (it == scope.end())
        throw TypeError(fmt::format("declaration of `{}` refers to unknown type `{}`", d.name, t.name), span);
      if (it->second != t.args.size())
        throw TypeError(fmt::format("type `{}` expects {} parameters, got {}", t.name, it->second, t.args.size()),
                        span);
      if (group.count(t.name)) {
        for (size_t i = 0; i < t.args.size(); ++i) {
          if (!(t.args[i] == TypeExpr::var(d.params[i])))
            throw TypeError(fmt::format("in `{}`, the parameters of `{}` cannot change in a recursive occurrence: "
                                        "found `{}`",
                                        d.name, t.name, to_string(t)),
                            span);
        }
        return;
      }
      for (const auto& a : t.args) check_decl_type(a, d, scope, group, span);
      return;
    }
  }
}

}  // namespace

TypeEnv validate_type_decls(const Program& p) {
  TypeEnv env;
  std::map<std::string, size_t> scope;
  for (const auto& g : p.type_groups) {
    if (g.empty()) continue;
    std::set<std::string> group;
    for (const auto& d : g) {
      if (scope.count(d.name) || group.count(d.name))
        throw TypeError(fmt::format("type `{}` is declared twice", d.name), d.span);
      if (d.polarity != g[0].polarity)
        throw TypeError(fmt::format("`{}` and `{}` are defined together but do not have the same polarity",
                                    g[0].name, d.name),
                        d.span);
      if (d.params != g[0].params)
        throw TypeError(fmt::format("`{}` and `{}` are defined together but do not have the same parameters",
                                    g[0].name, d.name),
                        d.span);
      std::set<std::string> seen(d.params.begin(), d.params.end());
      if (seen.size() != d.params.size())
        throw TypeError(fmt::format("`{}` has a repeated type parameter", d.name), d.span);
      group.insert(d.name);
    }
    for (const auto& d : g) scope[d.name] = d.params.size();

    for (const auto& d : g) {
      TypeExpr self = d.self_type();
      for (const auto& item : d.items) {
        if (env.items.count(item.label))
          throw TypeError(fmt::format("`{}` is declared more than once", item.label), item.span);
        if (!item.sig.is_arrow())
          throw TypeError(fmt::format("`{}` must have an arrow type", item.label), item.span);
        const TypeExpr& other = d.polarity == Polarity::Data ? item.sig.from() : item.sig.to();
        const TypeExpr& own = d.polarity == Polarity::Data ? item.sig.to() : item.sig.from();
        if (!(own == self)) {
          throw TypeError(fmt::format(fmt::runtime(d.polarity == Polarity::Data ? "constructor `{}` must produce `{}`, not `{}`"
                                                                                 : "destructor `{}` must consume `{}`, not `{}`"),
                                      item.label, to_string(self), to_string(own)),
                          item.span);
        }
        check_decl_type(other, d, scope, group, item.span);
        env.items[item.label] = ItemInfo{d.name, d.polarity, item.sig};
      }
      env.decls[d.name] = d;
    }
  }
  return env;
}

// ---- inference -------------------------------------------------------------

namespace {

class Infer {
 public:
  Infer(DefGroup& g, TypeEnv& env) : g_(g), env_(env) {}

  void run() {
    std::map<std::string, size_t> arity;
    for (const auto& f : g_.functions) {
      if (env_.sigs.count(f.name))
        throw TypeError(fmt::format("function `{}` is already defined by an earlier `val`", f.name), f.span);
      if (f.annotation) {
        check_annotation(*f.annotation, f.span);
        collect_rigid(*f.annotation);
        fun_types_[f.name] = *f.annotation;
      } else {
        fun_types_[f.name] = fresh();
      }
    }
    for (const auto& f : g_.functions) {
      bool has_clause = false;
      for (const auto& c : g_.clauses) has_clause |= c.name == f.name;
      if (!has_clause) throw TypeError(fmt::format("`{}` has a type signature but no clauses", f.name), f.span);
    }

    for (auto& c : g_.clauses) {
      auto [it, inserted] = arity.emplace(c.name, c.pats.size());
      if (!inserted && it->second != c.pats.size())
        throw TypeError(fmt::format("clauses of `{}` have different numbers of arguments", c.name), c.span);
      locals_.clear();
      std::vector<TypeExpr> args;
      for (size_t i = 0; i < c.pats.size(); ++i) args.push_back(fresh());
      TypeExpr ret = fresh();
      TypeExpr spine = ret;
      for (auto a = args.rbegin(); a != args.rend(); ++a) spine = TypeExpr::arrow(*a, spine);
      unify(fun_types_[c.name], spine, c.span);
      for (size_t i = 0; i < c.pats.size(); ++i) pattern(c.pats[i], args[i]);
      TypeExpr rt = term(c.rhs);
      unify(ret, rt, c.rhs.span);
    }
    check_empty_records();
    finish();
  }

 private:
  DefGroup& g_;
  TypeEnv& env_;
  std::map<std::string, TypeExpr> subst_;
  int counter_ = 0;
  std::map<std::string, TypeExpr> fun_types_;
  std::map<std::string, TypeExpr> locals_;
  std::set<std::string> rigid_;

  struct EmptyRecord {
    TypeExpr type;
    Span span;
    bool in_pattern;
  };
  std::vector<EmptyRecord> empty_records_;

  TypeExpr fresh() { return TypeExpr::var("?" + std::to_string(counter_++)); }

  static bool is_flex(const TypeExpr& t) { return t.is_var() && !t.name.empty() && t.name[0] == '?'; }

  TypeExpr walk(const TypeExpr& t) const {
    const TypeExpr* cur = &t;
    while (is_flex(*cur)) {
      auto it = subst_.find(cur->name);
      if (it == subst_.end()) break;
      cur = &it->second;
    }
    return *cur;
  }

  TypeExpr resolve(const TypeExpr& t) const {
    TypeExpr w = walk(t);
    for (auto& a : w.args) a = resolve(a);
    return w;
  }

  bool occurs(const std::string& v, const TypeExpr& t) const {
    TypeExpr w = walk(t);
    if (w.is_var()) return w.name == v;
    for (const auto& a : w.args)
      if (occurs(v, a)) return true;
    return false;
  }

  [[noreturn]] void mismatch(const TypeExpr& a, const TypeExpr& b, Span span) const {
    throw TypeError(fmt::format("type mismatch: `{}` versus `{}`", to_string(resolve(a)), to_string(resolve(b))),
                    span);
  }

  void unify(const TypeExpr& a0, const TypeExpr& b0, Span span) {
    TypeExpr a = walk(a0);
    TypeExpr b = walk(b0);
    if (is_flex(a) || is_flex(b)) {
      if (!is_flex(a)) std::swap(a, b);
      if (b.is_var() && b.name == a.name) return;
      if (occurs(a.name, b))
        throw TypeError(fmt::format("infinite type: `{}` occurs in `{}`", to_string(resolve(a)), to_string(resolve(b))),
                        span);
      subst_[a.name] = b;
      return;
    }
    if (a.kind != b.kind) mismatch(a0, b0, span);
    if (a.is_var()) {
      if (a.name != b.name) mismatch(a0, b0, span);
      return;
    }
    if (a.name != b.name || a.args.size() != b.args.size()) mismatch(a0, b0, span);
    for (size_t i = 0; i < a.args.size(); ++i) unify(a.args[i], b.args[i], span);
  }

  void check_annotation(const TypeExpr& t, Span span) const {
    if (t.is_app()) {
      const TypeDecl* d = env_.decl(t.name);
      if (!d) throw TypeError(fmt::format("unknown type `{}`", t.name), span);
      if (d->params.size() != t.args.size())
        throw TypeError(fmt::format("type `{}` expects {} parameters, got {}", t.name, d->params.size(),
                                    t.args.size()),
                        span);
    }
    for (const auto& a : t.args) check_annotation(a, span);
  }

  void collect_rigid(const TypeExpr& t) {
    if (t.is_var()) rigid_.insert(t.name);
    for (const auto& a : t.args) collect_rigid(a);
  }

  TypeExpr instantiate_scheme(const TypeExpr& t, std::map<std::string, TypeExpr>& m) {
    if (t.is_var()) {
      auto it = m.find(t.name);
      if (it != m.end()) return it->second;
      return m[t.name] = fresh();
    }
    TypeExpr out = t;
    for (auto& a : out.args) a = instantiate_scheme(a, m);
    return out;
  }

  // Returns the instantiated owner type and sets `other` to the argument
  // (constructor) or result (destructor) type.
  TypeExpr instantiate_item(const std::string& label, Polarity want, Span span, TypeExpr& other) {
    const ItemInfo* info = env_.item(label);
    if (!info) throw TypeError(fmt::format("unknown constructor or destructor `{}`", label), span);
    if (info->polarity != want) {
      throw TypeError(want == Polarity::Data
                          ? fmt::format("`{}` is a destructor of `{}`, not a constructor", label, info->type_name)
                          : fmt::format("`{}` is a constructor of `{}`, not a destructor", label, info->type_name),
                      span);
    }
    const TypeDecl& d = *env_.decl(info->type_name);
    std::vector<TypeExpr> args;
    for (size_t i = 0; i < d.params.size(); ++i) args.push_back(fresh());
    TypeExpr sig = instantiate_decl(d, args, info->sig);
    other = want == Polarity::Data ? sig.from() : sig.to();
    return TypeExpr::app(d.name, args);
  }

  const TypeDecl& record_decl(const std::vector<std::string>& labels, Span span) {
    TypeExpr dummy;
    instantiate_item(labels[0], Polarity::Codata, span, dummy);
    const std::string& owner = env_.item(labels[0])->type_name;
    for (const auto& l : labels) {
      instantiate_item(l, Polarity::Codata, span, dummy);
      if (env_.item(l)->type_name != owner)
        throw TypeError(fmt::format("record mixes fields of `{}` and `{}`", owner, env_.item(l)->type_name), span);
    }
    return *env_.decl(owner);
  }

  void pattern(Pattern& p, const TypeExpr& t) {
    p.type = t;
    switch (p.kind) {
      case Pattern::Kind::Var:
        if (!p.is_wildcard()) locals_[p.name] = t;
        return;
      case Pattern::Kind::Ctor: {
        TypeExpr arg;
        TypeExpr self = instantiate_item(p.name, Polarity::Data, p.span, arg);
        unify(t, self, p.span);
        pattern(p.args[0], arg);
        return;
      }
      case Pattern::Kind::Record: {
        if (p.labels.empty()) {
          empty_records_.push_back({t, p.span, true});
          return;
        }
        const TypeDecl& d = record_decl(p.labels, p.span);
        std::vector<TypeExpr> args;
        for (size_t i = 0; i < d.params.size(); ++i) args.push_back(fresh());
        TypeExpr self = TypeExpr::app(d.name, args);
        unify(t, self, p.span);
        for (size_t i = 0; i < p.labels.size(); ++i)
          pattern(p.args[i], instantiate_decl(d, args, env_.item(p.labels[i])->sig).to());
        return;
      }
      default:
        throw TypeError("pattern sugar must be removed before type inference", p.span);
    }
  }

  TypeExpr term(Term& u) {
    TypeExpr t = term_inner(u);
    u.type = t;
    return t;
  }

  TypeExpr term_inner(Term& u) {
    switch (u.kind) {
      case Term::Kind::Var: {
        auto it = locals_.find(u.name);
        if (it == locals_.end()) throw TypeError(fmt::format("unbound variable `{}`", u.name), u.span);
        return it->second;
      }
      case Term::Kind::Fun: {
        auto it = fun_types_.find(u.name);
        if (it != fun_types_.end()) return it->second;
        auto s = env_.sigs.find(u.name);
        if (s == env_.sigs.end()) throw TypeError(fmt::format("unknown function `{}`", u.name), u.span);
        std::map<std::string, TypeExpr> m;
        return instantiate_scheme(s->second, m);
      }
      case Term::Kind::Ctor: {
        TypeExpr arg;
        TypeExpr self = instantiate_item(u.name, Polarity::Data, u.span, arg);
        if (u.args.empty()) return TypeExpr::arrow(arg, self);
        unify(arg, term(u.args[0]), u.args[0].span);
        return self;
      }
      case Term::Kind::Record: {
        if (u.labels.empty()) {
          TypeExpr t = fresh();
          empty_records_.push_back({t, u.span, false});
          return t;
        }
        const TypeDecl& d = record_decl(u.labels, u.span);
        for (const auto& item : d.items) {
          if (std::find(u.labels.begin(), u.labels.end(), item.label) == u.labels.end())
            throw TypeError(fmt::format("record of type `{}` is missing the field `{}`", d.name, item.label), u.span);
        }
        std::vector<TypeExpr> args;
        for (size_t i = 0; i < d.params.size(); ++i) args.push_back(fresh());
        for (size_t i = 0; i < u.labels.size(); ++i) {
          TypeExpr want = instantiate_decl(d, args, env_.item(u.labels[i])->sig).to();
          unify(want, term(u.args[i]), u.args[i].span);
        }
        return TypeExpr::app(d.name, args);
      }
      case Term::Kind::App: {
        TypeExpr fn = term(u.args[0]);
        TypeExpr arg = term(u.args[1]);
        TypeExpr res = fresh();
        TypeExpr fw = walk(fn);
        if (!is_flex(fw) && !fw.is_arrow())
          throw TypeError(fmt::format("`{}` is applied to an argument but has type `{}`", describe(u.args[0]),
                                      to_string(resolve(fn))),
                          u.span);
        unify(fn, TypeExpr::arrow(arg, res), u.args[1].span);
        return res;
      }
      default:
        throw TypeError("term sugar must be removed before type inference", u.span);
    }
  }

  static std::string describe(const Term& t) {
    if (t.kind == Term::Kind::Var || t.kind == Term::Kind::Fun || t.kind == Term::Kind::Ctor) return t.name;
    return "expression";
  }

  void check_empty_records() {
    for (const auto& e : empty_records_) {
      TypeExpr t = resolve(e.type);
      if (is_flex(t)) throw TypeError("cannot determine the type of `{}`", e.span);
      const TypeDecl* d = t.is_app() ? env_.decl(t.name) : nullptr;
      if (!d || d->polarity != Polarity::Codata)
        throw TypeError(fmt::format("`{{}}` is a record but `{}` is expected", to_string(t)), e.span);
      if (!d->items.empty() && !e.in_pattern)
        throw TypeError(fmt::format("record of type `{}` is missing the field `{}`", d->name, d->items[0].label),
                        e.span);
    }
  }

  std::string letter(size_t i) const {
    std::string base(1, static_cast<char>('a' + i % 26));
    return i < 26 ? base : base + std::to_string(i / 26);
  }

  void finish() {
    std::map<std::string, std::string> names;
    size_t next = 0;
    std::function<void(const TypeExpr&)> collect = [&](const TypeExpr& t) {
      if (is_flex(t) && !names.count(t.name)) {
        std::string n;
        do {
          n = letter(next++);
        } while (rigid_.count(n));
        names[t.name] = n;
      }
      for (const auto& a : t.args) collect(a);
    };
    std::function<TypeExpr(const TypeExpr&)> rename = [&](const TypeExpr& t) {
      if (is_flex(t)) {
        collect(t);
        return TypeExpr::var(names[t.name]);
      }
      TypeExpr out = t;
      for (auto& a : out.args) a = rename(a);
      return out;
    };
    for (const auto& f : g_.functions) collect(resolve(fun_types_[f.name]));
    for (const auto& f : g_.functions) env_.sigs[f.name] = rename(resolve(fun_types_[f.name]));

    std::function<void(Pattern&)> stamp_p = [&](Pattern& p) {
      if (p.type) p.type = rename(resolve(*p.type));
      for (auto& a : p.args) stamp_p(a);
    };
    std::function<void(Term&)> stamp_t = [&](Term& u) {
      if (u.type) u.type = rename(resolve(*u.type));
      for (auto& a : u.args) stamp_t(a);
    };
    for (auto& c : g_.clauses) {
      for (auto& p : c.pats) stamp_p(p);
      stamp_t(c.rhs);
    }
  }
};

}  // namespace

void infer_group(DefGroup& g, TypeEnv& env) { Infer(g, env).run(); }

TypedProgram infer_types(const Program& p, const TypeEnv& env) {
  TypedProgram tp{p, env};
  for (auto& g : tp.program.def_groups) infer_group(g, tp.env);
  return tp;
}

// ---- full application --------------------------------------------------------

namespace {

void check_application(const Term& u, const DefGroup& g, const std::map<std::string, size_t>& arity) {
  if (u.kind == Term::Kind::App || u.kind == Term::Kind::Fun) {
    std::vector<const Term*> args;
    const Term* head = &u;
    while (head->kind == Term::Kind::App) {
      args.push_back(&head->args[1]);
      head = &head->args[0];
    }
    if (head->kind == Term::Kind::Fun) {
      auto it = arity.find(head->name);
      if (it != arity.end() && args.size() < it->second) {
        throw HigherOrderError(
            fmt::format("`{}` expects {} argument(s) but is applied to {}; recursive functions must be fully applied",
                        head->name, it->second, args.size()),
            head->span);
      }
    } else {
      check_application(*head, g, arity);
    }
    for (const Term* a : args) check_application(*a, g, arity);
    return;
  }
  for (const auto& a : u.args) check_application(a, g, arity);
}

}  // namespace

void check_group_full_application(const DefGroup& g) {
  std::map<std::string, size_t> arity;
  for (const auto& n : g.names()) arity[n] = g.arity(n);
  for (const auto& c : g.clauses) check_application(c.rhs, g, arity);
}

void check_full_application(const TypedProgram& tp) {
  for (const auto& g : tp.program.def_groups) check_group_full_application(g);
}

void check_exhaustiveness(const TypedProgram& tp) {
  for (const auto& g : tp.program.def_groups) check_group_exhaustive(g, tp.env);
}

}  // namespace totcheck
