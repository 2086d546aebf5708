#include "totcheck/eval.hpp"

#include <functional>

#include <fmt/format.h>

namespace totcheck {

namespace {

// Thrown inside an evaluation when the budget runs out; turned into
// FuelExhausted at the API boundary.
struct OutOfFuel {
  std::string message;
};

constexpr int kMaxNesting = 4000;

std::string paren(const std::string& s) {
  if (s.find(' ') == std::string::npos || s.front() == '{' || s.front() == '<') return s;
  return "(" + s + ")";
}

}  // namespace

struct Evaluator::Budget {
  long fuel;
  int nesting = 0;

  void tick() {
    if (--fuel < 0) throw OutOfFuel{"fuel exhausted"};
  }
};

namespace {

struct Nest {
  explicit Nest(int& n) : n_(n) {
    if (++n_ > kMaxNesting) {
      --n_;
      throw OutOfFuel{"evaluation nested too deeply"};
    }
  }
  ~Nest() { --n_; }
  int& n_;
};

}  // namespace

Evaluator::Evaluator(const Program& program) : program_(program) {
  for (const auto& g : program_.def_groups) {
    for (const auto& name : g.names()) arity_[name] = g.arity(name);
    for (const auto& c : g.clauses) clauses_[c.name].push_back(&c);
  }
}

SuspensionPtr Evaluator::suspend(const Term& closed) {
  owned_.push_back(closed);
  return std::make_shared<const Suspension>(Suspension{&owned_.back(), std::make_shared<const EvalEnv>()});
}

namespace {

using Cache = std::map<const Suspension*, Value>;

}  // namespace

Value Evaluator::call(const std::string& f, std::vector<SuspensionPtr> args, Budget& b) {
  auto it = clauses_.find(f);
  if (it == clauses_.end()) throw MatchFailure(fmt::format("`{}` has no clauses", f));
  Cache cache;
  auto force = [&](const SuspensionPtr& s) -> const Value& {
    auto c = cache.find(s.get());
    if (c != cache.end()) return c->second;
    Value v = whnf(s->term, s->env, b);
    return cache.emplace(s.get(), std::move(v)).first->second;
  };
  std::function<bool(const Pattern&, const SuspensionPtr&, EvalEnv&)> match =
      [&](const Pattern& p, const SuspensionPtr& s, EvalEnv& binds) -> bool {
    switch (p.kind) {
      case Pattern::Kind::Var:
        if (!p.is_wildcard()) binds[p.name] = s;
        return true;
      case Pattern::Kind::Ctor: {
        const Value& v = force(s);
        if (v.kind != Value::Kind::Ctor || v.name != p.name) return false;
        return match(p.args[0], v.args[0], binds);
      }
      case Pattern::Kind::Record: {
        const Value& v = force(s);
        if (v.kind != Value::Kind::Record) return false;
        for (size_t i = 0; i < p.labels.size(); ++i) {
          size_t j = 0;
          while (j < v.labels.size() && v.labels[j] != p.labels[i]) ++j;
          if (j == v.labels.size()) return false;
          if (!match(p.args[i], v.args[j], binds)) return false;
        }
        return true;
      }
      default:
        throw MatchFailure("pattern is not desugared");
    }
  };
  for (const Clause* c : it->second) {
    EvalEnv binds;
    bool ok = true;
    for (size_t i = 0; ok && i < c->pats.size(); ++i) ok = match(c->pats[i], args[i], binds);
    if (ok) return whnf(&c->rhs, std::make_shared<const EvalEnv>(std::move(binds)), b);
  }
  throw MatchFailure(fmt::format("no clause of `{}` matches its arguments", f));
}

Value Evaluator::apply(Value head, std::vector<SuspensionPtr> args, Budget& b) {
  while (!args.empty()) {
    b.tick();
    switch (head.kind) {
      case Value::Kind::Partial: {
        std::vector<SuspensionPtr> all = head.args;
        all.insert(all.end(), args.begin(), args.end());
        size_t n = arity_[head.name];
        if (all.size() < n) {
          head.args = std::move(all);
          return head;
        }
        args.assign(all.begin() + static_cast<long>(n), all.end());
        all.resize(n);
        head = call(head.name, std::move(all), b);
        break;
      }
      case Value::Kind::CtorFn:
        head = Value{Value::Kind::Ctor, head.name, {}, {args.front()}};
        args.erase(args.begin());
        break;
      default:
        throw MatchFailure(fmt::format("`{}` is applied like a function", head.name));
    }
  }
  return head;
}

Value Evaluator::whnf(const Term* t, EvalEnvPtr env, Budget& b) {
  Nest nest(b.nesting);
  for (;;) {
    b.tick();
    switch (t->kind) {
      case Term::Kind::Var: {
        auto it = env->find(t->name);
        if (it == env->end()) throw MatchFailure(fmt::format("unbound variable `{}`", t->name));
        SuspensionPtr s = it->second;
        t = s->term;
        env = s->env;
        continue;
      }
      case Term::Kind::Fun: {
        auto a = arity_.find(t->name);
        if (a == arity_.end()) throw MatchFailure(fmt::format("unknown function `{}`", t->name));
        if (a->second == 0) return call(t->name, {}, b);
        return Value{Value::Kind::Partial, t->name, {}, {}};
      }
      case Term::Kind::Ctor:
        if (t->args.empty()) return Value{Value::Kind::CtorFn, t->name, {}, {}};
        return Value{Value::Kind::Ctor, t->name, {}, {std::make_shared<const Suspension>(Suspension{&t->args[0], env})}};
      case Term::Kind::Record: {
        Value v{Value::Kind::Record, "", t->labels, {}};
        for (const auto& a : t->args) v.args.push_back(std::make_shared<const Suspension>(Suspension{&a, env}));
        return v;
      }
      case Term::Kind::App: {
        std::vector<SuspensionPtr> args;
        const Term* head = t;
        while (head->kind == Term::Kind::App) {
          args.insert(args.begin(), std::make_shared<const Suspension>(Suspension{&head->args[1], env}));
          head = &head->args[0];
        }
        return apply(whnf(head, env, b), std::move(args), b);
      }
      default:
        throw MatchFailure("term is not desugared");
    }
  }
}

WhnfResult Evaluator::eval_whnf(const SuspensionPtr& s, long fuel) {
  Budget b{fuel};
  try {
    return whnf(s->term, s->env, b);
  } catch (const OutOfFuel& e) {
    return FuelExhausted{e.message};
  }
}

std::string Evaluator::render(const SuspensionPtr& s, int depth, long fuel, bool root) {
  auto force = [&](const SuspensionPtr& x) -> std::optional<Value> {
    Budget b{fuel};
    try {
      return whnf(x->term, x->env, b);
    } catch (const OutOfFuel&) {
      return std::nullopt;
    }
  };
  const std::string exhausted = "<fuel exhausted>";

  std::optional<Value> v = force(s);
  if (!v) return exhausted;

  // Data constructors do not consume depth; long chains are unrolled here
  // rather than by recursion.
  std::vector<std::string> prefix;
  std::string tail;
  long chain_budget = fuel;
  for (;;) {
    if (v->kind == Value::Kind::Ctor) {
      if (root && depth == 0) {
        tail = v->name + " …";
        break;
      }
      if (--chain_budget < 0) {
        tail = exhausted;
        break;
      }
      std::optional<Value> a = force(v->args[0]);
      if (!a) {
        tail = v->name + " " + exhausted;
        break;
      }
      if (a->kind == Value::Kind::Record && a->labels.empty()) {
        tail = v->name;
        break;
      }
      prefix.push_back(v->name);
      v = std::move(a);
      continue;
    }
    if (v->kind == Value::Kind::Record) {
      if (v->labels.empty()) {
        tail = "{}";
      } else if (depth == 0) {
        if (root && prefix.empty()) {
          tail = "{";
          for (size_t i = 0; i < v->labels.size(); ++i) tail += (i ? "; " : "") + v->labels[i] + "=…";
          tail += "}";
        } else {
          tail = "…";
        }
      } else {
        tail = "{";
        for (size_t i = 0; i < v->labels.size(); ++i)
          tail += (i ? "; " : "") + v->labels[i] + "=" + render(v->args[i], depth - 1, fuel, false);
        tail += "}";
      }
    } else if (v->kind == Value::Kind::Partial) {
      tail = "<function " + v->name + ">";
    } else {
      tail = "<constructor " + v->name + ">";
    }
    break;
  }
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) tail = *it + " " + paren(tail);
  return tail;
}

std::string Evaluator::force_depth(const SuspensionPtr& s, int depth, long fuel) {
  return render(s, depth < 0 ? 0 : depth, fuel, true);
}

std::optional<long> numeral_value(const std::string& printed) {
  std::string s = printed;
  long n = 0;
  for (;;) {
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
    if (s == "Zero") return n;
    if (s.rfind("Succ ", 0) != 0) return std::nullopt;
    s = s.substr(5);
    ++n;
  }
}

}  // namespace totcheck
