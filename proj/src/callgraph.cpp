#include "totcheck/callgraph.hpp"

#include <deque>
#include <set>

#include <fmt/format.h>

namespace totcheck {

using namespace sct;

std::string to_string(const Call& c) {
  std::string s = fmt::format("{} -> {} {} (", c.source, sct::to_string(c.out), c.target);
  for (size_t i = 0; i < c.args.size(); ++i) s += (i ? ", " : "") + sct::to_string(c.args[i]);
  return s + ")";
}

bool same_call(const Call& a, const Call& b) {
  if (a.source != b.source || a.target != b.target || !(a.out == b.out) || a.args.size() != b.args.size())
    return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!equal(a.args[i], b.args[i])) return false;
  return true;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Total:
      return "TOTAL";
    case Verdict::Unsafe:
      return "UNSAFE";
    case Verdict::UnsafeByDependency:
      return "UNSAFE-BY-DEPENDENCY";
    case Verdict::Error:
      return "ERROR";
  }
  return "?";
}

// ---- extraction ------------------------------------------------------------

namespace {

void substitution_into(const Pattern& p, std::vector<Step>& steps, int index,
                       std::map<std::string, ApproxTerm>& out) {
  switch (p.kind) {
    case Pattern::Kind::Var:
      if (!p.is_wildcard()) out[p.name] = chain(steps, index);
      return;
    case Pattern::Kind::Ctor:
      steps.push_back({Step::Kind::CtorInv, p.name, p.prio});
      substitution_into(p.args[0], steps, index, out);
      steps.pop_back();
      return;
    case Pattern::Kind::Record:
      for (size_t i = 0; i < p.labels.size(); ++i) {
        steps.push_back({Step::Kind::Proj, p.labels[i], p.prio});
        substitution_into(p.args[i], steps, index, out);
        steps.pop_back();
      }
      return;
    default:
      return;
  }
}

ApproxTerm daimon_leaf() { return product({{Weight::daimon(), empty_record()}}); }

class Extractor {
 public:
  Extractor(const DefGroup& g, CallGraph& out) : g_(g), out_(out) {
    for (const auto& n : g.names()) arity_[n] = g.arity(n);
  }

  void clause(const Clause& c) {
    sigma_.clear();
    for (size_t i = 0; i < c.pats.size(); ++i) {
      auto s = pattern_substitution(c.pats[i], static_cast<int>(i));
      sigma_.insert(s.begin(), s.end());
    }
    source_ = c.name;
    walk(c.rhs, Weight::empty());
  }

 private:
  const DefGroup& g_;
  CallGraph& out_;
  std::map<std::string, size_t> arity_;
  std::map<std::string, ApproxTerm> sigma_;
  std::string source_;

  // u^Daimon: applications become Daimon-weighted products over their parts.
  ApproxTerm convert(const Term& u) const {
    switch (u.kind) {
      case Term::Kind::Var: {
        auto it = sigma_.find(u.name);
        return it == sigma_.end() ? daimon_leaf() : it->second;
      }
      case Term::Kind::Fun:
        return daimon_leaf();
      case Term::Kind::Ctor:
        if (u.args.empty()) return daimon_leaf();
        return ctor(u.name, u.prio, convert(u.args[0]));
      case Term::Kind::Record: {
        std::vector<std::pair<std::string, ApproxTerm>> fields;
        for (size_t i = 0; i < u.labels.size(); ++i) fields.emplace_back(u.labels[i], convert(u.args[i]));
        return record(std::move(fields), u.prio);
      }
      case Term::Kind::App: {
        std::vector<Factor> fs;
        const Term* head = &u;
        while (head->kind == Term::Kind::App) {
          fs.push_back({Weight::daimon(), convert(head->args[1])});
          head = &head->args[0];
        }
        if (head->kind != Term::Kind::Fun) fs.push_back({Weight::daimon(), convert(*head)});
        if (fs.empty()) return daimon_leaf();
        return product(std::move(fs));
      }
      default:
        return daimon_leaf();
    }
  }

  void emit(const std::string& target, const Weight& w, const std::vector<const Term*>& args) {
    Call c{source_, target, w, {}};
    for (const Term* a : args) {
      ApproxTerm t = nf(convert(*a));
      if (t->kind == Kind::Err) return;
      c.args.push_back(t);
    }
    out_.edges.push_back(std::move(c));
  }

  void walk(const Term& u, const Weight& w) {
    switch (u.kind) {
      case Term::Kind::Var:
        return;
      case Term::Kind::Fun:
        if (arity_.count(u.name)) emit(u.name, w, {});
        return;
      case Term::Kind::Ctor:
        if (!u.args.empty()) walk(u.args[0], w + Weight::single(u.prio, -1));
        return;
      case Term::Kind::Record:
        for (const auto& a : u.args) walk(a, w + Weight::single(u.prio, -1));
        return;
      case Term::Kind::App: {
        std::vector<const Term*> args;
        const Term* head = &u;
        while (head->kind == Term::Kind::App) {
          args.insert(args.begin(), &head->args[1]);
          head = &head->args[0];
        }
        if (head->kind == Term::Kind::Fun && arity_.count(head->name)) {
          size_t k = std::min(arity_[head->name], args.size());
          emit(head->name, w, std::vector<const Term*>(args.begin(), args.begin() + k));
        } else {
          walk(*head, Weight::daimon());
        }
        for (const Term* a : args) walk(*a, Weight::daimon());
        return;
      }
      default:
        return;
    }
  }
};

}  // namespace

std::map<std::string, ApproxTerm> pattern_substitution(const Pattern& p, int index) {
  std::map<std::string, ApproxTerm> out;
  std::vector<Step> steps;
  substitution_into(p, steps, index, out);
  return out;
}

CallGraph extract_calls(const DefGroup& g) {
  CallGraph out;
  out.vertices = g.names();
  Extractor ex(g, out);
  for (const auto& c : g.clauses) ex.clause(c);
  return out;
}

// ---- composition -----------------------------------------------------------

std::optional<Call> compose(const Call& a, const Call& b) {
  Call c{a.source, b.target, a.out + b.out, {}};
  for (const auto& t : b.args) {
    ApproxTerm r = substitute(t, a.args);
    if (r->kind == Kind::Err) return std::nullopt;
    c.args.push_back(r);
  }
  return c;
}

Call collapse_call(const Call& c, int B, int D) {
  Call out{c.source, c.target, collapse_weight(c.out, B), {}};
  for (const auto& t : c.args) out.args.push_back(collapse_weights(collapse_depth(t, D), B));
  return out;
}

std::optional<Call> collapsed_compose(const Call& a, const Call& b, int B, int D) {
  auto c = compose(a, b);
  if (!c) return std::nullopt;
  Call out = collapse_call(*c, B, D);
  for (const auto& t : out.args)
    if (t->kind == Kind::Err) return std::nullopt;
  return out;
}

CallGraph transitive_closure(const CallGraph& g, int B, int D, size_t max_edges) {
  CallGraph out;
  out.vertices = g.vertices;
  std::set<std::string> keys;
  std::deque<size_t> work;
  auto add = [&](Call c) {
    if (!keys.insert(to_string(c)).second) return;
    if (out.edges.size() >= max_edges)
      throw ResourceError(fmt::format("the call-graph closure exceeds the ceiling of {} edges", max_edges));
    out.edges.push_back(std::move(c));
    work.push_back(out.edges.size() - 1);
  };
  for (const auto& e : g.edges) add(e);
  while (!work.empty()) {
    size_t i = work.front();
    work.pop_front();
    size_t n = out.edges.size();
    // Copies: `add` may reallocate the edge vector.
    const Call ei = out.edges[i];
    for (size_t j = 0; j < n; ++j) {
      const Call ej = out.edges[j];
      if (ei.target == ej.source)
        if (auto c = collapsed_compose(ei, ej, B, D)) add(std::move(*c));
      if (j != i && ej.target == ei.source)
        if (auto c = collapsed_compose(ej, ei, B, D)) add(std::move(*c));
    }
  }
  return out;
}

bool coherent(const Call& a, const Call& b) {
  if (a.source != b.source || a.target != b.target || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!sct::coherent(a.args[i], b.args[i])) return false;
  return true;
}

// ---- size-change conditions -------------------------------------------------

namespace {

bool condition1(const Weight& w) {
  auto p = w.max_priority();
  if (!p || *p % 2 != 0) return false;
  ZInf v = w.at(*p);
  return v != kInf && v < 0;
}

bool decreasing_product(const ApproxTerm& t, const std::vector<BranchStep>& beta, int index) {
  std::vector<Factor> fs;
  if (t->kind == Kind::Product)
    fs = t->factors;
  else
    fs.push_back({Weight::empty(), t});
  size_t informative = 0;
  for (const auto& f : fs) {
    if (f.weight.is_daimon()) continue;
    ++informative;
    if (f.term->kind != Kind::Chain || f.term->param != index) return false;
    Branch b;
    b.steps = beta;
    b.steps.push_back({BranchStep::Kind::Weight, 0, f.weight});
    for (auto it = f.term->steps.rbegin(); it != f.term->steps.rend(); ++it)
      b.steps.push_back({BranchStep::Kind::Dtor, it->prio, {}});
    int p = branch_max_priority(b);
    if (p < 0 || p % 2 == 0) return false;
    ZInf n = branch_norm(b, p);
    if (n == kInf || n >= 0) return false;
  }
  return informative > 0;
}

bool condition2_at(const ApproxTerm& t, std::vector<BranchStep>& beta, int index) {
  switch (t->kind) {
    case Kind::Chain:
    case Kind::Product:
      return decreasing_product(t, beta, index);
    case Kind::Ctor: {
      beta.push_back({BranchStep::Kind::Ctor, t->prio, {}});
      bool ok = condition2_at(t->kids[0], beta, index);
      beta.pop_back();
      return ok;
    }
    case Kind::Record: {
      beta.push_back({BranchStep::Kind::Record, t->prio, {}});
      bool ok = false;
      for (const auto& k : t->kids) ok = ok || condition2_at(k, beta, index);
      beta.pop_back();
      return ok;
    }
    default:
      return false;
  }
}

}  // namespace

LoopCheck check_loop(const Call& c) {
  LoopCheck r;
  if (condition1(c.out)) {
    r.pass = true;
    r.condition = 1;
    return r;
  }
  for (size_t i = 0; i < c.args.size(); ++i) {
    std::vector<BranchStep> beta;
    if (condition2_at(c.args[i], beta, static_cast<int>(i))) {
      r.pass = true;
      r.condition = 2;
      return r;
    }
  }
  r.reason = fmt::format("idempotent loop `{}` has no even productive weight and no odd decreasing argument",
                         to_string(c));
  return r;
}

TotalityResult decide_totality(const DefGroup& g, int B, int D, size_t max_edges) {
  TotalityResult res;
  res.graph = extract_calls(g);
  res.closure = transitive_closure(res.graph, B, D, max_edges);
  for (const auto& c : res.closure.edges) {
    if (c.source != c.target) continue;
    auto cc = collapsed_compose(c, c, B, D);
    if (!cc || !coherent(c, *cc)) continue;
    LoopCheck lc = check_loop(c);
    if (!lc.pass) {
      res.verdict = Verdict::Unsafe;
      res.reason = lc.reason;
      res.evidence = c;
      return res;
    }
  }
  return res;
}

}  // namespace totcheck
