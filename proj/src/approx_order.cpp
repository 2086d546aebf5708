#include <algorithm>

#include "totcheck/approx.hpp"

namespace totcheck::sct {

namespace {

bool is_approx(const ApproxTerm& t) { return t->kind == Kind::Chain || t->kind == Kind::Product; }

// A bare chain is a factor without a weight; it is not the same as <>.
struct Leaf {
  const Weight* weight;  // nullptr when bare
  ApproxTerm term;
};

std::vector<Leaf> leaves_of(const ApproxTerm& t) {
  std::vector<Leaf> out;
  if (t->kind == Kind::Product) {
    for (const auto& f : t->factors) out.push_back({&f.weight, f.term});
  } else {
    out.push_back({nullptr, t});
  }
  return out;
}

bool is_leaf_record(const ApproxTerm& t) { return t->kind == Kind::Record && t->kids.empty(); }

bool has_nonnegative_entry(const Weight& w) {
  if (w.is_daimon()) return true;
  for (const auto& [p, v] : w.entries())
    if (v >= 0) return true;
  return false;
}

// f <= g for single factors.  `mu = delta lam` is approximated through
// delta <0> lam -> <0 - kappa(delta)> lam.
bool leaf_leq(const Leaf& f, const Leaf& g) {
  const ApproxTerm& lam = f.term;
  const ApproxTerm& mu = g.term;
  if (is_leaf_record(lam) || is_leaf_record(mu)) {
    if (!is_leaf_record(lam) || !is_leaf_record(mu) || lam->prio != mu->prio) return false;
    if (!f.weight) return !g.weight;
    return g.weight ? weight_leq(*f.weight, *g.weight) : has_nonnegative_entry(*f.weight);
  }
  if (lam->param != mu->param || lam->steps.size() > mu->steps.size()) return false;
  if (!std::equal(lam->steps.begin(), lam->steps.end(), mu->steps.begin())) return false;
  bool extra = mu->steps.size() > lam->steps.size();
  if (!f.weight) return !g.weight && !extra;
  Weight bound = g.weight ? *g.weight : Weight::empty();
  for (size_t i = lam->steps.size(); i < mu->steps.size(); ++i) bound += Weight::single(mu->steps[i].prio, -1);
  if (!g.weight && !extra) return has_nonnegative_entry(*f.weight);
  return weight_leq(*f.weight, bound);
}

bool approx_leq(const ApproxTerm& u, const ApproxTerm& v) {
  std::vector<Leaf> fu = leaves_of(u);
  for (const auto& g : leaves_of(v)) {
    bool found = std::any_of(fu.begin(), fu.end(), [&](const Leaf& f) { return leaf_leq(f, g); });
    if (!found) return false;
  }
  return true;
}

}  // namespace

bool term_leq(const ApproxTerm& u0, const ApproxTerm& v0) {
  ApproxTerm u = nf(u0);
  ApproxTerm v = nf(v0);
  if (v->kind == Kind::Err) return true;
  if (u->kind == Kind::Err) return false;
  switch (u->kind) {
    case Kind::Ctor:
      return v->kind == Kind::Ctor && v->label == u->label && v->prio == u->prio && term_leq(u->kids[0], v->kids[0]);
    case Kind::Record:
      if (v->kind != Kind::Record || v->labels != u->labels || v->prio != u->prio) return false;
      for (size_t i = 0; i < u->kids.size(); ++i)
        if (!term_leq(u->kids[i], v->kids[i])) return false;
      return true;
    default:
      break;
  }
  if (is_approx(v)) return approx_leq(u, v);
  // <0> v <= v: pad the constructor side and compare approximations.
  int top = std::max({0, max_priority(u), max_priority(v)});
  ApproxTerm padded = nf(weighted(Weight::zeros(top), v));
  if (padded->kind == Kind::Err) return true;
  return approx_leq(u, padded);
}

bool coherent(const ApproxTerm& u0, const ApproxTerm& v0) {
  ApproxTerm u = nf(u0);
  ApproxTerm v = nf(v0);
  if (u->kind == Kind::Err || v->kind == Kind::Err) return false;
  if (is_approx(u) || is_approx(v)) return true;
  if (u->kind == Kind::Ctor && v->kind == Kind::Ctor)
    return u->label == v->label && coherent(u->kids[0], v->kids[0]);
  if (u->kind == Kind::Record && v->kind == Kind::Record) {
    if (u->labels != v->labels) return false;
    for (size_t i = 0; i < u->kids.size(); ++i)
      if (!coherent(u->kids[i], v->kids[i])) return false;
    return true;
  }
  return false;
}

}  // namespace totcheck::sct
