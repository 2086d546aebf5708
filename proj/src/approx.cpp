#include "totcheck/approx.hpp"

#include <algorithm>
#include <cassert>

#include <fmt/format.h>

namespace totcheck::sct {

namespace {

std::shared_ptr<ApproxNode> make(Kind k) {
  auto n = std::make_shared<ApproxNode>();
  n->kind = k;
  return n;
}

const ApproxTerm& err_singleton() {
  static const ApproxTerm e = make(Kind::Err);
  return e;
}

int cmp_int(long a, long b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_str(const std::string& a, const std::string& b) { return a < b ? -1 : (a > b ? 1 : 0); }

int cmp_weight(const Weight& a, const Weight& b) {
  if (a == b) return 0;
  return a < b ? -1 : 1;
}

int cmp_step(const Step& a, const Step& b) {
  if (int c = cmp_int(static_cast<int>(a.kind), static_cast<int>(b.kind))) return c;
  if (int c = cmp_str(a.label, b.label)) return c;
  return cmp_int(a.prio, b.prio);
}

bool factor_less(const Factor& a, const Factor& b) {
  if (int c = cmp_weight(a.weight, b.weight)) return c < 0;
  return compare(a.term, b.term) < 0;
}

void absorb(const Weight& w, const ApproxTerm& t, std::vector<Factor>& out) {
  switch (t->kind) {
    case Kind::Err:
      return;
    case Kind::Ctor:
      absorb(w + Weight::kappa(t->prio), t->kids[0], out);
      return;
    case Kind::Record:
      if (t->kids.empty()) {
        out.push_back({w, t});
        return;
      }
      for (const auto& k : t->kids) absorb(w + Weight::kappa(t->prio), k, out);
      return;
    case Kind::Chain:
      out.push_back({w, t});
      return;
    case Kind::Product:
      for (const auto& f : t->factors) out.push_back({w + f.weight, f.term});
      return;
    default:
      assert(false && "absorb expects a normal term");
  }
}

// Builds the normal product of already-normal factor terms.
ApproxTerm normal_product(const std::vector<Factor>& in) {
  std::vector<Factor> out;
  for (const auto& f : in) absorb(f.weight, f.term, out);
  if (out.empty()) return err();
  std::sort(out.begin(), out.end(), factor_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Factor& a, const Factor& b) {
                          return a.weight == b.weight && compare(a.term, b.term) == 0;
                        }),
            out.end());
  auto n = make(Kind::Product);
  n->factors = std::move(out);
  return n;
}

ApproxTerm normal_ctor(const std::string& label, int prio, const ApproxTerm& a) {
  if (a->kind == Kind::Err) return err();
  return ctor(label, prio, a);
}

ApproxTerm normal_record(const ApproxNode& r, std::vector<ApproxTerm> kids) {
  for (const auto& k : kids)
    if (k->kind == Kind::Err) return err();
  auto n = make(Kind::Record);
  n->prio = r.prio;
  n->labels = r.labels;
  n->kids = std::move(kids);
  return n;
}

std::string paren_product(const ApproxTerm& t) {
  std::string s = to_string(t);
  if (t->kind == Kind::Product && t->factors.size() > 1) return "(" + s + ")";
  return s;
}

void collect_branches(const ApproxTerm& t, std::vector<BranchStep>& path, std::vector<Branch>& out) {
  auto leaf_chain = [&](const ApproxTerm& c) {
    Branch b;
    b.steps = path;
    if (c->kind == Kind::Chain) {
      for (auto it = c->steps.rbegin(); it != c->steps.rend(); ++it)
        b.steps.push_back({BranchStep::Kind::Dtor, it->prio, {}});
      b.param = c->param;
    }
    return b;
  };
  switch (t->kind) {
    case Kind::Err:
      return;
    case Kind::Ctor:
      path.push_back({BranchStep::Kind::Ctor, t->prio, {}});
      collect_branches(t->kids[0], path, out);
      path.pop_back();
      return;
    case Kind::Record:
      if (t->kids.empty()) {
        out.push_back(leaf_chain(t));
        return;
      }
      path.push_back({BranchStep::Kind::Record, t->prio, {}});
      for (const auto& k : t->kids) collect_branches(k, path, out);
      path.pop_back();
      return;
    case Kind::Chain:
      out.push_back(leaf_chain(t));
      return;
    case Kind::Product:
      for (const auto& f : t->factors) {
        path.push_back({BranchStep::Kind::Weight, 0, f.weight});
        out.push_back(leaf_chain(f.term));
        path.pop_back();
      }
      return;
    default:
      collect_branches(nf(t), path, out);
  }
}

}  // namespace

ApproxTerm err() { return err_singleton(); }

ApproxTerm param(int index) { return chain({}, index); }

ApproxTerm chain(std::vector<Step> steps, int index) {
  auto n = make(Kind::Chain);
  n->steps = std::move(steps);
  n->param = index;
  return n;
}

ApproxTerm ctor(std::string label, int prio, ApproxTerm arg) {
  auto n = make(Kind::Ctor);
  n->label = std::move(label);
  n->prio = prio;
  n->kids.push_back(std::move(arg));
  return n;
}

ApproxTerm record(std::vector<std::pair<std::string, ApproxTerm>> fields, int prio) {
  std::sort(fields.begin(), fields.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  auto n = make(Kind::Record);
  n->prio = prio;
  for (auto& [l, t] : fields) {
    n->labels.push_back(l);
    n->kids.push_back(std::move(t));
  }
  return n;
}

ApproxTerm empty_record(int prio) { return record({}, prio); }

ApproxTerm product(std::vector<Factor> factors) {
  auto n = make(Kind::Product);
  n->factors = std::move(factors);
  return n;
}

ApproxTerm proj(std::string label, int prio, ApproxTerm arg) {
  auto n = make(Kind::Proj);
  n->label = std::move(label);
  n->prio = prio;
  n->kids.push_back(std::move(arg));
  return n;
}

ApproxTerm ctor_inv(std::string label, int prio, ApproxTerm arg) {
  auto n = make(Kind::CtorInv);
  n->label = std::move(label);
  n->prio = prio;
  n->kids.push_back(std::move(arg));
  return n;
}

ApproxTerm weighted(Weight w, ApproxTerm arg) {
  auto n = make(Kind::Weighted);
  n->weight = std::move(w);
  n->kids.push_back(std::move(arg));
  return n;
}

ApproxTerm apply_step(const ApproxTerm& t, const Step& s) {
  switch (t->kind) {
    case Kind::Err:
      return t;
    case Kind::Ctor:
      if (s.kind == Step::Kind::CtorInv && s.label == t->label) return t->kids[0];
      return err();
    case Kind::Record:
      if (s.kind == Step::Kind::Proj) {
        for (size_t i = 0; i < t->labels.size(); ++i)
          if (t->labels[i] == s.label) return t->kids[i];
      }
      return err();
    case Kind::Chain: {
      std::vector<Step> steps = t->steps;
      steps.push_back(s);
      return chain(std::move(steps), t->param);
    }
    case Kind::Product: {
      std::vector<Factor> fs = t->factors;
      Weight minus = Weight::single(s.prio, -1);
      for (auto& f : fs) f.weight += minus;
      return normal_product(fs);
    }
    default:
      return apply_step(nf(t), s);
  }
}

ApproxTerm nf(const ApproxTerm& t) {
  switch (t->kind) {
    case Kind::Err:
    case Kind::Chain:
      return t;
    case Kind::Ctor:
      return normal_ctor(t->label, t->prio, nf(t->kids[0]));
    case Kind::Record: {
      std::vector<ApproxTerm> kids;
      for (const auto& k : t->kids) kids.push_back(nf(k));
      return normal_record(*t, std::move(kids));
    }
    case Kind::Product: {
      std::vector<Factor> fs;
      for (const auto& f : t->factors) fs.push_back({f.weight, nf(f.term)});
      return normal_product(fs);
    }
    case Kind::Proj:
      return apply_step(nf(t->kids[0]), {Step::Kind::Proj, t->label, t->prio});
    case Kind::CtorInv:
      return apply_step(nf(t->kids[0]), {Step::Kind::CtorInv, t->label, t->prio});
    case Kind::Weighted: {
      return normal_product({{t->weight, nf(t->kids[0])}});
    }
  }
  return t;
}

bool is_normal(const ApproxTerm& t) { return equal(nf(t), t); }

ApproxTerm substitute(const ApproxTerm& t, const std::vector<ApproxTerm>& sigma) {
  switch (t->kind) {
    case Kind::Err:
      return t;
    case Kind::Chain: {
      assert(t->param >= 0 && static_cast<size_t>(t->param) < sigma.size());
      ApproxTerm acc = sigma[t->param];
      for (const auto& s : t->steps) acc = apply_step(acc, s);
      return acc;
    }
    case Kind::Ctor:
      return normal_ctor(t->label, t->prio, substitute(t->kids[0], sigma));
    case Kind::Record: {
      std::vector<ApproxTerm> kids;
      for (const auto& k : t->kids) kids.push_back(substitute(k, sigma));
      return normal_record(*t, std::move(kids));
    }
    case Kind::Product: {
      std::vector<Factor> fs;
      for (const auto& f : t->factors) fs.push_back({f.weight, substitute(f.term, sigma)});
      return normal_product(fs);
    }
    default:
      return substitute(nf(t), sigma);
  }
}

int compare(const ApproxTerm& a, const ApproxTerm& b) {
  if (a == b) return 0;
  if (int c = cmp_int(static_cast<int>(a->kind), static_cast<int>(b->kind))) return c;
  if (int c = cmp_str(a->label, b->label)) return c;
  if (int c = cmp_int(a->prio, b->prio)) return c;
  if (int c = cmp_int(a->param, b->param)) return c;
  if (int c = cmp_weight(a->weight, b->weight)) return c;
  if (a->labels != b->labels) return a->labels < b->labels ? -1 : 1;
  if (int c = cmp_int(static_cast<long>(a->steps.size()), static_cast<long>(b->steps.size()))) return c;
  for (size_t i = 0; i < a->steps.size(); ++i)
    if (int c = cmp_step(a->steps[i], b->steps[i])) return c;
  if (int c = cmp_int(static_cast<long>(a->kids.size()), static_cast<long>(b->kids.size()))) return c;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (int c = compare(a->kids[i], b->kids[i])) return c;
  if (int c = cmp_int(static_cast<long>(a->factors.size()), static_cast<long>(b->factors.size()))) return c;
  for (size_t i = 0; i < a->factors.size(); ++i) {
    if (int c = cmp_weight(a->factors[i].weight, b->factors[i].weight)) return c;
    if (int c = compare(a->factors[i].term, b->factors[i].term)) return c;
  }
  return 0;
}

int max_priority(const ApproxTerm& t) {
  int m = -1;
  auto weight_max = [&](const Weight& w) {
    if (auto p = w.max_priority()) m = std::max(m, *p);
  };
  switch (t->kind) {
    case Kind::Err:
      break;
    case Kind::Chain:
      for (const auto& s : t->steps) m = std::max(m, s.prio);
      break;
    case Kind::Product:
      for (const auto& f : t->factors) {
        weight_max(f.weight);
        m = std::max(m, max_priority(f.term));
      }
      break;
    default:
      if (t->kind != Kind::Record || !t->kids.empty()) m = std::max(m, t->prio);
      if (t->kind == Kind::Weighted) {
        m = -1;
        weight_max(t->weight);
      }
      for (const auto& k : t->kids) m = std::max(m, max_priority(k));
  }
  return m;
}

size_t term_size(const ApproxTerm& t) {
  size_t n = 1 + t->steps.size();
  for (const auto& k : t->kids) n += term_size(k);
  for (const auto& f : t->factors) n += term_size(f.term);
  return n;
}

std::string to_string(const ApproxTerm& t) {
  switch (t->kind) {
    case Kind::Err:
      return "!";
    case Kind::Chain: {
      std::string s;
      for (auto it = t->steps.rbegin(); it != t->steps.rend(); ++it) {
        if (it->kind == Step::Kind::Proj)
          s += fmt::format(".{}^{} ", it->label, it->prio);
        else
          s += fmt::format("{}^{}- ", it->label, it->prio);
      }
      return s + fmt::format("x{}", t->param + 1);
    }
    case Kind::Ctor:
      return fmt::format("{}^{} {}", t->label, t->prio, paren_product(t->kids[0]));
    case Kind::Record: {
      std::string s = "{";
      for (size_t i = 0; i < t->kids.size(); ++i) {
        if (i) s += "; ";
        s += t->labels[i] + "=" + to_string(t->kids[i]);
      }
      s += "}";
      if (t->prio >= 0) s += fmt::format("^{}", t->prio);
      return s;
    }
    case Kind::Product: {
      std::string s;
      for (size_t i = 0; i < t->factors.size(); ++i) {
        if (i) s += " * ";
        s += to_string(t->factors[i].weight) + " " + to_string(t->factors[i].term);
      }
      return s;
    }
    case Kind::Proj:
      return fmt::format(".{}^{} {}", t->label, t->prio, paren_product(t->kids[0]));
    case Kind::CtorInv:
      return fmt::format("{}^{}- {}", t->label, t->prio, paren_product(t->kids[0]));
    case Kind::Weighted:
      return to_string(t->weight) + " " + paren_product(t->kids[0]);
  }
  return "?";
}

std::vector<Branch> branches(const ApproxTerm& t) {
  std::vector<Branch> out;
  std::vector<BranchStep> path;
  collect_branches(t, path, out);
  return out;
}

ZInf branch_norm(const Branch& b, int p) {
  ZInf n = 0;
  for (const auto& s : b.steps) {
    switch (s.kind) {
      case BranchStep::Kind::Ctor:
      case BranchStep::Kind::Record:
        if (s.prio == p) n = add_zinf(n, 1);
        break;
      case BranchStep::Kind::Dtor:
        if (s.prio == p) n = add_zinf(n, -1);
        break;
      case BranchStep::Kind::Weight:
        if (s.weight.is_daimon()) return kInf;
        n = add_zinf(n, s.weight.at(p));
        break;
    }
  }
  return n;
}

int branch_max_priority(const Branch& b) {
  int m = -1;
  for (const auto& s : b.steps) {
    if (s.kind == BranchStep::Kind::Weight) {
      if (auto p = s.weight.max_priority()) m = std::max(m, *p);
    } else {
      m = std::max(m, s.prio);
    }
  }
  return m;
}

}  // namespace totcheck::sct
