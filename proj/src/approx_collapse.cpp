#include <algorithm>

#include "totcheck/approx.hpp"

namespace totcheck::sct {

namespace {

ApproxTerm map_weights(const ApproxTerm& t, int B) {
  switch (t->kind) {
    case Kind::Err:
    case Kind::Chain:
      return t;
    case Kind::Ctor:
      return ctor(t->label, t->prio, map_weights(t->kids[0], B));
    case Kind::Record: {
      std::vector<std::pair<std::string, ApproxTerm>> fields;
      for (size_t i = 0; i < t->kids.size(); ++i) fields.emplace_back(t->labels[i], map_weights(t->kids[i], B));
      return record(std::move(fields), t->prio);
    }
    case Kind::Product: {
      std::vector<Factor> fs;
      for (const auto& f : t->factors) fs.push_back({collapse_weight(f.weight, B), map_weights(f.term, B)});
      return product(std::move(fs));
    }
    case Kind::Proj:
      return proj(t->label, t->prio, map_weights(t->kids[0], B));
    case Kind::CtorInv:
      return ctor_inv(t->label, t->prio, map_weights(t->kids[0], B));
    case Kind::Weighted:
      return weighted(collapse_weight(t->weight, B), map_weights(t->kids[0], B));
  }
  return t;
}

class DepthCollapser {
 public:
  DepthCollapser(int D, Weight zero) : D_(D), zero_(std::move(zero)) {}

  ApproxTerm tree(const ApproxTerm& t, int i) const {
    switch (t->kind) {
      case Kind::Err:
        return t;
      case Kind::Chain:
        if (t->steps.size() < static_cast<size_t>(D_)) return t;
        return product({factor({Weight::empty(), t})});
      case Kind::Ctor:
        if (i > 0) return ctor(t->label, t->prio, tree(t->kids[0], i - 1));
        break;
      case Kind::Record:
        if (t->kids.empty()) return t;
        if (i > 0) {
          std::vector<std::pair<std::string, ApproxTerm>> fields;
          for (size_t k = 0; k < t->kids.size(); ++k) fields.emplace_back(t->labels[k], tree(t->kids[k], i - 1));
          return record(std::move(fields), t->prio);
        }
        break;
      case Kind::Product:
        if (i > 0) return factors(t);
        break;
      default:
        return tree(nf(t), i);
    }
    return factors(nf(weighted(zero_, t)));
  }

 private:
  int D_;
  Weight zero_;

  ApproxTerm factors(const ApproxTerm& p) const {
    if (p->kind != Kind::Product) return tree(p, 1);
    std::vector<Factor> fs;
    for (const auto& f : p->factors) fs.push_back(factor(f));
    return product(std::move(fs));
  }

  // Keeps the D steps next to the parameter and folds the rest, plus a
  // fresh <0>, into the weight.
  Factor factor(const Factor& f) const {
    const ApproxTerm& lam = f.term;
    if (lam->kind != Kind::Chain || lam->steps.size() < static_cast<size_t>(D_)) return f;
    Weight w = f.weight + zero_;
    for (size_t k = D_; k < lam->steps.size(); ++k) w += Weight::single(lam->steps[k].prio, -1);
    std::vector<Step> kept(lam->steps.begin(), lam->steps.begin() + D_);
    return {w, chain(std::move(kept), lam->param)};
  }
};

}  // namespace

ApproxTerm collapse_weights(const ApproxTerm& t, int B) { return nf(map_weights(t, B)); }

ApproxTerm collapse_depth(const ApproxTerm& t0, int D) {
  ApproxTerm t = nf(t0);
  Weight zero = Weight::zeros(std::max(0, max_priority(t)));
  return nf(DepthCollapser(D, zero).tree(t, D));
}

}  // namespace totcheck::sct
