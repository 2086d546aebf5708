#include <algorithm>
#include <optional>

#include <fmt/format.h>

#include "totcheck/typesys.hpp"

namespace totcheck {

namespace {

// Rows of the pattern matrix; nullptr stands for a wildcard introduced by
// specialization.
using Row = std::vector<const Pattern*>;
using Witness = std::vector<std::string>;

bool is_wild(const Pattern* p) { return p == nullptr || p->kind == Pattern::Kind::Var; }

std::string wrap(const std::string& s) {
  if (s.find(' ') == std::string::npos || s.front() == '{') return s;
  return "(" + s + ")";
}

class Coverage {
 public:
  explicit Coverage(const TypeEnv& env) : env_(env) {}

  void check_fields(const Pattern& p) const {
    if (p.kind == Pattern::Kind::Record && p.type && p.type->is_app()) {
      const TypeDecl* d = env_.decl(p.type->name);
      if (d && d->polarity == Polarity::Codata) {
        for (const auto& item : d->items) {
          if (std::find(p.labels.begin(), p.labels.end(), item.label) == p.labels.end())
            throw CoverageError(fmt::format("record pattern of type `{}` is missing the field `{}`",
                                            to_string(*p.type), item.label),
                                p.span, item.label);
        }
      }
    }
    for (const auto& a : p.args) check_fields(a);
  }

  std::optional<Witness> missing(const std::vector<Row>& rows, const std::vector<TypeExpr>& types) const {
    if (types.empty()) {
      if (rows.empty()) return Witness{};
      return std::nullopt;
    }
    const TypeExpr& t = types[0];
    std::vector<TypeExpr> rest(types.begin() + 1, types.end());
    const TypeDecl* d = t.is_app() ? env_.decl(t.name) : nullptr;

    if (d && d->polarity == Polarity::Data) return missing_data(*d, t, rows, rest);
    if (d && d->polarity == Polarity::Codata) {
      bool any_record = std::any_of(rows.begin(), rows.end(), [](const Row& r) { return !is_wild(r[0]); });
      if (any_record) return missing_record(*d, t, rows, rest);
    }
    return missing_default(rows, rest, "_");
  }

 private:
  const TypeEnv& env_;

  std::optional<Witness> missing_default(const std::vector<Row>& rows, const std::vector<TypeExpr>& rest,
                                         const std::string& head) const {
    std::vector<Row> def;
    for (const auto& r : rows)
      if (is_wild(r[0])) def.emplace_back(r.begin() + 1, r.end());
    auto w = missing(def, rest);
    if (!w) return std::nullopt;
    w->insert(w->begin(), head);
    return w;
  }

  std::string ctor_witness(const std::string& label, const std::string& sub, const TypeExpr& arg) const {
    const TypeDecl* ad = arg.is_app() ? env_.decl(arg.name) : nullptr;
    if (ad && ad->polarity == Polarity::Codata && ad->items.empty()) return label;
    return label + " " + wrap(sub);
  }

  std::optional<Witness> missing_data(const TypeDecl& d, const TypeExpr& t, const std::vector<Row>& rows,
                                      const std::vector<TypeExpr>& rest) const {
    std::vector<std::string> present;
    for (const auto& r : rows)
      if (!is_wild(r[0])) present.push_back(r[0]->name);
    bool complete = std::all_of(d.items.begin(), d.items.end(), [&](const TypeItem& it) {
      return std::find(present.begin(), present.end(), it.label) != present.end();
    });

    if (complete) {
      for (const auto& item : d.items) {
        TypeExpr arg = item_type_at(env_, item.label, t);
        std::vector<Row> spec;
        for (const auto& r : rows) {
          Row nr;
          if (is_wild(r[0]))
            nr.push_back(nullptr);
          else if (r[0]->name == item.label)
            nr.push_back(&r[0]->args[0]);
          else
            continue;
          nr.insert(nr.end(), r.begin() + 1, r.end());
          spec.push_back(std::move(nr));
        }
        std::vector<TypeExpr> sub{arg};
        sub.insert(sub.end(), rest.begin(), rest.end());
        auto w = missing(spec, sub);
        if (w) {
          std::string head = ctor_witness(item.label, (*w)[0], arg);
          w->erase(w->begin());
          w->insert(w->begin(), head);
          return w;
        }
      }
      return std::nullopt;
    }

    std::string head = "_";
    if (!present.empty()) {
      for (const auto& item : d.items) {
        if (std::find(present.begin(), present.end(), item.label) == present.end()) {
          head = ctor_witness(item.label, "_", item_type_at(env_, item.label, t));
          break;
        }
      }
    }
    return missing_default(rows, rest, head);
  }

  std::optional<Witness> missing_record(const TypeDecl& d, const TypeExpr& t, const std::vector<Row>& rows,
                                        const std::vector<TypeExpr>& rest) const {
    std::vector<Row> spec;
    for (const auto& r : rows) {
      Row nr;
      for (const auto& item : d.items) {
        const Pattern* field = nullptr;
        if (!is_wild(r[0])) {
          for (size_t i = 0; i < r[0]->labels.size(); ++i)
            if (r[0]->labels[i] == item.label) field = &r[0]->args[i];
        }
        nr.push_back(field);
      }
      nr.insert(nr.end(), r.begin() + 1, r.end());
      spec.push_back(std::move(nr));
    }
    std::vector<TypeExpr> sub;
    for (const auto& item : d.items) sub.push_back(item_type_at(env_, item.label, t));
    sub.insert(sub.end(), rest.begin(), rest.end());
    auto w = missing(spec, sub);
    if (!w) return std::nullopt;
    size_t k = d.items.size();
    bool all_wild = std::all_of(w->begin(), w->begin() + k, [](const std::string& s) { return s == "_"; });
    std::string head = "_";
    if (!all_wild) {
      head = "{ ";
      for (size_t i = 0; i < k; ++i) head += (i ? " ; " : "") + d.items[i].label + " = " + (*w)[i];
      head += " }";
    }
    Witness out{head};
    out.insert(out.end(), w->begin() + k, w->end());
    return out;
  }
};

}  // namespace

void check_group_exhaustive(const DefGroup& g, const TypeEnv& env) {
  Coverage cov(env);
  for (const auto& c : g.clauses)
    for (const auto& p : c.pats) cov.check_fields(p);

  for (const auto& name : g.names()) {
    auto sig = env.sigs.find(name);
    if (sig == env.sigs.end()) continue;
    size_t n = g.arity(name);
    std::vector<TypeExpr> types;
    const TypeExpr* cur = &sig->second;
    for (size_t i = 0; i < n && cur->is_arrow(); ++i) {
      types.push_back(cur->from());
      cur = &cur->to();
    }
    std::vector<Row> rows;
    Span span;
    for (const auto& c : g.clauses) {
      if (c.name != name) continue;
      if (rows.empty()) span = c.span;
      Row r;
      for (const auto& p : c.pats) r.push_back(&p);
      rows.push_back(std::move(r));
    }
    auto w = cov.missing(rows, types);
    if (w) {
      std::string detail;
      for (size_t i = 0; i < w->size(); ++i) {
        if (i) detail += " ";
        detail += w->size() > 1 ? wrap((*w)[i]) : (*w)[i];
      }
      throw CoverageError(fmt::format("the clauses of `{}` do not cover `{} {}`", name, name, detail), span, detail);
    }
  }
}

}  // namespace totcheck
