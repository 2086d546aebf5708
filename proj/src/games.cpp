#include "totcheck/games.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include <fmt/format.h>

namespace totcheck {

namespace {

size_t type_size(const TypeExpr& t) {
  size_t n = 1;
  for (const auto& a : t.args) n += type_size(a);
  return n;
}

TypeExpr codomain_of_stamp(const TypeExpr& t) {
  const TypeExpr* cur = &t;
  while (cur->is_arrow()) cur = &cur->to();
  return *cur;
}

}  // namespace

size_t TypeGraph::find(const TypeExpr& t) const {
  auto it = index.find(to_string(t));
  return it == index.end() ? static_cast<size_t>(-1) : it->second;
}

bool type_contained_in(const TypeExpr& small, const TypeExpr& big) {
  if (small == big) return true;
  if (big.is_arrow()) return false;
  return std::any_of(big.args.begin(), big.args.end(), [&](const TypeExpr& a) { return type_contained_in(small, a); });
}

TypeGraph build_type_graph(const std::vector<TypeExpr>& roots, const TypeEnv& env) {
  TypeGraph g;
  std::deque<size_t> work;
  auto add = [&](const TypeExpr& t) {
    std::string key = to_string(t);
    auto it = g.index.find(key);
    if (it != g.index.end()) return it->second;
    size_t id = g.nodes.size();
    g.nodes.push_back(t);
    g.index.emplace(key, id);
    work.push_back(id);
    return id;
  };
  for (const auto& r : roots) add(r);
  while (!work.empty()) {
    size_t id = work.front();
    work.pop_front();
    TypeExpr t = g.nodes[id];
    if (!t.is_app()) continue;
    const TypeDecl* d = env.decl(t.name);
    if (!d) continue;
    for (const auto& item : d->items) {
      TypeExpr sig = instantiate_decl(*d, t.args, item.sig);
      TypeExpr target = d->polarity == Polarity::Data ? sig.from() : sig.to();
      size_t to = add(target);
      g.edges.push_back({id, item.label, to});
    }
  }
  return g;
}

int ParityGame::priority_of(const TypeExpr& t) const {
  size_t id = graph.find(t);
  return id == static_cast<size_t>(-1) ? -1 : priority[id];
}

int ParityGame::max_finite_priority() const {
  int m = -1;
  for (int p : priority)
    if (p != kInfPriority) m = std::max(m, p);
  return m;
}

ParityGame assign_priorities(const TypeGraph& g, const TypeEnv& env) {
  ParityGame game;
  game.graph = g;
  game.priority.assign(g.nodes.size(), kInfPriority);

  std::vector<size_t> order;
  for (size_t i = 0; i < g.nodes.size(); ++i)
    if (!g.is_parameter(i)) order.push_back(i);
  // Containers are strictly larger than what they contain, so decreasing
  // size is a topological order of proper containment.
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return type_size(g.nodes[a]) > type_size(g.nodes[b]); });

  std::vector<bool> done(g.nodes.size(), false);
  for (size_t n : order) {
    const TypeDecl* d = env.decl(g.nodes[n].name);
    int parity = d && d->polarity == Polarity::Data ? 1 : 0;
    int lower = parity;
    for (size_t m : order) {
      if (m == n || !type_contained_in(g.nodes[n], g.nodes[m])) continue;
      if (!done[m]) throw CycleError(fmt::format("containment between `{}` and `{}` is cyclic",
                                                 to_string(g.nodes[n]), to_string(g.nodes[m])));
      lower = std::max(lower, game.priority[m]);
    }
    if (lower % 2 != parity) ++lower;
    game.priority[n] = lower;
    done[n] = true;
  }
  return game;
}

std::vector<TypeExpr> stamped_roots(const DefGroup& g) {
  std::vector<TypeExpr> out;
  std::function<void(const Pattern&)> pat = [&](const Pattern& p) {
    if ((p.kind == Pattern::Kind::Ctor || p.kind == Pattern::Kind::Record) && p.type && p.type->is_app())
      out.push_back(*p.type);
    for (const auto& a : p.args) pat(a);
  };
  std::function<void(const Term&)> term = [&](const Term& u) {
    if ((u.kind == Term::Kind::Ctor || u.kind == Term::Kind::Record) && u.type) {
      TypeExpr t = codomain_of_stamp(*u.type);
      if (t.is_app()) out.push_back(t);
    }
    for (const auto& a : u.args) term(a);
  };
  for (const auto& c : g.clauses) {
    for (const auto& p : c.pats) pat(p);
    term(c.rhs);
  }
  return out;
}

void annotate_group(DefGroup& g, const ParityGame& game) {
  std::function<void(Pattern&)> pat = [&](Pattern& p) {
    if ((p.kind == Pattern::Kind::Ctor || p.kind == Pattern::Kind::Record) && p.type)
      p.prio = game.priority_of(*p.type);
    for (auto& a : p.args) pat(a);
  };
  std::function<void(Term&)> term = [&](Term& u) {
    if ((u.kind == Term::Kind::Ctor || u.kind == Term::Kind::Record) && u.type)
      u.prio = game.priority_of(codomain_of_stamp(*u.type));
    for (auto& a : u.args) term(a);
  };
  for (auto& c : g.clauses) {
    for (auto& p : c.pats) pat(p);
    term(c.rhs);
  }
}

ParityGame annotate_program(TypedProgram& tp) {
  std::vector<TypeExpr> roots;
  for (const auto& g : tp.program.def_groups) {
    auto r = stamped_roots(g);
    roots.insert(roots.end(), r.begin(), r.end());
  }
  ParityGame game = assign_priorities(build_type_graph(roots, tp.env), tp.env);
  for (auto& g : tp.program.def_groups) annotate_group(g, game);
  return game;
}

std::string to_dot(const ParityGame& game) {
  std::string out = "digraph game {\n";
  for (size_t i = 0; i < game.graph.nodes.size(); ++i) {
    int p = game.priority[i];
    std::string ps = p == kInfPriority ? "inf" : std::to_string(p);
    out += fmt::format("  n{} [label=\"{} ^ {}\"];\n", i, to_string(game.graph.nodes[i]), ps);
  }
  for (const auto& e : game.graph.edges) out += fmt::format("  n{} -> n{} [label=\"{}\"];\n", e.from, e.to, e.label);
  return out + "}\n";
}

}  // namespace totcheck
