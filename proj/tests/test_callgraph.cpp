#include <gtest/gtest.h>

#include <algorithm>

#include <fmt/format.h>

#include "gen.hpp"
#include "totcheck/callgraph.hpp"
#include "totcheck/driver.hpp"

using namespace totcheck;
using namespace totcheck::sct;

namespace {

CheckReport load(const std::string& name) {
  return check_source(read_file(std::string(TOTCHECK_CORPUS_DIR) + "/" + name + ".ch"));
}

const DefGroup& group_of(const CheckReport& r, const std::string& f) {
  for (const auto& g : r.typed.program.def_groups)
    if (g.defines(f)) return g;
  throw std::runtime_error("no group " + f);
}

Call parse_call(const std::string& src, const std::string& dst, std::string_view w,
                std::vector<std::string_view> args) {
  Call c{src, dst, parse_weight(w), {}};
  for (auto a : args) c.args.push_back(nf(parse_approx(a)));
  return c;
}

Pattern pvar(const std::string& n) { return Pattern::var(n); }
Pattern pctor(const std::string& l, Pattern arg) {
  Pattern p = Pattern::ctor(l, std::move(arg));
  p.prio = 1;
  return p;
}
Pattern prec(std::vector<std::pair<std::string, Pattern>> fs) {
  Pattern p = Pattern::record(std::move(fs));
  p.prio = 0;
  return p;
}

}  // namespace

TEST(Extract, Sums) {
  CheckReport r = load("sums");
  CallGraph g = extract_calls(group_of(r, "sums"));
  ASSERT_EQ(g.edges.size(), 3u);
  int e = r.game.priority_of(TypeExpr::app("stream", {TypeExpr::app("nat")}));
  ASSERT_EQ(e % 2, 0);
  std::vector<std::string> outs;
  for (const auto& c : g.edges) outs.push_back(to_string(c.out));
  std::sort(outs.begin(), outs.end());
  std::string guard = to_string(Weight::single(e, -1));
  EXPECT_EQ(outs, (std::vector<std::string>{guard, guard, "<>"}));
  for (const auto& c : g.edges) {
    ASSERT_EQ(c.args.size(), 1u);
    if (!c.out.is_empty()) {
      EXPECT_EQ(to_string(c.args[0]), fmt::format(".Tail^{} x1", e));
      continue;
    }
    // {Head = Daimon :: l ; Tail = .Tail x} with l reached through the
    // second cons cell of the head list.
    const ApproxTerm& t = c.args[0];
    ASSERT_EQ(t->kind, Kind::Record);
    EXPECT_EQ(t->labels, (std::vector<std::string>{"Head", "Tail"}));
    EXPECT_EQ(to_string(t->kids[1]), fmt::format(".Tail^{} x1", e));
    const ApproxTerm& cons = t->kids[0];
    ASSERT_EQ(cons->kind, Kind::Ctor);
    EXPECT_EQ(cons->label, "Cons");
    const ApproxTerm& cell = cons->kids[0];
    ASSERT_EQ(cell->kind, Kind::Record);
    ASSERT_EQ(cell->labels, (std::vector<std::string>{"Fst", "Snd"}));
    ASSERT_EQ(cell->kids[0]->kind, Kind::Product);
    for (const auto& f : cell->kids[0]->factors) EXPECT_TRUE(f.weight.is_daimon());
    ASSERT_EQ(cell->kids[1]->kind, Kind::Chain);
    const auto& steps = cell->kids[1]->steps;
    ASSERT_EQ(steps.size(), 5u);
    EXPECT_EQ(steps[0].label, "Head");
    EXPECT_EQ(steps[1].label, "Cons");
    EXPECT_EQ(steps[2].label, "Snd");
    EXPECT_EQ(steps[3].label, "Cons");
    EXPECT_EQ(steps[4].label, "Snd");
  }
}

TEST(Extract, Length) {
  CheckReport r = load("length");
  CallGraph g = extract_calls(group_of(r, "length"));
  ASSERT_EQ(g.edges.size(), 1u);
  const Call& c = g.edges[0];
  int o = r.game.priority_of(TypeExpr::app("nat"));
  EXPECT_EQ(o % 2, 1);
  EXPECT_EQ(c.out, Weight::single(o, -1));
  ASSERT_EQ(c.args[0]->kind, Kind::Chain);
  ASSERT_EQ(c.args[0]->steps.size(), 2u);
  EXPECT_EQ(c.args[0]->steps[0].label, "Cons");
  EXPECT_EQ(c.args[0]->steps[0].kind, Step::Kind::CtorInv);
  EXPECT_EQ(c.args[0]->steps[0].prio % 2, 1);
  EXPECT_EQ(c.args[0]->steps[1].label, "Snd");

  auto twice = compose(c, c);
  ASSERT_TRUE(twice);
  EXPECT_EQ(twice->out, Weight::single(o, -2));
  EXPECT_EQ(twice->out.at(o), -2);
  EXPECT_EQ(twice->args[0]->steps.size(), 4u);
}

TEST(Extract, Undefined) {
  CheckReport r = load("undefined");
  CallGraph g = extract_calls(group_of(r, "undefined"));
  ASSERT_EQ(g.edges.size(), 1u);
  EXPECT_TRUE(g.edges[0].out.is_empty());
  EXPECT_TRUE(g.edges[0].args.empty());
}

TEST(Extract, PatternSubstitution) {
  auto s = pattern_substitution(pctor("Cons", prec({{"Fst", pvar("n")}, {"Snd", pvar("l")}})), 0);
  EXPECT_EQ(to_string(s.at("n")), ".Fst^0 Cons^1- x1");
  EXPECT_EQ(to_string(s.at("l")), ".Snd^0 Cons^1- x1");
  EXPECT_EQ(to_string(pattern_substitution(pvar("y"), 2).at("y")), "x3");
  auto z = pattern_substitution(pctor("Cons", prec({{"Fst", pctor("Zero", prec({}))}, {"Snd", pvar("l")}})), 0);
  EXPECT_EQ(z.size(), 1u);
  EXPECT_EQ(z.count("l"), 1u);
}

TEST(Compose, Examples) {
  Call id = parse_call("f", "f", "<>", {"x1"});
  Call c = parse_call("f", "f", "<-1@0>", {"A^1 .H^0 x1"});
  auto l = compose(id, c), r = compose(c, id);
  ASSERT_TRUE(l && r);
  EXPECT_TRUE(same_call(*l, c));
  EXPECT_TRUE(same_call(*r, c));

  Call clash = parse_call("f", "f", "<>", {"C2^1 C1^1- x1"});
  EXPECT_FALSE(compose(clash, clash));
}

TEST(Compose, CollapsedIsNotAssociative) {
  Call alpha = parse_call("f", "f", "<1@0>", {"x1"});
  Call beta = parse_call("f", "f", "<-1@0>", {"x1"});
  auto aa = collapsed_compose(alpha, alpha, 2, 2);
  ASSERT_TRUE(aa);
  auto left = collapsed_compose(*aa, beta, 2, 2);  // beta after (alpha alpha)
  auto ba = collapsed_compose(alpha, beta, 2, 2);
  ASSERT_TRUE(ba);
  auto right = collapsed_compose(alpha, *ba, 2, 2);  // (beta alpha) after alpha
  ASSERT_TRUE(left && right);
  EXPECT_EQ(to_string(left->out), "<inf@0>");
  EXPECT_EQ(to_string(right->out), "<+1@0>");
}

TEST(Compose, LengthStabilises) {
  CheckReport r = load("length");
  Call c = extract_calls(group_of(r, "length")).edges[0];
  int o = r.game.priority_of(TypeExpr::app("nat"));
  Call acc = c;
  for (int k = 0; k < 6; ++k) acc = *collapsed_compose(acc, c, 2, 2);
  EXPECT_EQ(acc.out.at(o), -2);
}

TEST(Closure, Basics) {
  CallGraph empty;
  EXPECT_TRUE(transitive_closure(empty, 2, 2).edges.empty());

  CheckReport r = load("length");
  CallGraph g = extract_calls(group_of(r, "length"));
  CallGraph star = transitive_closure(g, 2, 2);
  EXPECT_GE(star.edges.size(), 1u);
  EXPECT_LE(star.edges.size(), 10u);
  CallGraph again = transitive_closure(star, 2, 2);
  EXPECT_EQ(again.edges.size(), star.edges.size());
  EXPECT_THROW(transitive_closure(g, 2, 2, 1), ResourceError);
}

TEST(Closure, SumsHasProductiveAndConsumingLoops) {
  CheckReport r = load("sums");
  CallGraph star = transitive_closure(extract_calls(group_of(r, "sums")), 2, 2);
  bool productive = false, consuming = false;
  for (const auto& c : star.edges) {
    auto cc = collapsed_compose(c, c, 2, 2);
    if (!cc || !coherent(c, *cc)) continue;
    LoopCheck lc = check_loop(c);
    EXPECT_TRUE(lc.pass) << to_string(c);
    productive = productive || lc.condition == 1;
    consuming = consuming || lc.condition == 2;
  }
  EXPECT_TRUE(productive);
  EXPECT_TRUE(consuming);
}

TEST(Loops, Conditions) {
  LoopCheck z = check_loop(parse_call("zeros", "zeros", "<-1@0>", {}));
  EXPECT_TRUE(z.pass);
  EXPECT_EQ(z.condition, 1);
  EXPECT_FALSE(check_loop(parse_call("s", "s", "<-1@0,-1@1>", {})).pass);
  LoopCheck l = check_loop(parse_call("length", "length", "<-1@1>", {".Snd^0 Cons^1- x1"}));
  EXPECT_TRUE(l.pass);
  EXPECT_EQ(l.condition, 2);
  EXPECT_FALSE(check_loop(parse_call("f", "f", "<>", {"x1"})).pass);
  EXPECT_FALSE(check_loop(parse_call("f", "f", "<>", {"<T> x1"})).pass);
  EXPECT_FALSE(check_loop(parse_call("f", "f", "<1@0>", {})).pass);
}

TEST(CallProperty, CompositionIsAssociative) {
  gen::Rng rng(31);
  int kept = 0;
  for (int i = 0; i < 3000 && kept < 600; ++i) {
    int n = gen::uniform(rng, 1, 2);
    Call a = gen::call(rng, n), b = gen::call(rng, n), c = gen::call(rng, n);
    auto ab = compose(a, b), bc = compose(b, c);
    auto left = ab ? compose(*ab, c) : std::nullopt;
    auto right = bc ? compose(a, *bc) : std::nullopt;
    // Dropping a call with an error argument is not associative: the error
    // may sit in an argument the third call ignores.
    if (!left || !right) continue;
    ++kept;
    EXPECT_TRUE(same_call(*left, *right)) << to_string(*left) << "  vs  " << to_string(*right);
  }
  EXPECT_GE(kept, 500);
}

TEST(CallProperty, CollapsedBelowUncollapsedAndWeaklyAssociative) {
  gen::Rng rng(32);
  int kept = 0;
  for (int i = 0; i < 3000 && kept < 600; ++i) {
    int n = gen::uniform(rng, 1, 2);
    int B = gen::uniform(rng, 1, 2), D = gen::uniform(rng, 0, 2);
    Call a = gen::call(rng, n), b = gen::call(rng, n), c = gen::call(rng, n);
    auto full = compose(a, b);
    if (!full) continue;
    auto col = collapsed_compose(a, b, B, D);
    ASSERT_TRUE(col);
    ++kept;
    EXPECT_TRUE(weight_leq(col->out, full->out));
    for (size_t k = 0; k < full->args.size(); ++k)
      EXPECT_TRUE(term_leq(col->args[k], full->args[k])) << to_string(*col) << " vs " << to_string(*full);

    auto uncollapsed = compose(*full, c);
    if (!uncollapsed) continue;
    auto ab = collapsed_compose(a, b, B, D);
    auto bc = collapsed_compose(b, c, B, D);
    auto left = ab ? collapsed_compose(*ab, c, B, D) : std::nullopt;
    auto right = bc ? collapsed_compose(a, *bc, B, D) : std::nullopt;
    if (left && right) EXPECT_TRUE(coherent(*left, *right)) << to_string(*left) << " vs " << to_string(*right);
  }
  EXPECT_GE(kept, 500);
}

namespace {

// Closed value of the fixed signature: A, B over records with Fst, Snd.
ApproxTerm random_value(gen::Rng& r, int depth) {
  if (depth <= 0 || gen::coin(r, 0.25)) return record({}, 0);
  if (gen::coin(r)) return ctor(gen::coin(r) ? "A" : "B", 1, random_value(r, depth - 1));
  return record({{"Fst", random_value(r, depth - 1)}, {"Snd", random_value(r, depth - 1)}}, 0);
}

Pattern random_pattern(gen::Rng& r, int depth, int& fresh) {
  int k = depth <= 0 ? gen::uniform(r, 0, 1) : gen::uniform(r, 0, 3);
  switch (k) {
    case 0:
      return pvar("v" + std::to_string(fresh++));
    case 1:
      return pvar("_");
    case 2:
      return pctor(gen::coin(r) ? "A" : "B", random_pattern(r, depth - 1, fresh));
    default: {
      std::vector<std::pair<std::string, Pattern>> fs;
      for (const char* l : {"Fst", "Snd"})
        if (gen::coin(r, 0.7)) fs.emplace_back(l, random_pattern(r, depth - 1, fresh));
      return prec(std::move(fs));
    }
  }
}

// A value matching `p` together with the sub-value bound to each variable.
ApproxTerm instance(gen::Rng& r, const Pattern& p, std::map<std::string, ApproxTerm>& bound) {
  switch (p.kind) {
    case Pattern::Kind::Var: {
      ApproxTerm v = random_value(r, 3);
      if (!p.is_wildcard()) bound[p.name] = v;
      return v;
    }
    case Pattern::Kind::Ctor:
      return ctor(p.name, 1, instance(r, p.args[0], bound));
    default: {
      std::map<std::string, ApproxTerm> fs;
      for (size_t i = 0; i < p.labels.size(); ++i) fs[p.labels[i]] = instance(r, p.args[i], bound);
      if (!p.labels.empty())
        for (const char* l : {"Fst", "Snd"})
          if (!fs.count(l)) fs[l] = random_value(r, 2);
      return record({fs.begin(), fs.end()}, 0);
    }
  }
}

}  // namespace

TEST(CallProperty, PatternSubstitutionAgreesWithMatching) {
  gen::Rng rng(33);
  int vars = 0;
  for (int i = 0; i < 1200; ++i) {
    int fresh = 0;
    Pattern p = random_pattern(rng, 4, fresh);
    std::map<std::string, ApproxTerm> bound;
    ApproxTerm v = instance(rng, p, bound);
    auto sigma = pattern_substitution(p, 0);
    ASSERT_EQ(sigma.size(), bound.size());
    for (const auto& [name, sub] : bound) {
      ++vars;
      ApproxTerm got = substitute(sigma.at(name), {v});
      EXPECT_TRUE(equal(got, sub)) << name << ": " << to_string(got) << " vs " << to_string(sub);
    }
  }
  EXPECT_GE(vars, 500);
}
