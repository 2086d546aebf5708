// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <regex>
#include <set>

#include <fmt/format.h>

#include "properties.hpp"
#include "totcheck/approx.hpp"
#include "totcheck/callgraph.hpp"
#include "totcheck/driver.hpp"
#include "totcheck/eval.hpp"
#include "totcheck/games.hpp"
#include "totcheck/surface.hpp"

using namespace totcheck;
using namespace totcheck::sct;

namespace {

struct Check {
  bool ok = true;
  std::vector<std::string> notes;
  void expect(bool cond, std::string what) {
    if (!cond) {
      ok = false;
      notes.push_back(std::move(what));
    }
  }
};

std::string corpus(const std::string& name) { return std::string(TOTCHECK_CORPUS_DIR) + "/" + name + ".ch"; }

const DefGroup* group_of(const CheckReport& r, const std::string& f) {
  for (const auto& g : r.typed.program.def_groups)
    if (g.defines(f)) return &g;
  return nullptr;
}

// 1. Every `-- expect: NAME VERDICT` header in the corpus matches.
Check verdict_corpus() {
  Check c;
  std::regex header(R"(--\s*expect:\s*(\S+)\s+(\S+))");
  size_t expected = 0;
  auto start = std::chrono::steady_clock::now();
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(TOTCHECK_CORPUS_DIR))
    if (e.path().extension() == ".ch") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string src = read_file(f.string());
    std::map<std::string, std::string> want;
    for (auto it = std::sregex_iterator(src.begin(), src.end(), header); it != std::sregex_iterator(); ++it)
      want[(*it)[1]] = (*it)[2];
    expected += want.size();
    c.expect(!want.empty(), f.filename().string() + " has no expectations");
    CheckReport r;
    try {
      r = check_source(src);
    } catch (const std::exception& e) {
      c.expect(false, f.filename().string() + ": " + e.what());
      continue;
    }
    std::map<std::string, std::string> got;
    for (const auto& g : r.groups)
      for (const auto& fn : g.functions) got[fn] = to_string(g.verdict);
    for (const auto& [fn, v] : want)
      c.expect(got[fn] == v, fmt::format("{}: {} is {}, expected {}", f.filename().string(), fn, got[fn], v));
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(secs < 10.0, fmt::format("corpus took {:.2f}s", secs));
  c.notes.insert(c.notes.begin(), fmt::format("{} files, {} verdicts, {:.2f}s", files.size(), expected, secs));
  return c;
}

// 2. Calls of sums and length, and the length loop squared.
Check worked_examples() {
  Check c;
  CheckReport sums = check_source(read_file(corpus("sums")));
  const DefGroup* sg = group_of(sums, "sums");
  c.expect(sg != nullptr, "no sums group");
  if (!sg) return c;
  CallGraph g = extract_calls(*sg);
  c.expect(g.edges.size() == 3, fmt::format("sums has {} calls", g.edges.size()));
  int e = -1;
  for (size_t i = 0; i < sums.game.graph.nodes.size(); ++i) {
    const auto& n = sums.game.graph.nodes[i];
    if (n.is_app() && n.name == "stream") e = sums.game.priority[i];
  }
  std::multiset<std::string> outs, want_outs{to_string(Weight::single(e, -1)), to_string(Weight::single(e, -1)),
                                             to_string(Weight::empty())};
  std::multiset<std::string> args;
  for (const auto& call : g.edges) {
    outs.insert(to_string(call.out));
    if (call.args.size() == 1) args.insert(to_string(call.args[0]));
  }
  c.expect(outs == want_outs, "sums output weights differ");
  std::string tail = fmt::format(".Tail^{} x1", e);
  c.expect(args.count(tail) == 2, "sums lacks two " + tail + " arguments");
  const std::string big =
      "{Head=Cons^1 {Fst=<T> .Fst^0 Cons^1- .Head^0 x1 * <T> .Fst^0 Cons^1- .Snd^0 Cons^1- .Head^0 x1; "
      "Snd=.Snd^0 Cons^1- .Snd^0 Cons^1- .Head^0 x1}^0; Tail=.Tail^0 x1}^0";
  c.expect(args.count(big) == 1, "sums third argument differs");

  CheckReport len = check_source(read_file(corpus("length")));
  const DefGroup* lg = group_of(len, "length");
  c.expect(lg != nullptr, "no length group");
  if (!lg) return c;
  CallGraph lc = extract_calls(*lg);
  c.expect(lc.edges.size() == 1, "length has more than one call");
  if (lc.edges.size() != 1) return c;
  c.expect(to_string(lc.edges[0]) == "length -> <-1@1> length (.Snd^0 Cons^1- x1)", to_string(lc.edges[0]));
  auto sq = compose(lc.edges[0], lc.edges[0]);
  c.expect(sq.has_value(), "length loop squared is dropped");
  if (sq) {
    c.expect(sq->out == Weight::single(1, -2), "length loop squared has weight " + to_string(sq->out));
    c.expect(to_string(sq->args[0]) == ".Snd^0 Cons^1- .Snd^0 Cons^1- x1", to_string(sq->args[0]));
  }
  return c;
}

// 3. Parity games of stream(nat), list(nat), rtree(X).
Check parity_games() {
  Check c;
  TypeEnv env = validate_type_decls(desugar(parse_program(R"(
codata unit where
data nat where Zero : unit -> nat | Succ : nat -> nat
codata prod('x,'y) where Fst : prod('x,'y) -> 'x | Snd : prod('x,'y) -> 'y
data list('x) where Nil : unit -> list('x) | Cons : prod('x, list('x)) -> list('x)
codata stream('x) where Head : stream('x) -> 'x | Tail : stream('x) -> stream('x)
codata rtree('x) where Root : rtree('x) -> 'x | Subtrees : rtree('x) -> list(rtree('x))
)")));
  auto T = [](const std::string& n, std::vector<TypeExpr> a = {}) { return TypeExpr::app(n, std::move(a)); };
  TypeExpr nat = T("nat"), X = TypeExpr::var("X");
  auto conditions = [&](const std::vector<TypeExpr>& roots, const std::string& name) {
    ParityGame g = assign_priorities(build_type_graph(roots, env), env);
    const auto& nodes = g.graph.nodes;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (!nodes[i].is_app()) {
        c.expect(g.priority[i] == kInfPriority, name + ": parameter without infinite priority");
        continue;
      }
      const TypeDecl* d = env.decl(nodes[i].name);
      int parity = d && d->polarity == Polarity::Data ? 1 : 0;
      c.expect(g.priority[i] != kInfPriority && g.priority[i] % 2 == parity, name + ": wrong parity at " + to_string(nodes[i]));
    }
    for (size_t i = 0; i < nodes.size(); ++i)
      for (size_t j = 0; j < nodes.size(); ++j)
        if (type_contained_in(nodes[i], nodes[j]))
          c.expect(g.priority[i] >= g.priority[j], name + ": order broken at " + to_string(nodes[i]));
    return g;
  };
  ParityGame s = conditions({T("stream", {nat})}, "stream(nat)");
  c.expect(s.priority_of(nat) > s.priority_of(T("stream", {nat})), "nat > stream(nat) fails");
  TypeExpr ln = T("list", {nat});
  ParityGame l = conditions({ln}, "list(nat)");
  c.expect(l.priority_of(ln) > l.priority_of(T("prod", {nat, ln})), "list > prod fails");
  TypeExpr rx = T("rtree", {X}), lr = T("list", {rx});
  ParityGame r = conditions({rx}, "rtree(X)");
  int pr = r.priority_of(rx), pl = r.priority_of(lr), pp = r.priority_of(T("prod", {rx, lr}));
  c.expect(pr > pl && pl > pp, fmt::format("rtree > list > prod fails: {} {} {}", pr, pl, pp));
  c.expect(r.priority_of(X) == kInfPriority, "X is not infinite");
  c.notes.insert(c.notes.begin(), fmt::format("rtree={} list={} prod={}", pr, pl, pp));
  return c;
}

// 4. Property suites.
Check properties() {
  Check c;
  const size_t n = 600;
  std::vector<std::pair<props::Result, size_t>> runs = {
      {props::reduction_exhaustive(8), 1000000},
      {props::reduction_random(401, n), n},
      {props::reduct_below_redex(402, n), n},
      {props::composition_associative(403, n), n},
      {props::collapsed_below_uncollapsed(404, n), n},
      {props::collapse_laws(405, n), n},
      {props::weight_laws(406, 2000), n},
      {props::weight_oracle(), 2500},
      {props::order_oracle(3), n},
      {props::sigma_matches(407, n), n},
      {props::finite_call_space(), 1},
  };
  for (const auto& [r, min] : runs) {
    c.notes.push_back(r.summary());
    if (!r.ok(min)) {
      c.ok = false;
      if (r.failures == 0) c.notes.push_back(fmt::format("{}: fewer than {} cases", r.name, min));
    }
  }
  return c;
}

// 5. Evaluator.
Check evaluator() {
  Check c;
  std::string zeros = evaluate_expression(read_file(corpus("zeros")), "zeros", 5, 100000);
  size_t heads = 0;
  for (size_t p = zeros.find("Head=Zero"); p != std::string::npos; p = zeros.find("Head=Zero", p + 1)) ++heads;
  c.expect(heads == 5, "zeros at depth 5: " + zeros);
  std::string ack = evaluate_expression(read_file(corpus("ack")), "ack 2 3", 64, 1000000);
  c.expect(numeral_value(ack) == std::optional<long>(9), "ack 2 3 = " + ack);
  std::string t = evaluate_expression(read_file(corpus("stree")), "t", 4, 100000);
  c.expect(t.find("fuel exhausted") == std::string::npos && t.rfind("Node", 0) == 0, "stree t: " + t);
  return c;
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"verdict corpus", verdict_corpus},
      {"worked examples", worked_examples},
      {"parity games", parity_games},
      {"property suites", properties},
      {"evaluator", evaluator},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << fmt::format("criterion {} [{}]: {}\n", i + 1, criteria[i].first, c.ok ? "PASS" : "FAIL");
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    failed += c.ok ? 0 : 1;
  }
  std::cout << "criterion 6 [non-reproducible claims]: ACKNOWLEDGED (complexity bound and soundness proofs are "
               "not executable; the order and reduction oracles of criterion 4 test soundness indirectly)\n";
  std::cout << fmt::format("{} of 5 checkable criteria passed\n", 5 - failed);
  return failed == 0 ? 0 : 1;
}
