#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gen.hpp"
#include "properties.hpp"
#include "totcheck/approx.hpp"
#include "totcheck/callgraph.hpp"

using namespace totcheck;
using namespace totcheck::sct;

namespace {

std::set<std::string> keys(const CallGraph& g) {
  std::set<std::string> s;
  for (const auto& c : g.edges) s.insert(to_string(c));
  return s;
}

}  // namespace

TEST(ReductionProperty, RandomStrategiesReachTheNormalForm) {
  auto r = props::reduction_random(51, 800);
  EXPECT_TRUE(r.ok(800)) << r.summary();
}

TEST(ReductionProperty, ReductBelowRedex) {
  auto r = props::reduct_below_redex(53, 600);
  EXPECT_TRUE(r.ok(600)) << r.summary();
}

TEST(WeightProperty, Laws) {
  auto r = props::weight_laws(54, 1000);
  EXPECT_TRUE(r.ok(1000)) << r.summary();
}

TEST(CollapseProperty, Laws) {
  auto r = props::collapse_laws(55, 500);
  EXPECT_TRUE(r.ok(500)) << r.summary();
}

// Closures that outgrow a small ceiling are skipped; quadratic growth makes
// a few random seeds take seconds each.
TEST(ClosureProperty, MonotoneAndIdempotent) {
  gen::Rng rng(52);
  int checked = 0, skipped = 0;
  while (checked < 500) {
    CallGraph small{{"f"}, {}};
    int n = gen::uniform(rng, 1, 2);
    for (int k = 0; k < n; ++k) small.edges.push_back(collapse_call(gen::call(rng, 1, 2), 1, 1));
    CallGraph big = small;
    big.edges.push_back(collapse_call(gen::call(rng, 1, 2), 1, 1));
    CallGraph cs, cb;
    try {
      cs = transitive_closure(small, 1, 1, 120);
      cb = transitive_closure(big, 1, 1, 120);
    } catch (const ResourceError&) {
      ++skipped;
      continue;
    }
    ++checked;
    auto ks = keys(cs), kb = keys(cb);
    EXPECT_TRUE(std::includes(kb.begin(), kb.end(), ks.begin(), ks.end()));
    EXPECT_EQ(keys(transitive_closure(cs, 1, 1)), ks);
  }
  EXPECT_LT(skipped, checked);
  RecordProperty("skipped", skipped);
}

TEST(ClosureProperty, CollapsedCallSpaceIsFiniteAtB1D1) {
  auto r = props::finite_call_space();
  EXPECT_TRUE(r.ok(1)) << r.summary();
}
