#include <gtest/gtest.h>

#include "gen.hpp"
#include "totcheck/approx.hpp"

using namespace totcheck::sct;

namespace {

Weight w(std::string_view s) { return parse_weight(s); }

}  // namespace

TEST(Weight, Addition) {
  EXPECT_EQ(w("<-1@0>") + w("<-1@0>"), w("<-2@0>"));
  EXPECT_EQ(w("<-1@0>") + Weight::daimon(), Weight::daimon());
  EXPECT_EQ(Weight::empty() + w("<3@1>"), w("<3@1>"));
  EXPECT_EQ(w("<inf@0>") + w("<-5@0>"), w("<inf@0>"));
  EXPECT_EQ(w("<1@0>") + w("<-1@0>"), w("<0@0>"));
  EXPECT_NE(w("<0@0>"), Weight::empty());
}

TEST(Weight, Order) {
  EXPECT_TRUE(weight_leq(Weight::daimon(), w("<-1@0>")));
  EXPECT_TRUE(weight_leq(w("<0@1>"), Weight::empty()));
  EXPECT_FALSE(weight_leq(Weight::empty(), w("<0@1>")));
  EXPECT_TRUE(weight_leq(w("<2@0>"), w("<1@0>")));
  EXPECT_FALSE(weight_leq(w("<1@0>"), w("<2@0>")));
  EXPECT_TRUE(weight_leq(w("<inf@0>"), w("<5@0>")));
  EXPECT_TRUE(weight_leq(w("<-1@0,4@1>"), w("<-1@0>")));
  EXPECT_FALSE(weight_leq(w("<inf@0,inf@1>"), Weight::daimon()));
}

TEST(Weight, Collapse) {
  EXPECT_EQ(collapse_weight(w("<-5@0>"), 2), w("<-2@0>"));
  EXPECT_EQ(collapse_weight(w("<3@1>"), 2), w("<inf@1>"));
  EXPECT_EQ(collapse_weight(w("<2@1>"), 2), w("<inf@1>"));
  EXPECT_EQ(collapse_weight(w("<1@0>"), 2), w("<1@0>"));
  EXPECT_EQ(collapse_weight(w("<-2@0>"), 2), w("<-2@0>"));
  EXPECT_EQ(collapse_weight(Weight::daimon(), 1), Weight::daimon());
}

TEST(Weight, DumpRoundTrip) {
  gen::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Weight a = gen::weight(rng, 3, -9, 9, 0.1);
    EXPECT_EQ(parse_weight(to_string(a)), a) << to_string(a);
  }
}

namespace {

bool fresh(const Weight& c, const Weight& w) {
  if (c.is_daimon() || w.is_daimon()) return true;
  for (const auto& [p, v] : c.entries())
    for (const auto& [q, x] : w.entries())
      if (p == q) return false;
  return true;
}

}  // namespace

// Addition is only monotone for weights on untouched priorities:
// <-1>^0 <= <> but <-1>^0 + <0>^0 is not below <0>^0.
TEST(WeightProperty, PartialOrderAndMonotoneAddition) {
  gen::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    Weight a = gen::weight(rng), b = gen::weight(rng), c = gen::weight(rng);
    EXPECT_TRUE(weight_leq(a, a));
    if (weight_leq(a, b) && weight_leq(b, c)) EXPECT_TRUE(weight_leq(a, c));
    if (weight_leq(a, b) && weight_leq(b, a)) EXPECT_EQ(a, b);
    if (weight_leq(a, b) && fresh(c, a) && fresh(c, b)) {
      EXPECT_TRUE(weight_leq(a + c, b + c));
      EXPECT_TRUE(weight_leq(c + a, c + b));
    }
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    if (fresh(b, a)) EXPECT_TRUE(weight_leq(a + b, a));
    EXPECT_TRUE(weight_leq(Weight::daimon(), a));
  }
  EXPECT_TRUE(weight_leq(Weight::single(0, -1), Weight::empty()));
  EXPECT_FALSE(weight_leq(Weight::single(0, -1) + Weight::single(0, 0), Weight::empty() + Weight::single(0, 0)));
}

TEST(WeightProperty, CollapseDecreasingIdempotentMonotone) {
  gen::Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    int B = gen::uniform(rng, 1, 3);
    Weight a = gen::weight(rng, 2, -6, 6), b = gen::weight(rng, 2, -6, 6);
    Weight ca = collapse_weight(a, B);
    EXPECT_TRUE(weight_leq(ca, a));
    EXPECT_EQ(collapse_weight(ca, B), ca);
    if (weight_leq(a, b)) EXPECT_TRUE(weight_leq(ca, collapse_weight(b, B)));
    if (!ca.is_daimon())
      for (const auto& [p, v] : ca.entries()) EXPECT_TRUE(v == kInf || (v >= -B && v <= B - 1));
  }
}
