#include <gtest/gtest.h>

#include <filesystem>

#include "gen.hpp"
#include "totcheck/driver.hpp"
#include "totcheck/surface.hpp"

using namespace totcheck;

namespace {

bool has_sugar(const Term& t) {
  if (t.kind == Term::Kind::Num || t.kind == Term::Kind::Plus || t.kind == Term::Kind::List ||
      t.kind == Term::Kind::Cons)
    return true;
  for (const auto& a : t.args)
    if (has_sugar(a)) return true;
  return false;
}

bool has_sugar(const Pattern& p) {
  if (p.kind == Pattern::Kind::Num || p.kind == Pattern::Kind::Plus || p.kind == Pattern::Kind::List ||
      p.kind == Pattern::Kind::Cons)
    return true;
  for (const auto& a : p.args)
    if (has_sugar(a)) return true;
  return false;
}

const char* kPrelude = R"(
codata unit where
data nat where Zero : unit -> nat | Succ : nat -> nat
codata prod('x,'y) where Fst : prod('x,'y) -> 'x | Snd : prod('x,'y) -> 'y
data list('x) where Nil : unit -> list('x) | Cons : prod('x, list('x)) -> list('x)
)";

}  // namespace

TEST(Parse, Examples) {
  Program p = parse_program("data nat where Zero : unit -> nat | Succ : nat -> nat");
  ASSERT_EQ(p.type_groups.size(), 1u);
  const TypeDecl& d = p.type_groups[0][0];
  EXPECT_EQ(d.name, "nat");
  EXPECT_EQ(d.polarity, Polarity::Data);
  ASSERT_EQ(d.items.size(), 2u);
  EXPECT_EQ(d.items[0].label, "Zero");
  EXPECT_EQ(d.items[1].label, "Succ");

  Program e = parse_program("");
  EXPECT_TRUE(e.type_groups.empty());
  EXPECT_TRUE(e.def_groups.empty());

  Program z = parse_program("val zeros = { Head = Zero ; Tail = zeros }");
  ASSERT_EQ(z.def_groups.size(), 1u);
  EXPECT_EQ(z.def_groups[0].clauses.size(), 1u);
  EXPECT_EQ(z.def_groups[0].names(), std::vector<std::string>{"zeros"});
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_program("val f x = .Head x"), ParseError);
  EXPECT_THROW(parse_program("val f = { Head = 1 ; Head = 2 }"), ParseError);
  EXPECT_THROW(parse_program("data where"), ParseError);
  try {
    parse_program("val f =\n  (");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().line, 2);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(Parse, Comments) {
  Program p = parse_program("-- header\nval f = f -- trailing\n");
  EXPECT_EQ(p.def_groups.size(), 1u);
}

TEST(Desugar, Examples) {
  Program p = desugar(parse_program(std::string(kPrelude) +
                                    "val f : nat -> list(nat) -> nat\n"
                                    "  | f (m+1) (n::l) = 0\n"
                                    "  | f m l = m"));
  const Clause& c = p.def_groups[0].clauses[0];
  EXPECT_EQ(format(c.pats[0]), "Succ m");
  EXPECT_EQ(c.pats[0].kind, Pattern::Kind::Ctor);
  EXPECT_EQ(c.pats[1].name, "Cons");
  ASSERT_EQ(c.pats[1].args[0].kind, Pattern::Kind::Record);
  EXPECT_EQ(c.pats[1].args[0].labels, (std::vector<std::string>{"Fst", "Snd"}));
  EXPECT_EQ(c.rhs.kind, Term::Kind::Ctor);
  EXPECT_EQ(c.rhs.name, "Zero");
  ASSERT_EQ(c.rhs.args.size(), 1u);
  EXPECT_EQ(c.rhs.args[0].kind, Term::Kind::Record);
  EXPECT_TRUE(c.rhs.args[0].args.empty());
  EXPECT_EQ(format(c.rhs), "Zero");
  EXPECT_THROW(desugar(parse_program("val f = 3")), DesugarError);
}

TEST(Format, Examples) {
  Term t = Term::ctor("Succ", Term::ctor("Zero", Term::record({})));
  EXPECT_EQ(format(t), "Succ Zero");
  Term r = Term::record({{"Head", Term::var("t1")}, {"Tail", Term::var("t2")}});
  EXPECT_EQ(format(r), "{ Head = t1 ; Tail = t2 }");
}

TEST(SurfaceProperty, RandomRoundTrip) {
  gen::Rng rng(41);
  for (int i = 0; i < 600; ++i) {
    Program a = gen::program(rng);
    std::string text = format(a);
    Program b;
    ASSERT_NO_THROW(b = parse_program(text)) << text;
    EXPECT_TRUE(b == a) << text << "\n---\n" << format(b);
    EXPECT_EQ(format(b), text);
  }
}

TEST(SurfaceProperty, CorpusRoundTripAndDesugarIdempotence) {
  size_t n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(TOTCHECK_CORPUS_DIR)) {
    Program p = parse_program(read_file(entry.path().string()));
    EXPECT_TRUE(parse_program(format(p)) == p) << entry.path();
    Program d = desugar(p);
    EXPECT_TRUE(desugar(d) == d) << entry.path();
    EXPECT_TRUE(desugar(parse_program(format(d))) == d) << entry.path();
    for (const auto& g : d.def_groups)
      for (const auto& c : g.clauses) {
        EXPECT_FALSE(has_sugar(c.rhs));
        for (const auto& q : c.pats) EXPECT_FALSE(has_sugar(q));
      }
    ++n;
  }
  EXPECT_GE(n, 14u);
}
