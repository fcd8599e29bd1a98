#include <gtest/gtest.h>

#include "generators.hpp"
#include "irtt/levels.hpp"
#include "irtt/parse.hpp"
#include "irtt/print.hpp"
#include "irtt/typing.hpp"

using namespace irtt;

namespace {

// Direct transcription of the recursive definitions, written against the
// printed form so it shares no code with the library.
struct Measures {
  unsigned level, eq;
};

Measures measure(const TypeSymbol& t) {
  if (t.is_unit() || t.is_nat())
    return {0, 0};
  if (t.is_prod()) {
    auto a = measure(t.left()), b = measure(t.right());
    return {a.level > b.level ? a.level : b.level, a.eq > b.eq ? a.eq : b.eq};
  }
  auto body = measure(t.body());
  unsigned n = t.pow_level();
  return {n + 1 > body.level ? n + 1 : body.level, n > body.level ? n : body.level};
}

} // namespace

TEST(Level, Examples) {
  EXPECT_EQ(level(parse_type("P[3](N) * P[1](N * P[1](1))")), 4u);
  EXPECT_EQ(level(parse_type("1")), 0u);
  EXPECT_EQ(level(parse_type("P[0](P[0](N))")), 1u);
}

TEST(EqLevel, Examples) {
  EXPECT_EQ(eq_level(parse_type("N")), 0u);
  EXPECT_EQ(eq_level(parse_type("P[3](N)")), 3u);
  EXPECT_EQ(eq_level(parse_type("P[0](P[2](N))")), 3u);
  EXPECT_EQ(eq_level(parse_type("P[3](N) * P[1](N * P[1](1))")), 3u);
}

TEST(Level, AgreesWithIndependentRecursion) {
  testgen::Generator gen(1);
  for (int i = 0; i < 2000; ++i) {
    auto t = gen.type(5);
    auto m = measure(t);
    ASSERT_EQ(level(t), m.level) << print(t);
    ASSERT_EQ(eq_level(t), m.eq) << print(t);
  }
}

TEST(Level, DominatesEqLevel) {
  testgen::Generator gen(2);
  for (int i = 0; i < 2000; ++i) {
    auto t = gen.type(6);
    ASSERT_GE(level(t), eq_level(t)) << print(t);
  }
}

TEST(Level, MonotoneUnderPow) {
  testgen::Generator gen(3);
  for (int i = 0; i < 500; ++i) {
    auto a = gen.type(4);
    unsigned n = gen.below(6);
    auto p = TypeSymbol::pow(n, a);
    EXPECT_GE(eq_level(p), n);
    EXPECT_GE(level(p), n + 1);
  }
}

TEST(EqFormula, Examples) {
  auto check = [](const char* type, const char* expected) {
    auto t = parse_type(type);
    Variable x{"x", t}, y{"y", t};
    EXPECT_EQ(print(eq_formula(t, Term::var(x), Term::var(y))), expected);
  };
  check("N", "x = y");
  check("P[2](N)", "forall z:N. (z in x => z in y) /\\ (z in y => z in x)");
  check("N * N", "fst x = fst y /\\ snd x = snd y");
}

TEST(EqFormula, FreshBinderAvoidsOperands) {
  auto t = parse_type("P[0](N)");
  auto f = eq_formula(t, Term::var("z", t), Term::var("y", t));
  EXPECT_EQ(free_variables(f).size(), 2u);
  EXPECT_NE(f.variable().name, "z");
}

TEST(EqFormula, LevelIsEqLevel) {
  testgen::Generator gen(4);
  for (int i = 0; i < 3000; ++i) {
    auto t = gen.type(4);
    Variable x{"x", t}, y{"y", t};
    auto f = eq_formula(t, Term::var(x), Term::var(y));
    SortContext ctx{{"x", t}, {"y", t}};
    ASSERT_EQ(min_level(f, ctx), eq_level(t)) << print(t);
  }
}

TEST(LevelPair, OfType) {
  EXPECT_EQ(level_pair(parse_type("P[1](N)")), (LevelPair{2, 1}));
  EXPECT_EQ(max_trace({1, 3, 2}), "max(1, 3, 2) = 3");
}
