#include "doctest.h"

#include <random>

#include "condlogic/bundled.hpp"
#include "condlogic/error.hpp"
#include "condlogic/model.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/semantics_lp.hpp"
#include "support.hpp"

using namespace condlogic;

namespace {
const std::vector<std::string> kX = {"x"};

FiniteModel model_ab() {
  return load_model(R"({"domain": ["a","b"], "predicates": {"p": {"arity": 1, "true": [["a"]]}}})");
}
}  // namespace

TEST_CASE("eval2") {
  FiniteModel court = bundled_model("court");
  CHECK_FALSE(eval2(court, {{"x", "p1"}}, parse("!X1(x) -> X3(x)")));
  CHECK(eval2(court, {{"x", "p50"}}, parse("!X1(x) -> X3(x)")));
  FiniteModel m = model_ab();
  CHECK(eval2(m, parse("exists x. p(x)")));
  CHECK_FALSE(eval2(m, parse("forall x. p(x)")));
  CHECK(eval2(m, {{"x", "b"}}, parse("p(x) | !p(x)")));
  CHECK(eval2(m, parse("p(@a) & !p(@b)")));
  CHECK(eval2(m, parse("[p(x)]_{x} = 1/2")));
  CHECK(eval2(m, parse("[p(x)]_{x} + [!p(x)]_{x} = 1")));
}

TEST_CASE("eval2 errors") {
  FiniteModel m = model_ab();
  CHECK_THROWS_AS(eval2(m, parse("p(x) ~> p(x)")), FragmentError);
  CHECK_THROWS_AS(eval2(m, parse("P1 x. p(x) > 0")), FragmentError);
  CHECK_THROWS_AS(eval2(m, parse("p(x)")), UnboundVariableError);
  CHECK_THROWS_AS(eval2(m, {{"x", "zz"}}, parse("p(x)")), DomainError);
  CHECK_THROWS_AS(eval2(m, parse("exists x. q(x)")), ArityError);
  FiniteModel u = load_model(R"({"domain": ["a","b"], "predicates": {"p": {"arity": 1, "default": "U", "true": [["a"]]}}})");
  CHECK(eval2(u, parse("p(@a)")));
  CHECK_THROWS_AS(eval2(u, parse("p(@b)")), NonClassicalModelError);
}

TEST_CASE("court proportions") {
  FiniteModel court = bundled_model("court");
  CHECK(prop(court, parse("!X1(x) -> X3(x)"), kX) == Rational(19, 20));
  CHECK(prop(court, parse("X3(x) | X2(x) -> X4(x)"), kX) == Rational(1));
  CHECK(cond_prop(court, parse("X3(x)"), parse("!X1(x)"), kX) == Rational(0));
  CHECK(cond_prop(court, parse("X4(x)"), parse("!X1(x)"), kX) == Rational(0));
  CHECK(cond_prop(court, parse("X3(x)"), parse("X1(x)"), kX) == Rational(94, 95));
}

TEST_CASE("conditional proportion dichotomies") {
  FiniteModel m = model_ab();
  Formula p = parse("p(x)");
  Formula none = parse("p(x) & !p(x)");
  CHECK(cond_prop(m, p, p, kX) == Rational(1));
  CHECK(cond_prop(m, none, none, kX) == Rational(0));
  Formula q = parse("!p(x)");
  CHECK(cond_prop(m, p, q, kX) + cond_prop(m, Formula::negation(p), q, kX) == Rational(1));
  CHECK(cond_prop(m, p, none, kX) + cond_prop(m, Formula::negation(p), none, kX) == Rational(0));
}

TEST_CASE("eval_term") {
  FiniteModel m = load_model(R"({"domain": ["d0","d1","d2","d3","d4","d5","d6","d7","d8","d9"],
      "predicates": {"man": {"arity": 1, "true": [["d0"],["d1"],["d2"]]},
                     "b": {"arity": 1, "true": [["d0"],["d4"],["d5"]]}}})");
  CHECK(eval_term(m, ProbTerm::constant(Rational(19, 20))) == Rational(19, 20));
  Formula f = parse("1 - [man(x)]_{x} = 7/10");
  CHECK(eval_term(m, f.left_term()) == Rational(7, 10));
  Formula a = parse("man(x)"), b = parse("b(x)");
  ProbTerm product = ProbTerm::mul(ProbTerm::conditional(b, a, kX), ProbTerm::proportion(a, kX));
  CHECK(eval_term(m, product) == prop(m, Formula::conjunction(b, a), kX));
}

TEST_CASE("free variables in terms use the environment") {
  FiniteModel m = load_model(R"({"domain": ["a","b"], "predicates": {
      "r": {"arity": 2, "true": [["a","a"], ["b","a"], ["a","b"]]}}})");
  Formula near = parse("[r(x,y)]_{x} = 1");
  CHECK(eval2(m, {{"y", "a"}}, near));
  CHECK_FALSE(eval2(m, {{"y", "b"}}, near));
  CHECK(prop(m, parse("r(x,y)"), {"x", "y"}) == Rational(3, 4));
  CHECK(eval2(m, parse("forall y. [r(x,y)]_{x} >= 1/2")));
}

TEST_CASE("proportions match the counting oracle") {
  auto shapes = testsupport::shapes_with_oracles();
  std::mt19937_64 rng(41);
  for (int i = 0; i < 500; ++i) {
    FiniteModel m = random_model(1 + rng() % 7, testsupport::pq_space(false), rng);
    for (const auto& a : shapes) {
      CHECK(prop(m, a.formula, kX) == testsupport::oracle_prop(m, a.holds));
      for (const auto& b : shapes) {
        CHECK(cond_prop(m, b.formula, a.formula, kX) == testsupport::oracle_cond(m, b.holds, a.holds));
      }
    }
  }
}

TEST_CASE("theorem 3, additivity and monotone disjunction, exhaustive |D| <= 3") {
  auto shapes = testsupport::shapes_with_oracles();
  for (std::size_t n = 1; n <= 3; ++n) {
    ModelEnumerator en(n, testsupport::pq_space(false), 1000);
    while (auto m = en.next()) {
      for (const auto& a : shapes) {
        for (const auto& b : shapes) {
          Rational pa = prop(*m, a.formula, kX);
          Rational pb = prop(*m, b.formula, kX);
          CHECK(pa + pb == prop(*m, Formula::disjunction(a.formula, b.formula), kX) +
                               prop(*m, Formula::conjunction(a.formula, b.formula), kX));
          CHECK(prop(*m, Formula::disjunction(a.formula, b.formula), kX) >= pa);
          if (pa.is_zero()) continue;
          CHECK(cond_prop(*m, b.formula, a.formula, kX) <= prop(*m, Formula::implication(a.formula, b.formula), kX));
          CHECK(prop(restrict(*m, a.formula, "x"), b.formula, kX) == cond_prop(*m, b.formula, a.formula, kX));
        }
      }
    }
  }
}
