#include "doctest.h"

#include <stdexcept>

#include "condlogic/formula.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/structure.hpp"
#include "support.hpp"

using namespace condlogic;

namespace {
std::set<std::string> vars(std::initializer_list<const char*> v) { return {v.begin(), v.end()}; }
}  // namespace

TEST_CASE("free variables") {
  CHECK(free_variables(parse("Bird(x)")) == vars({"x"}));
  CHECK(free_variables(parse("forall x. Bird(x)")).empty());
  CHECK(free_variables(parse("[Flies(x) & Near(x,y)]_{x} >= 9/10")) == vars({"y"}));
  CHECK(free_variables(parse("([q(x) given r(x,y)]_{x} > 0) & p(z)")) == vars({"y", "z"}));
  CHECK(free_variables(parse("P1 x,y. r(x,y) ~> p(z) > 0")) == vars({"z"}));
  CHECK(free_variables(parse("p(@a)")).empty());
  CHECK(free_variable_vector(parse("r(y,x) -> p(y)")) == std::vector<std::string>{"y", "x"});
  CHECK(is_closed(parse("exists x. p(x)")));
}

TEST_CASE("substitute replaces only free occurrences") {
  CHECK(substitute(parse("Bird(x)"), "x", "a") == parse("Bird(@a)"));
  CHECK(substitute(parse("forall x. Bird(x)"), "x", "a") == parse("forall x. Bird(x)"));
  CHECK(substitute(parse("Bird(x) & Flies(y)"), "y", "b") == parse("Bird(x) & Flies(@b)"));
  CHECK(substitute(parse("p(x) & ([q(x)]_{x} = 1)"), "x", "a") == parse("p(@a) & ([q(x)]_{x} = 1)"));
  CHECK(substitute(parse("[r(x,y)]_{x} = 1"), "y", "a") == parse("[r(x,@a)]_{x} = 1"));
}

TEST_CASE("classical fragment") {
  CHECK(classical_fragment(parse("m(x) -> !p(x)")));
  CHECK_FALSE(classical_fragment(parse("m(x) ~> !p(x)")));
  CHECK_FALSE(classical_fragment(parse("P1 x. q(x) > 1/2")));
  CHECK_FALSE(classical_fragment(parse("[p(x) | (q(x) ~> p(x))]_{x} = 1")));
  CHECK(classical_fragment(parse("[p(x) given q(x)]_{x} + 1/2 < 1")));
}

TEST_CASE("substitution properties on random formulas") {
  testsupport::AstGen gen(21);
  for (int i = 0; i < 1500; ++i) {
    Formula f = gen.formula(5);
    for (const auto& v : free_variables(f)) {
      Formula g = substitute(f, v, "c");
      auto expected = free_variables(f);
      expected.erase(v);
      CHECK(free_variables(g) == expected);
      // Idempotent once v is no longer free.
      CHECK(substitute(g, v, "c") == g);
    }
    // Substituting a variable that is not free changes nothing.
    CHECK(substitute(f, "w", "c") == f);
  }
}

TEST_CASE("term factories validate binder lists") {
  Formula p = parse("p(x)");
  CHECK_THROWS_AS(ProbTerm::proportion(p, {}), std::invalid_argument);
  CHECK_THROWS_AS(ProbTerm::proportion(p, {"x", "x"}), std::invalid_argument);
  CHECK_THROWS_AS(ProbTerm::p1({}, p), std::invalid_argument);
  CHECK_NOTHROW(ProbTerm::p2({"x", "y"}, p));
}

TEST_CASE("structural equality") {
  CHECK(parse("p(x) & q(x)") == parse("(p(x) & q(x))"));
  CHECK_FALSE(parse("p(x) & q(x)") == parse("q(x) & p(x)"));
  CHECK_FALSE(parse("[p(x)]_{x} = 1") == parse("[p(x)]_{x} >= 1"));
  CHECK_FALSE(parse("[r(x,y)]_{x,y} = 1") == parse("[r(x,y)]_{y,x} = 1"));
}
