#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "condlogic/bundled.hpp"
#include "condlogic/error.hpp"
#include "condlogic/model.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/semantics_3v.hpp"
#include "condlogic/semantics_lp.hpp"
#include "support.hpp"

using namespace condlogic;

namespace {
const std::vector<std::string> kX = {"x"};
}

TEST_CASE("court model loads") {
  FiniteModel court = bundled_model("court");
  CHECK(court.size() == 100);
  CHECK(court.is_classical());
  CHECK(court.predicates().size() == 4);
  // 95 guilty, 94 imprisoned, 1 fined, all guilty condemned.
  CHECK(prop(court, parse("X1(x)"), kX) == Rational(95, 100));
  CHECK(prop(court, parse("X3(x)"), kX) == Rational(94, 100));
  CHECK(prop(court, parse("X2(x)"), kX) == Rational(1, 100));
  CHECK(prop(court, parse("X4(x) & !X1(x)"), kX) == Rational(0));
}

TEST_CASE("model file validation") {
  CHECK_THROWS_AS(load_model(R"({"domain": [], "predicates": {}})"), FormatError);
  CHECK_THROWS_AS(load_model(R"({"domain": ["a","a"], "predicates": {}})"), FormatError);
  CHECK_THROWS_AS(load_model(R"({"domain": ["p1"], "predicates": {"X3": {"arity": 1, "true": [["p7"]]}}})"),
                  DomainError);
  CHECK_THROWS_AS(load_model(R"({"domain": ["a"], "predicates": {"r": {"arity": 2, "true": [["a"]]}}})"), ArityError);
  CHECK_THROWS_AS(load_model(R"({"domain": ["a"], "predicates": {"p": {"arity": 1, "default": "X"}}})"), FormatError);
  CHECK_THROWS_AS(load_model(R"({"domain": ["a"], "predicates": {"p": {"arity": 1, "true": [["a"]], "false": [["a"]]}}})"),
                  FormatError);
  CHECK_THROWS_AS(load_model("not json"), FormatError);
  CHECK_THROWS_AS(load_model(R"({"predicates": {}})"), FormatError);
}

TEST_CASE("model JSON round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    ModelSpace space{{{"p", 1}, {"r", 2}, {"s", 0}}, true};
    FiniteModel m = random_model(1 + seed % 4, space, seed);
    CHECK(load_model(save_model(m)) == m);
  }
  FiniteModel court = bundled_model("court");
  CHECK(load_model(save_model(court)) == court);
}

TEST_CASE("value lookups check arity") {
  FiniteModel m({"a", "b"});
  m.declare("r", 2, Truth::U);
  m.set("r", std::vector<std::string>{"a", "b"}, Truth::T);
  const std::size_t ab[] = {0, 1};
  const std::size_t ba[] = {1, 0};
  CHECK(m.value("r", ab) == Truth::T);
  CHECK(m.value("r", ba) == Truth::U);
  const std::size_t one[] = {0};
  CHECK_THROWS_AS(m.value("r", one), ArityError);
  CHECK_THROWS_AS(m.value("nope", one), ArityError);
  CHECK_FALSE(m.is_classical());
}

TEST_CASE("restriction") {
  FiniteModel court = bundled_model("court");
  FiniteModel innocents = restrict(court, parse("!X1(x)"), "x");
  CHECK(innocents.size() == 5);
  CHECK(prop(innocents, parse("X4(x)"), kX) == Rational(0));
  FiniteModel guilty = restrict(court, parse("X1(x)"), "x");
  CHECK(guilty.size() == 95);
  CHECK(prop(guilty, parse("X3(x)"), kX) == Rational(94, 95));
  // Restricting to an everywhere-true condition is the identity.
  CHECK(restrict(court, parse("X1(x) | !X1(x)"), "x") == court);

  CHECK_THROWS_AS(restrict(court, parse("X1(x) & !X1(x)"), "x"), EmptyRestriction);
  CHECK_THROWS_AS(restrict(court, parse("X1(x) ~> X3(x)"), "x"), FragmentError);
  CHECK_THROWS_AS(restrict(court, parse("X1(y)"), "x"), UnboundVariableError);
}

TEST_CASE("restriction keeps binary tables on the subdomain") {
  FiniteModel m = load_model(R"({"domain": ["a","b","c"], "predicates": {
      "p": {"arity": 1, "true": [["a"], ["c"]]},
      "r": {"arity": 2, "true": [["a","c"], ["b","a"], ["c","c"]]}}})");
  FiniteModel sub = restrict(m, parse("p(x)"), "x");
  CHECK(sub.domain() == std::vector<std::string>{"a", "c"});
  CHECK(prop(sub, parse("r(x,y)"), {"x", "y"}) == Rational(2, 4));
}

TEST_CASE("random models") {
  ModelSpace pq = testsupport::pq_space(false);
  CHECK(random_model(3, pq, 1) == random_model(3, pq, 1));
  bool differs = false;
  for (std::uint64_t s = 2; s < 10; ++s) differs = differs || !(random_model(3, pq, s) == random_model(3, pq, 1));
  CHECK(differs);

  FiniteModel r = random_model(2, ModelSpace{{{"r", 2}}, true}, 7);
  CHECK(r.find("r")->table.size() == 4);

  // |D| = 1, one unary predicate: exactly two possible models, both reached.
  std::set<std::string> seen;
  for (std::uint64_t s = 0; s < 64; ++s) seen.insert(save_model(random_model(1, ModelSpace{{{"p", 1}}, false}, s)));
  CHECK(seen.size() == 2);
  // With U allowed all three values show up.
  std::set<Truth> values;
  for (std::uint64_t s = 0; s < 64; ++s) values.insert(random_model(1, ModelSpace{{{"p", 1}}, true}, s).find("p")->table[0]);
  CHECK(values.size() == 3);
}

TEST_CASE("enumeration counts and distinctness") {
  auto count_all = [](std::size_t n, const ModelSpace& s) {
    ModelEnumerator en(n, s, 1'000'000);
    std::set<std::string> seen;
    std::uint64_t k = 0;
    while (auto m = en.next()) {
      ++k;
      seen.insert(save_model(*m));
    }
    CHECK(seen.size() == k);
    return k;
  };
  CHECK(count_all(1, ModelSpace{{{"p", 1}}, false}) == 2);
  CHECK(count_all(2, testsupport::pq_space(false)) == 16);
  CHECK(count_all(1, ModelSpace{{{"p", 1}}, true}) == 3);
  CHECK(count_all(2, ModelSpace{{{"r", 2}, {"s", 0}}, true}) == 243);  // 3^(4+1)
  CHECK(*model_count(3, testsupport::pq_space(true)) == 729);
  CHECK_FALSE(model_count(20, ModelSpace{{{"r", 2}}, false}));
  CHECK_THROWS_AS(ModelEnumerator(4, testsupport::pq_space(false), 100), BudgetError);
}

TEST_CASE("profile enumeration agrees with labeled enumeration") {
  auto shapes = testsupport::shapes_with_oracles();
  // Sorted per-element types identify a model up to renaming of elements.
  auto multiset = [](const FiniteModel& m) {
    std::vector<std::string> types(m.size());
    for (const auto& [name, pred] : m.predicates()) {
      for (std::size_t i = 0; i < m.size(); ++i) types[i] += truth_char(pred.table[i]);
    }
    std::sort(types.begin(), types.end());
    std::string out;
    for (const auto& t : types) out += t + ",";
    return out;
  };
  auto signature = [&](const FiniteModel& m) {
    std::string sig;
    for (const auto& sh : shapes) sig += p1(m, sh.formula, kX).str() + "/" + p2(m, sh.formula, kX).str() + ";";
    return sig;
  };
  auto binomial = [](std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (std::size_t n = 1; n <= 4; ++n) {
    for (bool u : {false, true}) {
      ModelSpace s = testsupport::pq_space(u);
      std::map<std::string, std::string> labeled;
      ModelEnumerator all(n, s, 1'000'000);
      while (auto m = all.next()) {
        auto key = multiset(*m);
        auto sig = signature(*m);
        auto [it, fresh] = labeled.emplace(key, sig);
        if (!fresh) CHECK(it->second == sig);  // renaming does not change proportions
      }
      std::set<std::string> profiled;
      std::uint64_t count = 0;
      UnaryProfileEnumerator profiles(n, s);
      while (auto m = profiles.next()) {
        ++count;
        auto key = multiset(*m);
        CHECK(profiled.insert(key).second);
        REQUIRE(labeled.count(key) == 1);
        CHECK(labeled[key] == signature(*m));
      }
      const std::uint64_t types = u ? 9 : 4;
      CHECK(count == binomial(n + types - 1, types - 1));
      CHECK(profiled.size() == labeled.size());
    }
  }
}

TEST_CASE("worlds ensembles") {
  WorldsEnsemble birds = bundled_ensemble("birds_ensemble");
  CHECK(birds.worlds().size() == 10);
  CHECK(world_prob(birds, parse("forall x. bird(x) -> flies(x)")) == Rational(0));
  CHECK(world_prob(birds, parse("exists x. bird(x) & !flies(x)")) == Rational(1));

  FiniteModel one({"a"});
  one.declare("p", 1, Truth::T);
  WorldsEnsemble single({{Rational(1), one}});
  CHECK(world_prob(single, parse("forall x. p(x)")) == Rational(1));
  CHECK(world_prob(single, parse("exists x. !p(x)")) == Rational(0));

  CHECK_THROWS_AS(world_prob(birds, parse("bird(x)")), OpenFormulaError);
  CHECK_THROWS_AS(world_prob(birds, parse("P1 x. bird(x) > 0")), FragmentError);
  CHECK_THROWS_AS(WorldsEnsemble({}), FormatError);
  CHECK_THROWS_AS(WorldsEnsemble({{Rational(1, 2), one}}), FormatError);
  CHECK_THROWS_AS(WorldsEnsemble({{Rational(3, 2), one}, {Rational(-1, 2), one}}), FormatError);
  CHECK_THROWS_AS(load_ensemble(R"({"worlds": [{"weight": "1/3", "model": {"domain": ["a"], "predicates": {}}}]})"),
                  FormatError);
  WorldsEnsemble round = load_ensemble(ensemble_to_json(birds).dump());
  CHECK(round.worlds().size() == 10);
}

TEST_CASE("world_prob complementation on random ensembles") {
  std::mt19937_64 rng(31);
  auto shapes = testsupport::shapes_with_oracles();
  for (int i = 0; i < 300; ++i) {
    std::vector<World> worlds;
    std::size_t k = 1 + rng() % 4;
    for (std::size_t j = 0; j < k; ++j) {
      worlds.push_back({Rational(1, static_cast<std::int64_t>(k)), random_model(1 + rng() % 3, testsupport::pq_space(false), rng)});
    }
    WorldsEnsemble e(std::move(worlds));
    Formula phi = Formula::exists("x", shapes[rng() % shapes.size()].formula);
    CHECK(world_prob(e, phi) + world_prob(e, Formula::negation(phi)) == Rational(1));
    CHECK(world_prob(e, Formula::disjunction(phi, Formula::negation(phi))) == Rational(1));
  }
}
