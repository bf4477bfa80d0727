#include "condlogic/verifier.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "condlogic/bundled.hpp"
#include "condlogic/deduction.hpp"
#include "condlogic/error.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/semantics_3v.hpp"
#include "condlogic/semantics_lp.hpp"

namespace condlogic {

namespace {

const std::vector<std::string> kX = {"x"};
constexpr std::uint64_t kEnumCap = 10'000'000;

Formula atom1(const std::string& name, const std::string& var = "x") {
  return Formula::atom(name, {Term::variable(var)});
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string tf(bool b) { return b ? "true" : "false"; }

Claim claim(std::string description, std::string expected, std::string computed, bool pass) {
  return {std::move(description), std::move(expected), std::move(computed), pass};
}

Claim exact(std::string description, const Rational& expected, const Rational& computed) {
  return claim(std::move(description), expected.str(), computed.str(), expected == computed);
}

ModelSpace unary_space(std::initializer_list<const char*> names, bool allow_u) {
  ModelSpace s;
  for (const char* n : names) s.predicates.push_back({n, 1});
  s.allow_u = allow_u;
  return s;
}

void enumerate_upto(std::size_t max_domain, const ModelSpace& space, const std::function<void(const FiniteModel&)>& fn) {
  for (std::size_t n = 1; n <= max_domain; ++n) {
    ModelEnumerator en(n, space, kEnumCap);
    while (auto m = en.next()) fn(*m);
  }
}

void random_family(std::uint64_t seed, std::uint64_t count, std::size_t max_domain, const ModelSpace& space,
                   const std::function<void(const FiniteModel&)>& fn) {
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    std::size_t n = 1 + static_cast<std::size_t>(rng() % max_domain);
    fn(random_model(n, space, rng));
  }
}

// Violation counter for one property over a family of models.
struct Tally {
  std::string property;
  std::vector<Formula> shapes;
  std::uint64_t models = 0;
  std::uint64_t violations = 0;
  std::string first;

  void operator()(const FiniteModel& m) {
    ++models;
    if (auto bad = check_property(property, m, shapes)) {
      if (violations++ == 0) first = *bad + " on " + model_summary(m);
    }
  }

  Claim to_claim(std::string description) const {
    std::string computed = std::to_string(violations) + " violations in " + std::to_string(models) + " models";
    if (violations > 0) computed += "; first: " + first;
    return claim(std::move(description), "0 violations", computed, violations == 0);
  }
};

Tally tally_exhaustive(const std::string& property, std::size_t max_domain, const ModelSpace& space) {
  Tally t{property, formula_shapes(), 0, 0, {}};
  enumerate_upto(max_domain, space, std::ref(t));
  return t;
}

Tally tally_random(const std::string& property, std::uint64_t seed, std::uint64_t count, std::size_t max_domain,
                   const ModelSpace& space) {
  Tally t{property, formula_shapes(), 0, 0, {}};
  random_family(seed, count, max_domain, space, std::ref(t));
  return t;
}

// ---- property checks -------------------------------------------------------------

using Shapes = std::vector<Formula>;
using Check = std::function<std::optional<std::string>(const FiniteModel&, const Shapes&)>;

struct PropertyInfo {
  bool classical;  // needs U-free models
  Check check;
};

std::string pair_label(const Formula& a, const Formula& b) { return "a=" + render(a) + ", b=" + render(b); }

template <class Fn>
std::optional<std::string> over_pairs(const Shapes& shapes, Fn fn) {
  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      if (auto bad = fn(a, b)) return pair_label(a, b) + ": " + *bad;
    }
  }
  return std::nullopt;
}

template <class Fn>
std::optional<std::string> over_shapes(const Shapes& shapes, Fn fn) {
  for (const auto& a : shapes) {
    if (auto bad = fn(a)) return "a=" + render(a) + ": " + *bad;
  }
  return std::nullopt;
}

const std::map<std::string, PropertyInfo, std::less<>>& property_table() {
  static const std::map<std::string, PropertyInfo, std::less<>> table = {
      {"theorem3_violation",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            if (prop(m, a, kX).is_zero()) return std::nullopt;
            Rational c = cond_prop(m, b, a, kX);
            Rational i = prop(m, Formula::implication(a, b), kX);
            if (c > i) return "[b given a]=" + c.str() + " > [a -> b]=" + i.str();
            return std::nullopt;
          });
        }}},
      {"theorem4_identity",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            Rational pa = prop(m, a, kX);
            if (pa.is_zero()) return std::nullopt;
            Rational e1 = Rational(1) - prop(m, Formula::implication(a, b), kX);
            Rational e2 = Rational(1) - pa;
            Rational c = cond_prop(m, b, a, kX);
            Rational want = Rational(1) - e1 / (Rational(1) - e2);
            if (c != want) return "[b given a]=" + c.str() + " but 1-e1/(1-e2)=" + want.str();
            return std::nullopt;
          });
        }}},
      {"paper_thm4_bound",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            Rational pa = prop(m, a, kX);
            if (pa.is_zero()) return std::nullopt;
            Rational e1 = Rational(1) - prop(m, Formula::implication(a, b), kX);
            Rational e2 = Rational(1) - pa;
            Rational c = cond_prop(m, b, a, kX);
            Rational bound = Rational(1) - Rational(2) * e1;
            if (c < bound) {
              return "[a]=" + pa.str() + ", [a -> b]=" + (Rational(1) - e1).str() + ", [b given a]=" + c.str() +
                     " < 1-2e1=" + bound.str() + " (e2=" + e2.str() + ")";
            }
            return std::nullopt;
          });
        }}},
      {"locality",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            if (prop(m, a, kX).is_zero()) return std::nullopt;
            Rational c = cond_prop(m, b, a, kX);
            Rational r = prop(restrict(m, a, "x"), b, kX);
            if (c != r) return "[b given a]=" + c.str() + " but [b] on the restriction=" + r.str();
            return std::nullopt;
          });
        }}},
      {"cond_equivalence",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            if (prop(m, a, kX).is_zero()) return std::nullopt;
            P1Value v = p1(m, Formula::conditional(a, b), kX);
            Rational c = cond_prop(m, b, a, kX);
            if (!(v == P1Value(c))) return "P1(a ~> b)=" + v.str() + " but [b given a]=" + c.str();
            return std::nullopt;
          });
        }}},
      {"self_conditioning",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_shapes(s, [&](const Formula& a) -> std::optional<std::string> {
            P1Value v = p1(m, Formula::conditional(a, a), kX);
            if (v.defined() && v.value() != Rational(1)) return "P1(a ~> a)=" + v.str();
            return std::nullopt;
          });
        }}},
      {"example1_dichotomy",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            Rational sum = cond_prop(m, a, b, kX) + cond_prop(m, Formula::negation(a), b, kX);
            Rational want = prop(m, b, kX).is_zero() ? Rational(0) : Rational(1);
            if (sum != want) return "[a given b] + [!a given b]=" + sum.str() + ", expected " + want.str();
            return std::nullopt;
          });
        }}},
      {"example2_dichotomy",
       {true,
        [](const FiniteModel& m, const Shapes& s) {
          return over_shapes(s, [&](const Formula& a) -> std::optional<std::string> {
            Rational v = cond_prop(m, a, a, kX);
            Rational want = prop(m, a, kX).is_zero() ? Rational(0) : Rational(1);
            if (v != want) return "[a given a]=" + v.str() + ", expected " + want.str();
            return std::nullopt;
          });
        }}},
      {"example1_repair",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            P1Value x = p1(m, Formula::conditional(b, a), kX);
            P1Value y = p1(m, Formula::conditional(b, Formula::negation(a)), kX);
            if (x.defined() && y.defined() && x.value() + y.value() != Rational(1)) {
              return "P1(b ~> a) + P1(b ~> !a)=" + (x.value() + y.value()).str();
            }
            return std::nullopt;
          });
        }}},
      {"p1p2_property1",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_shapes(s, [&](const Formula& a) -> std::optional<std::string> {
            TruthCounts c = count3(m, {}, a, kX);
            if (c.t != c.total()) return std::nullopt;
            P1Value v = p1(m, a, kX);
            Rational w = p2(m, a, kX);
            if (!(v == P1Value(Rational(1))) || w != Rational(1)) {
              return "a is T everywhere but P1=" + v.str() + ", P2=" + w.str();
            }
            return std::nullopt;
          });
        }}},
      {"p1p2_property2",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_shapes(s, [&](const Formula& a) -> std::optional<std::string> {
            P1Value v = p1(m, a, kX);
            Rational w = p2(m, a, kX);
            if (v.defined() && v.value() < Rational(0)) return "P1=" + v.str() + " < 0";
            if (w < Rational(0) || w > Rational(1)) return "P2=" + w.str() + " outside [0,1]";
            return std::nullopt;
          });
        }}},
      {"p1p2_property3",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_shapes(s, [&](const Formula& a) -> std::optional<std::string> {
            Formula na = Formula::negation(a);
            P1Value x = p1(m, a, kX);
            P1Value y = p1(m, na, kX);
            if (x.defined() && y.defined() && x.value() + y.value() != Rational(1)) {
              return "P1(a) + P1(!a)=" + (x.value() + y.value()).str();
            }
            if (p2(m, a, kX) != p2(m, na, kX)) return "P2(a)=" + p2(m, a, kX).str() + " != P2(!a)=" + p2(m, na, kX).str();
            return std::nullopt;
          });
        }}},
      {"p1p2_property4",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            P1Value x = p1(m, a, kX);
            P1Value y = p1(m, b, kX);
            P1Value z = p1(m, Formula::disjunction(a, b), kX);
            if (!x.defined() || !y.defined() || !z.defined()) return std::nullopt;
            if (x.value() + y.value() < z.value()) {
              return "P1(a)=" + x.str() + " + P1(b)=" + y.str() + " < P1(a | b)=" + z.str();
            }
            return std::nullopt;
          });
        }}},
      {"p1p2_property5",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            P1Value x = p1(m, a, kX);
            P1Value y = p1(m, b, kX);
            P1Value z = p1(m, Formula::disjunction(a, b), kX);
            P1Value w = p1(m, Formula::conjunction(a, b), kX);
            if (!x.defined() || !y.defined() || !z.defined() || !w.defined()) return std::nullopt;
            if (!w.value().is_zero()) return std::nullopt;
            if (x.value() + y.value() != z.value()) {
              return "P1(a & b)=0 but P1(a)=" + x.str() + " + P1(b)=" + y.str() + " != P1(a | b)=" + z.str();
            }
            return std::nullopt;
          });
        }}},
      {"contraposition_3v",
       {false,
        [](const FiniteModel& m, const Shapes& s) {
          return over_pairs(s, [&](const Formula& a, const Formula& b) -> std::optional<std::string> {
            P1Value x = p1(m, Formula::conditional(a, b), kX);
            P1Value y = p1(m, Formula::conditional(Formula::negation(b), Formula::negation(a)), kX);
            if (!(x == y)) return "P1(a ~> b)=" + x.str() + " but P1(!b ~> !a)=" + y.str();
            return std::nullopt;
          });
        }}},
  };
  return table;
}

const PropertyInfo& property_info(std::string_view name) {
  const auto& table = property_table();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown property: " + std::string(name));
  return it->second;
}

// ---- reproductions ---------------------------------------------------------------------

FiniteModel unary_model(const std::vector<std::string>& domain,
                        std::initializer_list<std::pair<const char*, std::string_view>> tables) {
  FiniteModel m(domain);
  for (const auto& [name, values] : tables) {
    m.declare(name, 1);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const std::size_t idx[1] = {i};
      m.set(name, idx, *truth_from_string(std::string(1, values[i])));
    }
  }
  return m;
}

ReproReport repro_example1() {
  ReproReport r{"example1", {}, {}};
  auto classical = unary_space({"p", "q"}, false);
  r.claims.push_back(tally_exhaustive("example1_dichotomy", 4, classical)
                         .to_claim("[a given b] + [!a given b] is 1 when [b] > 0 and 0 when [b] = 0 "
                                   "(all 2-valued models |D| <= 4, 9x9 shapes)"));
  const Formula p = atom1("p");
  const Formula q = atom1("q");
  auto zero = unary_model({"a", "b"}, {{"p", "TF"}, {"q", "FF"}});
  r.claims.push_back(exact("[p given q] + [!p given q] with [q] = 0", Rational(0),
                           cond_prop(zero, p, q, kX) + cond_prop(zero, Formula::negation(p), q, kX)));
  auto pos = unary_model({"a", "b"}, {{"p", "TF"}, {"q", "FT"}});
  r.claims.push_back(exact("[p given q] + [!p given q] with [q] = 1/2", Rational(1),
                           cond_prop(pos, p, q, kX) + cond_prop(pos, Formula::negation(p), q, kX)));
  r.claims.push_back(tally_exhaustive("example1_repair", 3, unary_space({"p", "q"}, true))
                         .to_claim("P1(b ~> a) + P1(b ~> !a) = 1 whenever both are defined "
                                   "(all 3-valued models |D| <= 3)"));
  r.notes.push_back("The sum is 0 or 1 depending only on whether the condition has positive proportion.");
  return r;
}

ReproReport repro_example2() {
  ReproReport r{"example2", {}, {}};
  r.claims.push_back(tally_exhaustive("example2_dichotomy", 4, unary_space({"p", "q"}, false))
                         .to_claim("[a given a] is 1 when [a] > 0 and 0 otherwise (all 2-valued models |D| <= 4)"));
  const Formula p = atom1("p");
  auto none = unary_model({"a", "b"}, {{"p", "FF"}, {"q", "FF"}});
  r.claims.push_back(exact("[p given p] with [p] = 0", Rational(0), cond_prop(none, p, p, kX)));
  r.claims.push_back(tally_exhaustive("self_conditioning", 3, unary_space({"p", "q"}, true))
                         .to_claim("P1(a ~> a) = 1 whenever defined (all 3-valued models |D| <= 3)"));
  P1Value undef = p1(none, Formula::conditional(p, p), kX);
  r.claims.push_back(claim("P1(p ~> p) with p false everywhere", "UNDEFINED", undef.str(), !undef.defined()));
  return r;
}

ReproReport repro_example3() {
  ReproReport r{"example3", {}, {}};
  const Formula c1 = parse("[man(x) -> fertile(x)]_{x} <= 9/10");
  const Formula c2_strict = parse("[man(x) & fertile(x) -> father(x)]_{x} < 8/10");
  const Formula c2_weak = parse("[man(x) & fertile(x) -> father(x)]_{x} <= 8/10");
  const Formula c3 = parse("forall x. father(x) -> man(x)");
  const Formula women = Formula::negation(atom1("man"));

  std::optional<Rational> best_strict, best_weak;
  std::optional<FiniteModel> arg_strict, arg_weak;
  std::uint64_t profiles = 0;
  UnaryProfileEnumerator en(10, unary_space({"man", "fertile", "father"}, false));
  while (auto m = en.next()) {
    ++profiles;
    if (!eval2(*m, c1) || !eval2(*m, c3)) continue;
    Rational w = prop(*m, women, kX);
    if (eval2(*m, c2_strict) && (!best_strict || w > *best_strict)) {
      best_strict = w;
      arg_strict = *m;
    }
    if (eval2(*m, c2_weak) && (!best_weak || w > *best_weak)) {
      best_weak = w;
      arg_weak = *m;
    }
  }
  const Rational limit(7, 10);
  r.claims.push_back(claim("models examined at |D| = 10, up to renaming of elements", "19448",
                           std::to_string(profiles), profiles == 19448));
  r.claims.push_back(claim("max [!man] under the three constraints", "<= 7/10",
                           best_strict ? best_strict->str() : "none", best_strict && *best_strict <= limit));
  r.claims.push_back(claim("bound 7/10 attained with [man & fertile -> father] < 8/10", "no",
                           yes_no(best_strict && *best_strict == limit), !(best_strict && *best_strict == limit)));
  r.claims.push_back(claim("bound 7/10 attained with [man & fertile -> father] <= 8/10", "yes",
                           yes_no(best_weak && *best_weak == limit), best_weak && *best_weak == limit));
  if (arg_strict) r.notes.push_back("maximizer under < 8/10: " + model_summary(*arg_strict));
  if (arg_weak) r.notes.push_back("maximizer under <= 8/10: " + model_summary(*arg_weak));
  return r;
}

ReproReport repro_example4() {
  ReproReport r{"example4", {}, {}};
  const Formula s1 = parse("forall x. m(x) -> !p(x)");
  const Formula s2 = parse("forall x. !(m(x) -> p(x))");
  const Formula not_m = Formula::negation(atom1("m"));
  std::uint64_t satisfying = 0, bad = 0;
  enumerate_upto(4, unary_space({"m", "p"}, false), [&](const FiniteModel& m) {
    if (!eval2(m, s1) || !eval2(m, s2)) return;
    ++satisfying;
    if (!prop(m, not_m, kX).is_zero()) ++bad;
  });
  r.claims.push_back(claim("2-valued models |D| <= 4 satisfying both sentences (one per size)", "4",
                           std::to_string(satisfying), satisfying == 4));
  r.claims.push_back(claim("of those, models with [!m] > 0", "0", std::to_string(bad), bad == 0));

  FiniteModel w = bundled_model("example4_witness");
  P1Value a = p1(w, parse("m(x) ~> !p(x)"), kX);
  P1Value b = p1(w, parse("!(m(x) ~> p(x))"), kX);
  r.claims.push_back(claim("witness: P1 x. (m(x) ~> !p(x))", "1", a.str(), a == P1Value(Rational(1))));
  r.claims.push_back(claim("witness: P1 x. !(m(x) ~> p(x))", "1", b.str(), b == P1Value(Rational(1))));
  Rational women = prop(w, not_m, kX);
  r.claims.push_back(claim("witness: [!m(x)]_{x}", "> 0", women.str(), women > Rational(0)));
  r.notes.push_back("3-valued reading: each implication m -> ... is replaced by m ~> ... under P1 = 1.");
  return r;
}

ReproReport repro_example5() {
  ReproReport r{"example5", {}, {}};
  FiniteModel court = bundled_model("court");
  r.claims.push_back(exact("[!X1(x) -> X3(x)]_{x} on the court model", Rational(19, 20),
                           prop(court, parse("!X1(x) -> X3(x)"), kX)));
  r.claims.push_back(exact("[X3(x) | X2(x) -> X4(x)]_{x} on the court model", Rational(1),
                           prop(court, parse("X3(x) | X2(x) -> X4(x)"), kX)));
  r.claims.push_back(exact("[X4(x) given !X1(x)]_{x} on the court model", Rational(0),
                           cond_prop(court, parse("X4(x)"), parse("!X1(x)"), kX)));

  const std::vector<Fact> kb = parse_kb(
      "BOUND [!X1(x)]_{x} = 1\n"
      "BOUND [!X1(x) -> X3(x)]_{x} >= 19/20\n"
      "BOUND [X3(x) | X2(x) -> X4(x)]_{x} = 1\n");
  const Fact goal = parse_fact("BOUND [X4(x)]_{x} >= 19/20");
  auto d = derive(kb, goal);
  std::string chain = "not found";
  if (d) {
    chain.clear();
    for (const auto& s : d->steps) chain += (chain.empty() ? "" : ", ") + std::string(rule_name(s.rule));
  }
  r.claims.push_back(claim("derivation of [X4(x)]_{x} >= 19/20 from the KB", "<= 4 steps", chain,
                           d && d->steps.size() <= 4 && !d->steps.empty() && entails(d->steps.back().conclusion, goal)));

  r.claims.push_back(claim("KB fact [!X1(x)]_{x} = 1 on the court model", "false", tf(fact_true(court, kb[0])),
                           !fact_true(court, kb[0])));
  FiniteModel innocents = restrict(court, parse("!X1(x)"), "x");
  r.claims.push_back(claim("restricted model size", "5", std::to_string(innocents.size()), innocents.size() == 5));
  if (d) {
    SoundnessReport s = check_soundness(*d, innocents);
    r.claims.push_back(claim("transferred premise [!X1(x) -> X3(x)]_{x} >= 19/20 on the restriction", "false",
                             tf(s.kb_true[1]), !s.kb_true[1]));
    r.claims.push_back(claim("goal [X4(x)]_{x} >= 19/20 on the restriction", "false", tf(s.goal_true), !s.goal_true));
    r.claims.push_back(claim("every step locally sound on the restriction", "yes", yes_no(s.all_sound()), s.all_sound()));
  }
  r.claims.push_back(exact("[X4(x)]_{x} on the restriction", Rational(0), prop(innocents, atom1("X4"), kX)));

  TransferReport t = transfer_experiment(court, parse("!X1(x)"), atom1("X3"), "x");
  std::string quad = t.implication.str() + ", " + t.conditional.str() + ", " + t.restricted_implication.str() + ", " +
                     t.restricted_beta.str();
  r.claims.push_back(claim("transfer of a=!X1, b=X3: ([a -> b], [b given a], [a -> b] and [b] on the restriction)",
                           "19/20, 0, 0, 0", quad, quad == "19/20, 0, 0, 0" && t.local_invariant));
  if (d) r.notes.push_back("derivation:\n" + render_derivation(*d));
  return r;
}

ReproReport repro_approach2() {
  ReproReport r{"approach2", {}, {}};
  WorldsEnsemble e = bundled_ensemble("birds_ensemble");
  const Formula some = parse("exists x. bird(x) & !flies(x)");
  const Formula all = parse("forall x. bird(x) -> flies(x)");
  r.claims.push_back(exact("world_prob(exists x. bird(x) & !flies(x))", Rational(1), world_prob(e, some)));
  std::size_t nine_tenths = 0;
  for (const auto& w : e.worlds()) {
    if (cond_prop(w.model, atom1("flies"), atom1("bird"), kX) == Rational(9, 10)) ++nine_tenths;
  }
  r.claims.push_back(claim("worlds with [flies(x) given bird(x)]_{x} = 9/10",
                           std::to_string(e.worlds().size()) + " of " + std::to_string(e.worlds().size()),
                           std::to_string(nine_tenths) + " of " + std::to_string(e.worlds().size()),
                           nine_tenths == e.worlds().size()));
  r.claims.push_back(exact("world_prob(forall x. bird(x) -> flies(x))", Rational(0), world_prob(e, all)));
  r.claims.push_back(exact("world_prob(forall ...) + world_prob(exists ... & !flies)", Rational(1),
                           world_prob(e, all) + world_prob(e, some)));

  // Complementation on random ensembles.
  std::mt19937_64 rng(2);
  const auto shapes = formula_shapes();
  const ModelSpace space = unary_space({"p", "q"}, false);
  std::uint64_t bad = 0;
  const std::uint64_t ensembles = 1000;
  for (std::uint64_t i = 0; i < ensembles; ++i) {
    std::size_t k = 1 + rng() % 4;
    std::vector<std::int64_t> raw;
    std::int64_t total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      raw.push_back(1 + static_cast<std::int64_t>(rng() % 5));
      total += raw.back();
    }
    std::vector<World> worlds;
    for (std::size_t j = 0; j < k; ++j) {
      worlds.push_back({Rational(raw[j], total), random_model(1 + rng() % 3, space, rng)});
    }
    WorldsEnsemble ens(std::move(worlds));
    const Formula& body = shapes[rng() % shapes.size()];
    Formula phi = rng() % 2 ? Formula::forall("x", body) : Formula::exists("x", body);
    if (world_prob(ens, phi) + world_prob(ens, Formula::negation(phi)) != Rational(1)) ++bad;
  }
  r.claims.push_back(claim("world_prob(phi) + world_prob(!phi) = 1 on 1000 random ensembles", "0 violations",
                           std::to_string(bad) + " violations", bad == 0));
  r.notes.push_back("Since the two sentences are complementary their probabilities cannot both exceed 9/10.");
  return r;
}

ReproReport repro_theorem3() {
  ReproReport r{"theorem3", {}, {}};
  auto space = unary_space({"p", "q"}, false);
  r.claims.push_back(tally_exhaustive("theorem3_violation", 3, space)
                         .to_claim("[b given a] <= [a -> b] when [a] > 0 (all 2-valued models |D| <= 3, 9x9 shapes)"));
  r.claims.push_back(tally_random("theorem3_violation", 3, 10000, 8, space)
                         .to_claim("same, 10000 random models with |D| in 1..8 (seed 3)"));
  return r;
}

ReproReport repro_theorem4() {
  ReproReport r{"theorem4", {}, {}};
  auto space = unary_space({"p", "q"}, false);
  r.claims.push_back(tally_exhaustive("theorem4_identity", 4, space)
                         .to_claim("[b given a] = 1 - e1/(1-e2) when [a] > 0 (all 2-valued models |D| <= 4)"));
  r.claims.push_back(tally_random("theorem4_identity", 4, 10000, 8, space)
                         .to_claim("same, 10000 random models with |D| in 1..8 (seed 4)"));

  // Stated bound 1 - 2 e1, split by e2.
  const auto shapes = formula_shapes();
  std::uint64_t small_cases = 0, small_bad = 0, large_bad = 0;
  std::optional<Rational> min_bad_e2;
  enumerate_upto(5, space, [&](const FiniteModel& m) {
    for (const auto& a : shapes) {
      Rational pa = prop(m, a, kX);
      if (pa.is_zero()) continue;
      for (const auto& b : shapes) {
        Rational e1 = Rational(1) - prop(m, Formula::implication(a, b), kX);
        Rational e2 = Rational(1) - pa;
        bool ok = cond_prop(m, b, a, kX) >= Rational(1) - Rational(2) * e1;
        if (e2 <= Rational(1, 2)) {
          ++small_cases;
          if (!ok) ++small_bad;
        } else if (!ok) {
          ++large_bad;
          if (!min_bad_e2 || e2 < *min_bad_e2) min_bad_e2 = e2;
        }
      }
    }
  });
  r.claims.push_back(claim("bound [b given a] >= 1 - 2 e1 when e2 <= 1/2 (all models |D| <= 5)", "0 violations",
                           std::to_string(small_bad) + " violations in " + std::to_string(small_cases) + " cases",
                           small_bad == 0));
  r.claims.push_back(claim("smallest e2 among bound violations", "> 1/2", min_bad_e2 ? min_bad_e2->str() : "none",
                           min_bad_e2 && *min_bad_e2 > Rational(1, 2)));

  auto m = unary_model({"d0", "d1", "d2", "d3", "d4"}, {{"p", "TTFFF"}, {"q", "TFFFF"}});
  const Formula p = atom1("p"), q = atom1("q");
  r.claims.push_back(exact("example: [p]", Rational(2, 5), prop(m, p, kX)));
  r.claims.push_back(exact("example: [p -> q]", Rational(4, 5), prop(m, Formula::implication(p, q), kX)));
  Rational c = cond_prop(m, q, p, kX);
  r.claims.push_back(claim("example: [q given p] against 1 - 2 e1 = 3/5", "1/2 < 3/5", c.str(), c == Rational(1, 2)));

  SearchSpace ss;
  ss.max_domain = 5;
  SearchOutcome found = search_counterexample("paper_thm4_bound", ss, {});
  r.claims.push_back(claim("exhaustive search |D| <= 5 for a violation of the stated bound", "found",
                           found.counterexample ? "found: " + found.detail : "none", found.counterexample.has_value()));
  r.notes.push_back("The stated bound holds exactly when e2 <= 1/2; beyond that the identity gives less.");
  return r;
}

ReproReport repro_p1p2() {
  ReproReport r{"p1p2_properties", {}, {}};
  auto three = unary_space({"p", "q"}, true);
  auto two = unary_space({"p", "q"}, false);
  const std::pair<const char*, const char*> props[] = {
      {"p1p2_property1", "1: a T everywhere gives P1 = 1 and P2 = 1"},
      {"p1p2_property2", "2: P1 >= 0 when defined, 0 <= P2 <= 1"},
      {"p1p2_property3", "3: P1(a) + P1(!a) = 1 when defined, P2(a) = P2(!a)"},
      {"p1p2_property4", "4: P1(a) + P1(b) >= P1(a | b) when defined"},
      {"p1p2_property5", "5: P1(a & b) = 0 gives P1(a) + P1(b) = P1(a | b) when defined"},
  };
  for (const auto& [id, text] : props) {
    r.claims.push_back(tally_exhaustive(id, 2, three).to_claim(std::string("property ") + text + " (all 3-valued models |D| <= 2)"));
    r.claims.push_back(tally_random(id, 1, 1000, 5, three)
                           .to_claim(std::string("property ") + text + " (1000 random models, |D| in 1..5, seed 1)"));
  }
  r.claims.push_back(tally_exhaustive("cond_equivalence", 3, two)
                         .to_claim("P1(a ~> b) = [b given a] when [a] > 0 (all 2-valued models |D| <= 3)"));
  r.claims.push_back(tally_random("cond_equivalence", 5, 1000, 8, two)
                         .to_claim("same, 1000 random 2-valued models with |D| in 1..8 (seed 5)"));
  r.claims.push_back(tally_random("self_conditioning", 6, 1000, 5, three)
                         .to_claim("P1(a ~> a) = 1 whenever defined (1000 random 3-valued models, seed 6)"));
  SearchSpace ss;
  ss.allow_u = true;
  SearchOutcome contra = search_counterexample("contraposition_3v", ss, {});
  r.claims.push_back(claim("witness with P1(a ~> b) != P1(!b ~> !a) (exhaustive |D| <= 3)", "found",
                           contra.counterexample ? "found: " + contra.detail : "none", contra.counterexample.has_value()));
  return r;
}

ReproReport repro_nested() {
  ReproReport r{"nested_conditional", {}, {}};
  const std::string text = "P1 x. (p(x) ~> q(x)) ~> (v(x) ~> z(x)) > 9/10";
  Formula f = parse(text);
  r.claims.push_back(claim("canonical rendering round-trips", "parse(render(f)) = f", render(f), parse(render(f)) == f));
  bool shape_ok = f.kind() == Formula::Kind::Compare && f.left_term().kind() == ProbTerm::Kind::P1 &&
                  f.left_term().body().kind() == Formula::Kind::Cond;
  r.claims.push_back(claim("parsed as P1 over a nested ~> compared with 9/10", "yes", yes_no(shape_ok), shape_ok));
  FiniteModel m = bundled_model("nested_witness");
  if (shape_ok) {
    P1Value v = p1(m, f.left_term().body(), kX);
    r.claims.push_back(claim("P1 value on the witness model", "10/11", v.str(), v == P1Value(Rational(10, 11))));
    Rational w = p2(m, f.left_term().body(), kX);
    r.claims.push_back(exact("P2 value on the witness model", Rational(11, 14), w));
  }
  Truth t = eval3(m, f);
  r.claims.push_back(claim("sentence value on the witness model", "T", std::string(1, truth_char(t)), t == Truth::T));
  return r;
}

}  // namespace

// ---- public API ---------------------------------------------------------------------------

bool ReproReport::passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.pass; });
}

std::string ReproReport::text() const {
  std::ostringstream os;
  os << "== " << name << " ==\n";
  for (const auto& c : claims) {
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.description << "\n"
       << "        expected: " << c.expected << "\n"
       << "        computed: " << c.computed << "\n";
  }
  for (const auto& n : notes) os << "  note: " << n << "\n";
  os << name << ": " << (passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

nlohmann::json ReproReport::json() const {
  nlohmann::json j;
  j["name"] = name;
  j["claims"] = nlohmann::json::array();
  for (const auto& c : claims) {
    j["claims"].push_back({{"claim", c.description}, {"expected", c.expected}, {"computed", c.computed}, {"pass", c.pass}});
  }
  j["notes"] = notes;
  j["verdict"] = passed() ? "PASS" : "FAIL";
  return j;
}

const std::vector<std::string>& repro_names() {
  static const std::vector<std::string> names = {"example1", "example2", "example3", "example4",
                                                 "example5", "approach2", "theorem3", "theorem4",
                                                 "p1p2_properties", "nested_conditional"};
  return names;
}

ReproReport repro(std::string_view name) {
  if (name == "example1") return repro_example1();
  if (name == "example2") return repro_example2();
  if (name == "example3") return repro_example3();
  if (name == "example4") return repro_example4();
  if (name == "example5") return repro_example5();
  if (name == "approach2") return repro_approach2();
  if (name == "theorem3") return repro_theorem3();
  if (name == "theorem4") return repro_theorem4();
  if (name == "p1p2_properties") return repro_p1p2();
  if (name == "nested_conditional") return repro_nested();
  throw std::invalid_argument("unknown reproduction: " + std::string(name));
}

std::vector<Formula> formula_shapes(const std::string& a, const std::string& b, const std::string& var) {
  Formula p = atom1(a, var);
  Formula q = atom1(b, var);
  return {p,
          q,
          Formula::negation(p),
          Formula::negation(q),
          Formula::conjunction(p, q),
          Formula::disjunction(p, q),
          Formula::implication(p, q),
          Formula::implication(q, p),
          Formula::negation(Formula::conjunction(p, q))};
}

const std::vector<std::string>& property_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, info] : property_table()) out.push_back(name);
    return out;
  }();
  return names;
}

std::optional<std::string> check_property(std::string_view property, const FiniteModel& m, const Shapes& shapes) {
  const PropertyInfo& info = property_info(property);
  if (info.classical && !m.is_classical()) return std::nullopt;
  return info.check(m, shapes);
}

SearchOutcome search_counterexample(std::string_view property, const SearchSpace& space, const SearchMode& mode) {
  const PropertyInfo& info = property_info(property);
  if (info.classical && space.allow_u) {
    throw std::invalid_argument("property " + std::string(property) + " is stated for 2-valued models");
  }
  if (space.max_domain == 0) throw std::invalid_argument("max domain must be at least 1");
  std::vector<std::string> unary;
  for (const auto& p : space.predicates) {
    if (p.arity == 1) unary.push_back(p.name);
  }
  if (unary.empty()) throw std::invalid_argument("search needs at least one unary predicate");
  const Shapes shapes = formula_shapes(unary[0], unary.size() > 1 ? unary[1] : unary[0]);
  const ModelSpace ms{space.predicates, space.allow_u};

  SearchOutcome out;
  out.property = std::string(property);
  auto consider = [&](const FiniteModel& m) {
    ++out.examined;
    auto bad = info.check(m, shapes);
    if (!bad) return false;
    // Re-check before reporting.
    if (!check_property(property, m, shapes)) return false;
    out.counterexample = m;
    out.detail = *bad;
    return true;
  };

  if (mode.exhaustive) {
    std::uint64_t total = 0;
    for (std::size_t n = 1; n <= space.max_domain; ++n) {
      auto c = model_count(n, ms);
      if (!c || *c > mode.budget - std::min(total, mode.budget)) {
        throw BudgetError("exhaustive search over |D| <= " + std::to_string(space.max_domain) +
                          " exceeds the budget of " + std::to_string(mode.budget) + " models");
      }
      total += *c;
    }
    for (std::size_t n = 1; n <= space.max_domain; ++n) {
      ModelEnumerator en(n, ms, mode.budget);
      while (auto m = en.next()) {
        if (consider(*m)) return out;
      }
    }
  } else {
    out.seed = mode.seed;
    std::mt19937_64 rng(mode.seed);
    for (std::uint64_t i = 0; i < mode.trials; ++i) {
      std::size_t n = 1 + static_cast<std::size_t>(rng() % space.max_domain);
      if (consider(random_model(n, ms, rng))) return out;
    }
  }
  return out;
}

std::string SearchOutcome::text() const {
  std::ostringstream os;
  os << "property: " << property << "\n";
  os << "models examined: " << examined << "\n";
  if (seed) os << "seed: " << *seed << "\n";
  if (counterexample) {
    os << "counterexample: " << model_summary(*counterexample) << "\n";
    os << "  " << detail << "\n";
  } else {
    os << "counterexample: none\n";
  }
  return os.str();
}

nlohmann::json SearchOutcome::json() const {
  nlohmann::json j;
  j["property"] = property;
  j["examined"] = examined;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  if (counterexample) {
    j["counterexample"] = model_to_json(*counterexample);
    j["detail"] = detail;
  } else {
    j["counterexample"] = nullptr;
  }
  return j;
}

std::string TransferReport::text() const {
  std::ostringstream os;
  os << "[a -> b] on model:            " << implication << "\n"
     << "[b given a] on model:         " << conditional << "\n"
     << "[a -> b] on restriction to a: " << restricted_implication << "\n"
     << "[b] on restriction to a:      " << restricted_beta << "\n"
     << "conditional preserved:        " << (local_invariant ? "yes" : "no") << "\n";
  return os.str();
}

TransferReport transfer_experiment(const FiniteModel& m, const Formula& alpha, const Formula& beta,
                                   const std::string& variable) {
  const std::vector<std::string> bound = {variable};
  FiniteModel r = restrict(m, alpha, variable);
  TransferReport t;
  t.implication = prop(m, Formula::implication(alpha, beta), bound);
  t.conditional = cond_prop(m, beta, alpha, bound);
  t.restricted_implication = prop(r, Formula::implication(alpha, beta), bound);
  t.restricted_beta = prop(r, beta, bound);
  t.local_invariant = t.conditional == t.restricted_beta;
  return t;
}

std::string model_summary(const FiniteModel& m) {
  std::string out = "D={";
  for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + m.domain()[i];
  out += "}";
  for (const auto& [name, pred] : m.predicates()) {
    out += " " + name + ":";
    for (Truth t : pred.table) out += truth_char(t);
  }
  return out;
}

}  // namespace condlogic
