// Shared generators and independent oracles for the test binaries.
#ifndef CONDLOGIC_TESTS_SUPPORT_HPP
#define CONDLOGIC_TESTS_SUPPORT_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/rational.hpp"
#include "condlogic/truth.hpp"

namespace testsupport {

using condlogic::Formula;
using condlogic::ProbTerm;
using condlogic::Rational;
using condlogic::Relation;
using condlogic::Term;
using condlogic::Truth;

// Random ASTs covering every node kind. Predicates: s/0, p/1, q/1, r/2.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  Formula formula(int depth) { return formula(depth, {}); }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  Term term(const std::vector<std::string>& scope) {
    std::size_t k = pick(6);
    if (k == 0) return Term::constant(pick(2) ? "a" : "b");
    if (k == 1 || scope.empty()) return Term::variable(kVars[pick(3)]);
    return Term::variable(scope[pick(scope.size())]);
  }

  std::vector<std::string> binder() {
    std::vector<std::string> out = {kVars[pick(3)]};
    if (pick(3) == 0) {
      std::string second = kVars[pick(3)];
      if (second != out[0]) out.push_back(second);
    }
    return out;
  }

  static std::vector<std::string> extend(std::vector<std::string> scope, const std::vector<std::string>& vars) {
    scope.insert(scope.end(), vars.begin(), vars.end());
    return scope;
  }

  Formula atom(const std::vector<std::string>& scope) {
    switch (pick(4)) {
      case 0: return Formula::atom("s", {});
      case 1: return Formula::atom("p", {term(scope)});
      case 2: return Formula::atom("q", {term(scope)});
      default: return Formula::atom("r", {term(scope), term(scope)});
    }
  }

  Formula formula(int depth, const std::vector<std::string>& scope) {
    if (depth <= 0) return atom(scope);
    switch (pick(10)) {
      case 0: return atom(scope);
      case 1: return Formula::negation(formula(depth - 1, scope));
      case 2: return Formula::conjunction(formula(depth - 1, scope), formula(depth - 1, scope));
      case 3: return Formula::disjunction(formula(depth - 1, scope), formula(depth - 1, scope));
      case 4: return Formula::implication(formula(depth - 1, scope), formula(depth - 1, scope));
      case 5: return Formula::conditional(formula(depth - 1, scope), formula(depth - 1, scope));
      case 6: {
        std::string v = kVars[pick(3)];
        return Formula::forall(v, formula(depth - 1, extend(scope, {v})));
      }
      case 7: {
        std::string v = kVars[pick(3)];
        return Formula::exists(v, formula(depth - 1, extend(scope, {v})));
      }
      default: {
        static const Relation rels[] = {Relation::Less, Relation::LessEq, Relation::Eq, Relation::GreaterEq,
                                        Relation::Greater};
        return Formula::compare(term(depth - 1, scope), rels[pick(5)], term(depth - 1, scope));
      }
    }
  }

  ProbTerm term(int depth, const std::vector<std::string>& scope) {
    if (depth <= 0) return constant();
    switch (pick(8)) {
      case 0: return constant();
      case 1: {
        auto b = binder();
        return ProbTerm::proportion(formula(depth - 1, extend(scope, b)), b);
      }
      case 2: {
        auto b = binder();
        auto inner = extend(scope, b);
        return ProbTerm::conditional(formula(depth - 1, inner), formula(depth - 1, inner), b);
      }
      case 3: {
        auto b = binder();
        return ProbTerm::p1(b, formula(depth - 1, extend(scope, b)));
      }
      case 4: {
        auto b = binder();
        return ProbTerm::p2(b, formula(depth - 1, extend(scope, b)));
      }
      case 5: return ProbTerm::add(term(depth - 1, scope), term(depth - 1, scope));
      case 6: return ProbTerm::sub(term(depth - 1, scope), term(depth - 1, scope));
      default: return ProbTerm::mul(term(depth - 1, scope), term(depth - 1, scope));
    }
  }

  ProbTerm constant() {
    std::int64_t num = static_cast<std::int64_t>(pick(10));
    if (pick(6) == 0) num = -num;
    return ProbTerm::constant(Rational(num, 1 + static_cast<std::int64_t>(pick(5))));
  }

  static inline const char* kVars[] = {"x", "y", "z"};
  std::mt19937_64 rng_;
};

// The nine two-predicate shapes paired with an independent boolean oracle.
struct Shape {
  Formula formula;
  std::function<bool(bool, bool)> holds;
};

inline std::vector<Shape> shapes_with_oracles() {
  auto p = Formula::atom("p", {Term::variable("x")});
  auto q = Formula::atom("q", {Term::variable("x")});
  return {
      {p, [](bool a, bool) { return a; }},
      {q, [](bool, bool b) { return b; }},
      {Formula::negation(p), [](bool a, bool) { return !a; }},
      {Formula::negation(q), [](bool, bool b) { return !b; }},
      {Formula::conjunction(p, q), [](bool a, bool b) { return a && b; }},
      {Formula::disjunction(p, q), [](bool a, bool b) { return a || b; }},
      {Formula::implication(p, q), [](bool a, bool b) { return !a || b; }},
      {Formula::implication(q, p), [](bool a, bool b) { return !b || a; }},
      {Formula::negation(Formula::conjunction(p, q)), [](bool a, bool b) { return !(a && b); }},
  };
}

// Counting oracle over the raw tables of unary p, q; no evaluator involved.
inline Rational oracle_prop(const condlogic::FiniteModel& m, const std::function<bool(bool, bool)>& f) {
  const auto& p = m.find("p")->table;
  const auto& q = m.find("q")->table;
  std::int64_t hits = 0;
  for (std::size_t i = 0; i < m.size(); ++i) hits += f(p[i] == Truth::T, q[i] == Truth::T);
  return Rational(hits, static_cast<std::int64_t>(m.size()));
}

inline Rational oracle_cond(const condlogic::FiniteModel& m, const std::function<bool(bool, bool)>& beta,
                            const std::function<bool(bool, bool)>& alpha) {
  const auto& p = m.find("p")->table;
  const auto& q = m.find("q")->table;
  std::int64_t both = 0, cond = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    bool a = p[i] == Truth::T, b = q[i] == Truth::T;
    if (alpha(a, b)) {
      ++cond;
      both += beta(a, b);
    }
  }
  return cond == 0 ? Rational(0) : Rational(both, cond);
}

inline condlogic::ModelSpace pq_space(bool allow_u) { return {{{"p", 1}, {"q", 1}}, allow_u}; }

}  // namespace testsupport

#endif  // CONDLOGIC_TESTS_SUPPORT_HPP
