#ifndef CONDLOGIC_SEMANTICS_3V_HPP
#define CONDLOGIC_SEMANTICS_3V_HPP

#include <optional>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/rational.hpp"
#include "condlogic/semantics_lp.hpp"
#include "condlogic/truth.hpp"

namespace condlogic {

// A rational in [0,1], or UNDEFINED when no tuple takes a defined value.
class P1Value {
 public:
  P1Value() = default;
  P1Value(Rational value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  static P1Value undefined() { return {}; }

  bool defined() const { return value_.has_value(); }
  const Rational& value() const { return *value_; }
  std::string str() const { return defined() ? value_->str() : "UNDEFINED"; }

  friend bool operator==(const P1Value&, const P1Value&) = default;

 private:
  std::optional<Rational> value_;
};

struct TruthCounts {
  std::size_t t = 0;
  std::size_t u = 0;
  std::size_t f = 0;

  std::size_t defined() const { return t + f; }
  std::size_t total() const { return t + u + f; }
};

// Strong-Kleene evaluation with the |- connective. Implication is !p | q.
// Quantifiers take min / max under F < U < T. A comparison touching an
// UNDEFINED value is U.
Truth eval3(const FiniteModel& m, const Assignment& env, const Formula& f);
inline Truth eval3(const FiniteModel& m, const Formula& f) { return eval3(m, {}, f); }

TruthCounts count3(const FiniteModel& m, const Assignment& env, const Formula& body,
                   const std::vector<std::string>& bound);

// T-cases over defined (T or F) cases.
P1Value p1(const FiniteModel& m, const Assignment& env, const Formula& body, const std::vector<std::string>& bound);
inline P1Value p1(const FiniteModel& m, const Formula& body, const std::vector<std::string>& bound) {
  return p1(m, {}, body, bound);
}

// Defined cases over all tuples.
Rational p2(const FiniteModel& m, const Assignment& env, const Formula& body, const std::vector<std::string>& bound);
inline Rational p2(const FiniteModel& m, const Formula& body, const std::vector<std::string>& bound) {
  return p2(m, {}, body, bound);
}

// Term value under 3-valued semantics. [a]_x and [b given a]_x count the
// tuples where the body is T.
P1Value eval_term3(const FiniteModel& m, const Assignment& env, const ProbTerm& t);

}  // namespace condlogic

#endif  // CONDLOGIC_SEMANTICS_3V_HPP
