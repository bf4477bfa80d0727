#ifndef CONDLOGIC_SEMANTICS_LP_HPP
#define CONDLOGIC_SEMANTICS_LP_HPP

#include <map>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/rational.hpp"

namespace condlogic {

// Variable name -> domain constant name.
using Assignment = std::map<std::string, std::string>;

// Two-valued truth of a classical-fragment formula. Implication is !p | q and
// comparisons are exact. Throws FragmentError, UnboundVariableError, or
// NonClassicalModelError when a referenced tuple is U.
bool eval2(const FiniteModel& m, const Assignment& env, const Formula& f);
inline bool eval2(const FiniteModel& m, const Formula& f) { return eval2(m, {}, f); }

// [body]_bound: fraction of tuples over domain^|bound| satisfying body.
Rational prop(const FiniteModel& m, const Assignment& env, const Formula& body,
              const std::vector<std::string>& bound);
inline Rational prop(const FiniteModel& m, const Formula& body, const std::vector<std::string>& bound) {
  return prop(m, {}, body, bound);
}

// [beta | alpha]_bound = [beta & alpha] / [alpha], and exactly 0 when [alpha] = 0.
Rational cond_prop(const FiniteModel& m, const Assignment& env, const Formula& beta, const Formula& alpha,
                   const std::vector<std::string>& bound);
inline Rational cond_prop(const FiniteModel& m, const Formula& beta, const Formula& alpha,
                          const std::vector<std::string>& bound) {
  return cond_prop(m, {}, beta, alpha, bound);
}

Rational eval_term(const FiniteModel& m, const Assignment& env, const ProbTerm& t);
inline Rational eval_term(const FiniteModel& m, const ProbTerm& t) { return eval_term(m, {}, t); }

}  // namespace condlogic

#endif  // CONDLOGIC_SEMANTICS_LP_HPP
