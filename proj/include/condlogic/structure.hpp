#ifndef CONDLOGIC_STRUCTURE_HPP
#define CONDLOGIC_STRUCTURE_HPP

#include <set>
#include <string>
#include <vector>

#include "condlogic/formula.hpp"

namespace condlogic {

std::set<std::string> free_variables(const Formula& f);
std::set<std::string> free_variables(const ProbTerm& t);

// Free variables in order of first occurrence (left to right).
std::vector<std::string> free_variable_vector(const Formula& f);

bool is_closed(const Formula& f);

// Replaces every free occurrence of `variable` by the constant `constant`.
Formula substitute(const Formula& f, const std::string& variable, const std::string& constant);
ProbTerm substitute(const ProbTerm& t, const std::string& variable, const std::string& constant);

// True iff the formula contains no |-, P1 or P2 anywhere, including inside terms.
bool classical_fragment(const Formula& f);
bool classical_fragment(const ProbTerm& t);

// Predicate symbols with the arities they are used at.
std::set<std::pair<std::string, std::size_t>> predicates_used(const Formula& f);

}  // namespace condlogic

#endif  // CONDLOGIC_STRUCTURE_HPP
