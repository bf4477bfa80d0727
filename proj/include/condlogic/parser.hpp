#ifndef CONDLOGIC_PARSER_HPP
#define CONDLOGIC_PARSER_HPP

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "condlogic/error.hpp"
#include "condlogic/formula.hpp"

namespace condlogic {

struct ParseOptions {
  // Unbound identifiers with these names become constants instead of free
  // variables. `@name` is always a constant.
  std::set<std::string> constants;
};

// Concrete syntax, tightest first:
//   !   &   |   ->  (right)   ~>  (right)   comparisons (< <= = >= >)
// Terms: rationals (a/b, decimals), [body]_{x,y}, [body given cond]_{x},
// P1 x,y. body, P2 x. body, with + - * between terms.
// Quantifiers `forall x.` / `exists x.` extend as far right as possible.
Formula parse(std::string_view text, const ParseOptions& options = {});

using Expression = std::variant<Formula, ProbTerm>;

// Accepts a formula or a bare probability term such as `P1 x. p(x)`.
Expression parse_expression(std::string_view text, const ParseOptions& options = {});

// Like parse, but throws UnboundVariableError if the result has free variables.
Formula parse_sentence(std::string_view text, const ParseOptions& options = {});

// One formula per line; `#` starts a comment; blank lines are skipped.
std::vector<Formula> parse_formula_file(std::string_view text, const ParseOptions& options = {});

// Canonical text; parse(render(f)) == f.
std::string render(const Formula& f);
std::string render(const ProbTerm& t);

// Turns free variables whose names are in `constants` into constants.
Formula resolve_constants(const Formula& f, const std::set<std::string>& constants);

}  // namespace condlogic

#endif  // CONDLOGIC_PARSER_HPP
