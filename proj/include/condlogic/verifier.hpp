#ifndef CONDLOGIC_VERIFIER_HPP
#define CONDLOGIC_VERIFIER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/rational.hpp"

namespace condlogic {

// ---- reproductions -------------------------------------------------------------

struct Claim {
  std::string description;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReproReport {
  std::string name;
  std::vector<Claim> claims;
  std::vector<std::string> notes;

  bool passed() const;
  std::string text() const;
  nlohmann::json json() const;
};

// example1 .. example5, approach2, theorem3, theorem4, p1p2_properties, nested_conditional
const std::vector<std::string>& repro_names();
// Throws std::invalid_argument for an unknown name.
ReproReport repro(std::string_view name);

// ---- counterexample search -----------------------------------------------------

// The nine formula shapes over two unary predicates a, b used by the property
// suites: a, b, !a, !b, a & b, a | b, a -> b, b -> a, !(a & b).
std::vector<Formula> formula_shapes(const std::string& a = "p", const std::string& b = "q",
                                    const std::string& var = "x");

struct SearchSpace {
  std::size_t max_domain = 3;
  // Unary predicates; shapes are built over the first two.
  std::vector<PredicateSignature> predicates = {{"p", 1}, {"q", 1}};
  bool allow_u = false;
};

struct SearchMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::uint64_t budget = 10'000'000;  // exhaustive: cap on models examined
};

struct SearchOutcome {
  std::string property;
  std::uint64_t examined = 0;
  std::optional<FiniteModel> counterexample;
  std::string detail;  // what fails on the counterexample
  std::optional<std::uint64_t> seed;

  std::string text() const;
  nlohmann::json json() const;
};

// Properties expected to hold: theorem3_violation, theorem4_identity, locality,
// cond_equivalence, self_conditioning, example1_dichotomy, example2_dichotomy,
// example1_repair,
// p1p2_property1 .. p1p2_property5. Properties whose failure is expected:
// paper_thm4_bound, contraposition_3v.
const std::vector<std::string>& property_names();

// Models are drawn over domain sizes 1..max_domain (all of them in exhaustive
// mode, uniformly in random mode). The first counterexample is re-checked
// before it is returned. Throws std::invalid_argument for an unknown property
// and BudgetError when exhaustive enumeration would exceed mode.budget.
SearchOutcome search_counterexample(std::string_view property, const SearchSpace& space, const SearchMode& mode);

// Violation message of `property` on one model, or nullopt when it holds.
std::optional<std::string> check_property(std::string_view property, const FiniteModel& m,
                                          const std::vector<Formula>& shapes);

// ---- transfer ----------------------------------------------------------------------

struct TransferReport {
  Rational implication;            // [alpha -> beta] on m
  Rational conditional;            // [beta given alpha] on m
  Rational restricted_implication; // [alpha -> beta] on m restricted to alpha
  Rational restricted_beta;        // [beta] on m restricted to alpha
  bool local_invariant = false;    // conditional == restricted_beta

  std::string text() const;
};

// Throws EmptyRestriction when alpha holds nowhere.
TransferReport transfer_experiment(const FiniteModel& m, const Formula& alpha, const Formula& beta,
                                   const std::string& variable);

// One line per predicate with its table, e.g. "D={d0,d1} p:TF q:UF".
std::string model_summary(const FiniteModel& m);

}  // namespace condlogic

#endif  // CONDLOGIC_VERIFIER_HPP
