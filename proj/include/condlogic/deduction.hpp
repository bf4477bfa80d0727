#ifndef CONDLOGIC_DEDUCTION_HPP
#define CONDLOGIC_DEDUCTION_HPP

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/rational.hpp"

namespace condlogic {

// A knowledge-base entry: either a classical formula that holds (open
// formulas read as universally closed), or a bound on a proportion or
// conditional term.
class Fact {
 public:
  struct Holds {
    Formula formula;
  };
  struct Bound {
    ProbTerm term;
    Relation rel;
    Rational value;
  };

  // Throws std::invalid_argument unless the formula is classical.
  static Fact holds(Formula formula);
  // Throws std::invalid_argument unless term is [a]_x or [b given a]_x over
  // classical formulas and value lies in [0,1].
  static Fact bound(ProbTerm term, Relation rel, Rational value);

  bool is_holds() const { return std::holds_alternative<Holds>(data_); }
  bool is_bound() const { return std::holds_alternative<Bound>(data_); }
  const Holds& as_holds() const { return std::get<Holds>(data_); }
  const Bound& as_bound() const { return std::get<Bound>(data_); }

  // KB line form: "HOLDS <formula>" or "BOUND <term> <rel> <value>".
  std::string str() const;

  friend bool operator==(const Fact& a, const Fact& b);

 private:
  explicit Fact(std::variant<Holds, Bound> data) : data_(std::move(data)) {}
  std::variant<Holds, Bound> data_;
};

// True iff every value satisfying `a` satisfies `b`: equal formulas for Holds
// facts, interval containment within [0,1] for Bound facts on the same term.
bool entails(const Fact& a, const Fact& b);

enum class Rule {
  R1,      // {a, a -> b} |- b
  R1p,     // {[a]=1, [a -> b]=1} |- [b]=1
  R2p,     // {a -> b} |- [a -> b]=1     (R2'' is the same rule)
  R1pp,    // {[a]=1, [b|a]=1} |- [b]=1
  R3pp,    // {[a -> b]=1, [a]>0} |- [b|a]=1
  WMP,     // {[a] >= 1-e2, [a -> b] >= 1-e1} |- [b] >= 1-e1-e2
  DISJ,    // {[a] >= c} |- [a | b] >= c
};

std::string_view rule_name(Rule r);
// Accepts R1, R1', R2', R1'', R2'', R3'', WMP, DISJ (also "R1p"-style ASCII names).
std::optional<Rule> rule_from_name(std::string_view name);
const std::vector<Rule>& all_rules();

struct RuleInstance {
  Rule rule;
  std::vector<Fact> premises;
  Fact conclusion;
};

// Premises are taken in schema order. DISJ needs the target disjunction
// (a | b or b | a) since the premise does not determine it.
// Throws SchemaMismatch or SideConditionViolation; the bound-variable vector
// must cover exactly the free variables of the participating formulas.
Fact apply_rule(Rule rule, std::span<const Fact> premises, const std::optional<Formula>& disjunction = std::nullopt);

struct Derivation {
  std::vector<Fact> kb;
  Fact goal;
  std::vector<RuleInstance> steps;
};

struct DeriveOptions {
  std::size_t budget = 10;         // forward-chaining rounds, i.e. maximum chain depth
  std::size_t max_facts = 20000;   // hard cap on the closure size
};

// Breadth-first forward chaining with subsumption. Returns the chain of steps
// leading to a fact that entails the goal, or nullopt when the goal is not
// reached within the budget.
std::optional<Derivation> derive(const std::vector<Fact>& kb, const Fact& goal, const DeriveOptions& options = {});

// ---- soundness on a model ------------------------------------------------------

bool fact_true(const FiniteModel& m, const Fact& fact);

struct StepCheck {
  RuleInstance step;
  std::vector<bool> premises_true;
  bool conclusion_true = false;
  // premises all true implies conclusion true
  bool locally_sound = true;
};

struct SoundnessReport {
  std::vector<bool> kb_true;
  std::vector<StepCheck> steps;
  bool goal_true = false;

  bool all_sound() const;
};

SoundnessReport check_soundness(const Derivation& d, const FiniteModel& m);

// ---- KB text format ----------------------------------------------------------------

// One fact per line: `HOLDS <formula>` or `BOUND <term> <rel> <rational>`;
// `#` comments and blank lines ignored. Throws FormatError with the line number.
std::vector<Fact> parse_kb(std::string_view text);
// A single fact; a bare formula is accepted and read as BOUND when it compares a
// proportion term against a constant, HOLDS otherwise.
Fact parse_fact(std::string_view text);

std::string render_derivation(const Derivation& d);

}  // namespace condlogic

#endif  // CONDLOGIC_DEDUCTION_HPP
