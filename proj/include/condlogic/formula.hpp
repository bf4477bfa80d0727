#ifndef CONDLOGIC_FORMULA_HPP
#define CONDLOGIC_FORMULA_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "condlogic/rational.hpp"

namespace condlogic {

// Argument of an atom: a variable or a domain constant.
struct Term {
  enum class Kind { Variable, Constant };
  Kind kind = Kind::Variable;
  std::string name;

  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }
  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
  bool is_variable() const { return kind == Kind::Variable; }

  friend bool operator==(const Term&, const Term&) = default;
};

enum class Relation { Less, LessEq, Eq, GreaterEq, Greater };

std::string_view relation_symbol(Relation rel);
bool holds(const Rational& lhs, Relation rel, const Rational& rhs);

class ProbTerm;

// Immutable formula tree with shared subtrees. Copies are cheap.
class Formula {
 public:
  enum class Kind { Atom, Not, And, Or, Imp, Cond, Forall, Exists, Compare };
  struct Node;

  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula negation(Formula operand);
  static Formula conjunction(Formula lhs, Formula rhs);
  static Formula disjunction(Formula lhs, Formula rhs);
  static Formula implication(Formula lhs, Formula rhs);
  // lhs |- rhs
  static Formula conditional(Formula lhs, Formula rhs);
  static Formula forall(std::string variable, Formula body);
  static Formula exists(std::string variable, Formula body);
  static Formula compare(ProbTerm lhs, Relation rel, ProbTerm rhs);

  Kind kind() const;

  // Atom
  const std::string& predicate() const;
  const std::vector<Term>& args() const;
  // Not
  const Formula& operand() const;
  // And, Or, Imp, Cond
  const Formula& lhs() const;
  const Formula& rhs() const;
  // Forall, Exists
  const std::string& variable() const;
  const Formula& body() const;
  // Compare
  const ProbTerm& left_term() const;
  Relation relation() const;
  const ProbTerm& right_term() const;

  bool is_binary() const;
  bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Field-valued terms: constants, proportions [a]_x, conditionals [b|a]_x,
// the P1/P2 quantifiers, and exact arithmetic over them.
class ProbTerm {
 public:
  enum class Kind { Const, Prop, CondProp, P1, P2, Add, Sub, Mul };
  struct Node;

  static ProbTerm constant(Rational value);
  static ProbTerm proportion(Formula body, std::vector<std::string> bound);
  static ProbTerm conditional(Formula consequent, Formula condition, std::vector<std::string> bound);
  static ProbTerm p1(std::vector<std::string> bound, Formula body);
  static ProbTerm p2(std::vector<std::string> bound, Formula body);
  static ProbTerm add(ProbTerm lhs, ProbTerm rhs);
  static ProbTerm sub(ProbTerm lhs, ProbTerm rhs);
  static ProbTerm mul(ProbTerm lhs, ProbTerm rhs);

  Kind kind() const;

  const Rational& value() const;                  // Const
  const Formula& body() const;                    // Prop, P1, P2; consequent for CondProp
  const Formula& condition() const;               // CondProp
  const std::vector<std::string>& bound() const;  // Prop, CondProp, P1, P2
  const ProbTerm& lhs() const;                    // Add, Sub, Mul
  const ProbTerm& rhs() const;

  bool is_binder() const;
  bool is_arithmetic() const;

  friend bool operator==(const ProbTerm& a, const ProbTerm& b);

 private:
  explicit ProbTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  struct Atom {
    std::string predicate;
    std::vector<Term> args;
  };
  struct Unary {
    Formula operand;
  };
  struct Binary {
    Formula lhs, rhs;
  };
  struct Quantified {
    std::string variable;
    Formula body;
  };
  struct Comparison {
    ProbTerm lhs;
    Relation rel;
    ProbTerm rhs;
  };

  Kind kind;
  std::variant<Atom, Unary, Binary, Quantified, Comparison> data;
};

struct ProbTerm::Node {
  struct Constant {
    Rational value;
  };
  struct Binder {
    Formula body;
    std::optional<Formula> condition;
    std::vector<std::string> bound;
  };
  struct Arith {
    ProbTerm lhs, rhs;
  };

  Kind kind;
  std::variant<Constant, Binder, Arith> data;
};

}  // namespace condlogic

#endif  // CONDLOGIC_FORMULA_HPP
