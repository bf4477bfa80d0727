#include "condlogic/formula.hpp"

#include <set>
#include <stdexcept>

namespace condlogic {

std::string_view relation_symbol(Relation rel) {
  switch (rel) {
    case Relation::Less: return "<";
    case Relation::LessEq: return "<=";
    case Relation::Eq: return "=";
    case Relation::GreaterEq: return ">=";
    case Relation::Greater: return ">";
  }
  return "?";
}

bool holds(const Rational& lhs, Relation rel, const Rational& rhs) {
  switch (rel) {
    case Relation::Less: return lhs < rhs;
    case Relation::LessEq: return lhs <= rhs;
    case Relation::Eq: return lhs == rhs;
    case Relation::GreaterEq: return lhs >= rhs;
    case Relation::Greater: return lhs > rhs;
  }
  return false;
}

// ---- Formula ---------------------------------------------------------------

namespace {

template <class T>
const T& as(const auto& node) {
  return std::get<T>(node->data);
}

void check_bound_list(const std::vector<std::string>& bound) {
  std::set<std::string> seen;
  for (const auto& v : bound) {
    if (v.empty()) throw std::invalid_argument("empty variable name in binder");
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate bound variable '" + v + "'");
  }
}

}  // namespace

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(Node{Kind::Atom, Node::Atom{std::move(predicate), std::move(args)}}));
}

Formula Formula::negation(Formula operand) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, Node::Unary{std::move(operand)}}));
}

Formula Formula::conjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, Node::Binary{std::move(lhs), std::move(rhs)}}));
}

Formula Formula::disjunction(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, Node::Binary{std::move(lhs), std::move(rhs)}}));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::Imp, Node::Binary{std::move(lhs), std::move(rhs)}}));
}

Formula Formula::conditional(Formula lhs, Formula rhs) {
  return Formula(std::make_shared<const Node>(Node{Kind::Cond, Node::Binary{std::move(lhs), std::move(rhs)}}));
}

Formula Formula::forall(std::string variable, Formula body) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Forall, Node::Quantified{std::move(variable), std::move(body)}}));
}

Formula Formula::exists(std::string variable, Formula body) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Exists, Node::Quantified{std::move(variable), std::move(body)}}));
}

Formula Formula::compare(ProbTerm lhs, Relation rel, ProbTerm rhs) {
  return Formula(
      std::make_shared<const Node>(Node{Kind::Compare, Node::Comparison{std::move(lhs), rel, std::move(rhs)}}));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::predicate() const { return as<Node::Atom>(node_).predicate; }
const std::vector<Term>& Formula::args() const { return as<Node::Atom>(node_).args; }
const Formula& Formula::operand() const { return as<Node::Unary>(node_).operand; }
const Formula& Formula::lhs() const { return as<Node::Binary>(node_).lhs; }
const Formula& Formula::rhs() const { return as<Node::Binary>(node_).rhs; }
const std::string& Formula::variable() const { return as<Node::Quantified>(node_).variable; }
const Formula& Formula::body() const { return as<Node::Quantified>(node_).body; }
const ProbTerm& Formula::left_term() const { return as<Node::Comparison>(node_).lhs; }
Relation Formula::relation() const { return as<Node::Comparison>(node_).rel; }
const ProbTerm& Formula::right_term() const { return as<Node::Comparison>(node_).rhs; }

bool Formula::is_binary() const {
  switch (kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Imp:
    case Kind::Cond: return true;
    default: return false;
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Atom: return a.predicate() == b.predicate() && a.args() == b.args();
    case Formula::Kind::Not: return a.operand() == b.operand();
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
    case Formula::Kind::Cond: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return a.variable() == b.variable() && a.body() == b.body();
    case Formula::Kind::Compare:
      return a.relation() == b.relation() && a.left_term() == b.left_term() && a.right_term() == b.right_term();
  }
  return false;
}

// ---- ProbTerm --------------------------------------------------------------

ProbTerm ProbTerm::constant(Rational value) {
  return ProbTerm(std::make_shared<const Node>(Node{Kind::Const, Node::Constant{std::move(value)}}));
}

ProbTerm ProbTerm::proportion(Formula body, std::vector<std::string> bound) {
  if (bound.empty()) throw std::invalid_argument("proportion term needs at least one bound variable");
  check_bound_list(bound);
  return ProbTerm(
      std::make_shared<const Node>(Node{Kind::Prop, Node::Binder{std::move(body), std::nullopt, std::move(bound)}}));
}

ProbTerm ProbTerm::conditional(Formula consequent, Formula condition, std::vector<std::string> bound) {
  if (bound.empty()) throw std::invalid_argument("conditional term needs at least one bound variable");
  check_bound_list(bound);
  return ProbTerm(std::make_shared<const Node>(
      Node{Kind::CondProp, Node::Binder{std::move(consequent), std::move(condition), std::move(bound)}}));
}

ProbTerm ProbTerm::p1(std::vector<std::string> bound, Formula body) {
  if (bound.empty()) throw std::invalid_argument("P1 needs at least one bound variable");
  check_bound_list(bound);
  return ProbTerm(
      std::make_shared<const Node>(Node{Kind::P1, Node::Binder{std::move(body), std::nullopt, std::move(bound)}}));
}

ProbTerm ProbTerm::p2(std::vector<std::string> bound, Formula body) {
  if (bound.empty()) throw std::invalid_argument("P2 needs at least one bound variable");
  check_bound_list(bound);
  return ProbTerm(
      std::make_shared<const Node>(Node{Kind::P2, Node::Binder{std::move(body), std::nullopt, std::move(bound)}}));
}

ProbTerm ProbTerm::add(ProbTerm lhs, ProbTerm rhs) {
  return ProbTerm(std::make_shared<const Node>(Node{Kind::Add, Node::Arith{std::move(lhs), std::move(rhs)}}));
}

ProbTerm ProbTerm::sub(ProbTerm lhs, ProbTerm rhs) {
  return ProbTerm(std::make_shared<const Node>(Node{Kind::Sub, Node::Arith{std::move(lhs), std::move(rhs)}}));
}

ProbTerm ProbTerm::mul(ProbTerm lhs, ProbTerm rhs) {
  return ProbTerm(std::make_shared<const Node>(Node{Kind::Mul, Node::Arith{std::move(lhs), std::move(rhs)}}));
}

ProbTerm::Kind ProbTerm::kind() const { return node_->kind; }
const Rational& ProbTerm::value() const { return as<Node::Constant>(node_).value; }
const Formula& ProbTerm::body() const { return as<Node::Binder>(node_).body; }
const Formula& ProbTerm::condition() const { return *as<Node::Binder>(node_).condition; }
const std::vector<std::string>& ProbTerm::bound() const { return as<Node::Binder>(node_).bound; }
const ProbTerm& ProbTerm::lhs() const { return as<Node::Arith>(node_).lhs; }
const ProbTerm& ProbTerm::rhs() const { return as<Node::Arith>(node_).rhs; }

bool ProbTerm::is_binder() const {
  switch (kind()) {
    case Kind::Prop:
    case Kind::CondProp:
    case Kind::P1:
    case Kind::P2: return true;
    default: return false;
  }
}

bool ProbTerm::is_arithmetic() const {
  return kind() == Kind::Add || kind() == Kind::Sub || kind() == Kind::Mul;
}

bool operator==(const ProbTerm& a, const ProbTerm& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ProbTerm::Kind::Const: return a.value() == b.value();
    case ProbTerm::Kind::CondProp:
      if (!(a.condition() == b.condition())) return false;
      [[fallthrough]];
    case ProbTerm::Kind::Prop:
    case ProbTerm::Kind::P1:
    case ProbTerm::Kind::P2: return a.bound() == b.bound() && a.body() == b.body();
    case ProbTerm::Kind::Add:
    case ProbTerm::Kind::Sub:
    case ProbTerm::Kind::Mul: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
  return false;
}

}  // namespace condlogic
