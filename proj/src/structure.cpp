#include "condlogic/structure.hpp"

#include <algorithm>

namespace condlogic {

namespace {

class FreeVariableCollector {
 public:
  std::vector<std::string> ordered;

  void visit(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        for (const auto& arg : f.args()) {
          if (arg.is_variable()) note(arg.name);
        }
        return;
      case Formula::Kind::Not: visit(f.operand()); return;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Imp:
      case Formula::Kind::Cond:
        visit(f.lhs());
        visit(f.rhs());
        return;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        scope_.push_back(f.variable());
        visit(f.body());
        scope_.pop_back();
        return;
      case Formula::Kind::Compare:
        visit(f.left_term());
        visit(f.right_term());
        return;
    }
  }

  void visit(const ProbTerm& t) {
    if (t.kind() == ProbTerm::Kind::Const) return;
    if (t.is_arithmetic()) {
      visit(t.lhs());
      visit(t.rhs());
      return;
    }
    const auto depth = scope_.size();
    scope_.insert(scope_.end(), t.bound().begin(), t.bound().end());
    visit(t.body());
    if (t.kind() == ProbTerm::Kind::CondProp) visit(t.condition());
    scope_.resize(depth);
  }

 private:
  void note(const std::string& name) {
    if (std::find(scope_.begin(), scope_.end(), name) != scope_.end()) return;
    if (std::find(ordered.begin(), ordered.end(), name) != ordered.end()) return;
    ordered.push_back(name);
  }

  std::vector<std::string> scope_;
};

bool binds(const std::vector<std::string>& bound, const std::string& v) {
  return std::find(bound.begin(), bound.end(), v) != bound.end();
}

}  // namespace

std::set<std::string> free_variables(const Formula& f) {
  FreeVariableCollector c;
  c.visit(f);
  return {c.ordered.begin(), c.ordered.end()};
}

std::set<std::string> free_variables(const ProbTerm& t) {
  FreeVariableCollector c;
  c.visit(t);
  return {c.ordered.begin(), c.ordered.end()};
}

std::vector<std::string> free_variable_vector(const Formula& f) {
  FreeVariableCollector c;
  c.visit(f);
  return c.ordered;
}

bool is_closed(const Formula& f) { return free_variable_vector(f).empty(); }

Formula substitute(const Formula& f, const std::string& variable, const std::string& constant) {
  switch (f.kind()) {
    case Formula::Kind::Atom: {
      auto args = f.args();
      bool changed = false;
      for (auto& arg : args) {
        if (arg.is_variable() && arg.name == variable) {
          arg = Term::constant(constant);
          changed = true;
        }
      }
      return changed ? Formula::atom(f.predicate(), std::move(args)) : f;
    }
    case Formula::Kind::Not: return Formula::negation(substitute(f.operand(), variable, constant));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(f.lhs(), variable, constant), substitute(f.rhs(), variable, constant));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.lhs(), variable, constant), substitute(f.rhs(), variable, constant));
    case Formula::Kind::Imp:
      return Formula::implication(substitute(f.lhs(), variable, constant), substitute(f.rhs(), variable, constant));
    case Formula::Kind::Cond:
      return Formula::conditional(substitute(f.lhs(), variable, constant), substitute(f.rhs(), variable, constant));
    case Formula::Kind::Forall:
      if (f.variable() == variable) return f;
      return Formula::forall(f.variable(), substitute(f.body(), variable, constant));
    case Formula::Kind::Exists:
      if (f.variable() == variable) return f;
      return Formula::exists(f.variable(), substitute(f.body(), variable, constant));
    case Formula::Kind::Compare:
      return Formula::compare(substitute(f.left_term(), variable, constant), f.relation(),
                              substitute(f.right_term(), variable, constant));
  }
  return f;
}

ProbTerm substitute(const ProbTerm& t, const std::string& variable, const std::string& constant) {
  switch (t.kind()) {
    case ProbTerm::Kind::Const: return t;
    case ProbTerm::Kind::Prop:
      if (binds(t.bound(), variable)) return t;
      return ProbTerm::proportion(substitute(t.body(), variable, constant), t.bound());
    case ProbTerm::Kind::CondProp:
      if (binds(t.bound(), variable)) return t;
      return ProbTerm::conditional(substitute(t.body(), variable, constant),
                                   substitute(t.condition(), variable, constant), t.bound());
    case ProbTerm::Kind::P1:
      if (binds(t.bound(), variable)) return t;
      return ProbTerm::p1(t.bound(), substitute(t.body(), variable, constant));
    case ProbTerm::Kind::P2:
      if (binds(t.bound(), variable)) return t;
      return ProbTerm::p2(t.bound(), substitute(t.body(), variable, constant));
    case ProbTerm::Kind::Add:
      return ProbTerm::add(substitute(t.lhs(), variable, constant), substitute(t.rhs(), variable, constant));
    case ProbTerm::Kind::Sub:
      return ProbTerm::sub(substitute(t.lhs(), variable, constant), substitute(t.rhs(), variable, constant));
    case ProbTerm::Kind::Mul:
      return ProbTerm::mul(substitute(t.lhs(), variable, constant), substitute(t.rhs(), variable, constant));
  }
  return t;
}

bool classical_fragment(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return true;
    case Formula::Kind::Not: return classical_fragment(f.operand());
    case Formula::Kind::Cond: return false;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imp: return classical_fragment(f.lhs()) && classical_fragment(f.rhs());
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: return classical_fragment(f.body());
    case Formula::Kind::Compare: return classical_fragment(f.left_term()) && classical_fragment(f.right_term());
  }
  return false;
}

bool classical_fragment(const ProbTerm& t) {
  switch (t.kind()) {
    case ProbTerm::Kind::Const: return true;
    case ProbTerm::Kind::P1:
    case ProbTerm::Kind::P2: return false;
    case ProbTerm::Kind::Prop: return classical_fragment(t.body());
    case ProbTerm::Kind::CondProp: return classical_fragment(t.body()) && classical_fragment(t.condition());
    default: return classical_fragment(t.lhs()) && classical_fragment(t.rhs());
  }
}

namespace {

void collect_predicates(const ProbTerm& t, std::set<std::pair<std::string, std::size_t>>& out);

void collect_predicates(const Formula& f, std::set<std::pair<std::string, std::size_t>>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: out.emplace(f.predicate(), f.args().size()); return;
    case Formula::Kind::Not: collect_predicates(f.operand(), out); return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: collect_predicates(f.body(), out); return;
    case Formula::Kind::Compare:
      collect_predicates(f.left_term(), out);
      collect_predicates(f.right_term(), out);
      return;
    default:
      collect_predicates(f.lhs(), out);
      collect_predicates(f.rhs(), out);
  }
}

void collect_predicates(const ProbTerm& t, std::set<std::pair<std::string, std::size_t>>& out) {
  if (t.kind() == ProbTerm::Kind::Const) return;
  if (t.is_arithmetic()) {
    collect_predicates(t.lhs(), out);
    collect_predicates(t.rhs(), out);
    return;
  }
  collect_predicates(t.body(), out);
  if (t.kind() == ProbTerm::Kind::CondProp) collect_predicates(t.condition(), out);
}

}  // namespace

std::set<std::pair<std::string, std::size_t>> predicates_used(const Formula& f) {
  std::set<std::pair<std::string, std::size_t>> out;
  collect_predicates(f, out);
  return out;
}

}  // namespace condlogic
