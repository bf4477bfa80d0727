#include "condlogic/semantics_lp.hpp"

#include "condlogic/error.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/structure.hpp"
#include "eval_env.hpp"

namespace condlogic {

namespace {

using detail::Env;

class TwoValued {
 public:
  TwoValued(const FiniteModel& m, const Assignment& assignment) : m_(m), env_(m, assignment) {}

  bool formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        std::vector<std::size_t> args;
        detail::resolve_args(m_, env_, f.args(), args);
        Truth v = m_.value(f.predicate(), args);
        if (v == Truth::U) {
          throw NonClassicalModelError("atom " + render(f) + " is U in the model; use 3-valued evaluation");
        }
        return v == Truth::T;
      }
      case Formula::Kind::Not: return !formula(f.operand());
      case Formula::Kind::And: return formula(f.lhs()) && formula(f.rhs());
      case Formula::Kind::Or: return formula(f.lhs()) || formula(f.rhs());
      case Formula::Kind::Imp: return !formula(f.lhs()) || formula(f.rhs());
      case Formula::Kind::Cond: throw FragmentError("'~>' has no two-valued reading");
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const bool universal = f.kind() == Formula::Kind::Forall;
        bool result = universal;
        env_.push(f.variable(), 0);
        for (std::size_t i = 0; i < m_.size(); ++i) {
          env_.rebind_top(0, i);
          if (formula(f.body()) != universal) {
            result = !universal;
            break;
          }
        }
        env_.pop();
        return result;
      }
      case Formula::Kind::Compare: return holds(term(f.left_term()), f.relation(), term(f.right_term()));
    }
    return false;
  }

  std::size_t count(const Formula& body, const std::vector<std::string>& bound) {
    std::size_t hits = 0;
    detail::for_each_tuple(m_, env_, bound, [&] {
      if (formula(body)) ++hits;
    });
    return hits;
  }

  Rational proportion(const Formula& body, const std::vector<std::string>& bound) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < bound.size(); ++i) total *= m_.size();
    return Rational(static_cast<std::int64_t>(count(body, bound)), static_cast<std::int64_t>(total));
  }

  Rational conditional(const Formula& beta, const Formula& alpha, const std::vector<std::string>& bound) {
    std::size_t alpha_hits = 0, both = 0;
    detail::for_each_tuple(m_, env_, bound, [&] {
      if (formula(alpha)) {
        ++alpha_hits;
        if (formula(beta)) ++both;
      }
    });
    if (alpha_hits == 0) return Rational(0);
    return Rational(static_cast<std::int64_t>(both), static_cast<std::int64_t>(alpha_hits));
  }

  Rational term(const ProbTerm& t) {
    switch (t.kind()) {
      case ProbTerm::Kind::Const: return t.value();
      case ProbTerm::Kind::Prop: return proportion(t.body(), t.bound());
      case ProbTerm::Kind::CondProp: return conditional(t.body(), t.condition(), t.bound());
      case ProbTerm::Kind::P1:
      case ProbTerm::Kind::P2: throw FragmentError("P1/P2 have no two-valued reading");
      case ProbTerm::Kind::Add: return term(t.lhs()) + term(t.rhs());
      case ProbTerm::Kind::Sub: return term(t.lhs()) - term(t.rhs());
      case ProbTerm::Kind::Mul: return term(t.lhs()) * term(t.rhs());
    }
    return Rational(0);
  }

 private:
  const FiniteModel& m_;
  Env env_;
};

void require_bound(const std::set<std::string>& free, const Assignment& env) {
  for (const auto& v : free) {
    if (!env.count(v)) throw UnboundVariableError("variable '" + v + "' is free and not assigned");
  }
}

void require_classical(const Formula& f) {
  if (!classical_fragment(f)) throw FragmentError("formula uses '~>', P1 or P2: " + render(f));
}

std::set<std::string> free_outside(const Formula& f, const std::vector<std::string>& bound) {
  auto free = free_variables(f);
  for (const auto& v : bound) free.erase(v);
  return free;
}

}  // namespace

bool eval2(const FiniteModel& m, const Assignment& env, const Formula& f) {
  require_classical(f);
  require_bound(free_variables(f), env);
  return TwoValued(m, env).formula(f);
}

Rational prop(const FiniteModel& m, const Assignment& env, const Formula& body, const std::vector<std::string>& bound) {
  require_classical(body);
  require_bound(free_outside(body, bound), env);
  return TwoValued(m, env).proportion(body, bound);
}

Rational cond_prop(const FiniteModel& m, const Assignment& env, const Formula& beta, const Formula& alpha,
                   const std::vector<std::string>& bound) {
  require_classical(beta);
  require_classical(alpha);
  require_bound(free_outside(beta, bound), env);
  require_bound(free_outside(alpha, bound), env);
  return TwoValued(m, env).conditional(beta, alpha, bound);
}

Rational eval_term(const FiniteModel& m, const Assignment& env, const ProbTerm& t) {
  if (!classical_fragment(t)) throw FragmentError("term uses '~>', P1 or P2: " + render(t));
  require_bound(free_variables(t), env);
  return TwoValued(m, env).term(t);
}

}  // namespace condlogic
