#include "condlogic/semantics_3v.hpp"

#include <algorithm>

#include "condlogic/structure.hpp"
#include "eval_env.hpp"

namespace condlogic {

namespace {

using detail::Env;

class ThreeValued {
 public:
  ThreeValued(const FiniteModel& m, const Assignment& assignment) : m_(m), env_(m, assignment) {}

  Truth formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        detail::resolve_args(m_, env_, f.args(), args_);
        return m_.value(f.predicate(), args_);
      }
      case Formula::Kind::Not: return truth_not(formula(f.operand()));
      case Formula::Kind::And: return truth_and(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::Or: return truth_or(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::Imp: return truth_or(truth_not(formula(f.lhs())), formula(f.rhs()));
      case Formula::Kind::Cond: return truth_cond(formula(f.lhs()), formula(f.rhs()));
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        const bool universal = f.kind() == Formula::Kind::Forall;
        Truth acc = universal ? Truth::T : Truth::F;
        env_.push(f.variable(), 0);
        for (std::size_t i = 0; i < m_.size(); ++i) {
          env_.rebind_top(0, i);
          Truth v = formula(f.body());
          acc = universal ? std::min(acc, v) : std::max(acc, v);
        }
        env_.pop();
        return acc;
      }
      case Formula::Kind::Compare: {
        P1Value lhs = term(f.left_term());
        P1Value rhs = term(f.right_term());
        if (!lhs.defined() || !rhs.defined()) return Truth::U;
        return from_bool(holds(lhs.value(), f.relation(), rhs.value()));
      }
    }
    return Truth::U;
  }

  TruthCounts counts(const Formula& body, const std::vector<std::string>& bound) {
    TruthCounts c;
    detail::for_each_tuple(m_, env_, bound, [&] {
      switch (formula(body)) {
        case Truth::T: ++c.t; break;
        case Truth::U: ++c.u; break;
        case Truth::F: ++c.f; break;
      }
    });
    return c;
  }

  P1Value term(const ProbTerm& t) {
    switch (t.kind()) {
      case ProbTerm::Kind::Const: return t.value();
      case ProbTerm::Kind::Prop: {
        TruthCounts c = counts(t.body(), t.bound());
        return Rational(static_cast<std::int64_t>(c.t), static_cast<std::int64_t>(c.total()));
      }
      case ProbTerm::Kind::CondProp: {
        std::size_t cond_hits = 0, both = 0;
        detail::for_each_tuple(m_, env_, t.bound(), [&] {
          if (formula(t.condition()) == Truth::T) {
            ++cond_hits;
            if (formula(t.body()) == Truth::T) ++both;
          }
        });
        if (cond_hits == 0) return Rational(0);
        return Rational(static_cast<std::int64_t>(both), static_cast<std::int64_t>(cond_hits));
      }
      case ProbTerm::Kind::P1: {
        TruthCounts c = counts(t.body(), t.bound());
        if (c.defined() == 0) return P1Value::undefined();
        return Rational(static_cast<std::int64_t>(c.t), static_cast<std::int64_t>(c.defined()));
      }
      case ProbTerm::Kind::P2: {
        TruthCounts c = counts(t.body(), t.bound());
        return Rational(static_cast<std::int64_t>(c.defined()), static_cast<std::int64_t>(c.total()));
      }
      default: break;
    }
    P1Value lhs = term(t.lhs());
    P1Value rhs = term(t.rhs());
    if (!lhs.defined() || !rhs.defined()) return P1Value::undefined();
    switch (t.kind()) {
      case ProbTerm::Kind::Add: return lhs.value() + rhs.value();
      case ProbTerm::Kind::Sub: return lhs.value() - rhs.value();
      default: return lhs.value() * rhs.value();
    }
  }

 private:
  const FiniteModel& m_;
  Env env_;
  std::vector<std::size_t> args_;
};

void require_bound(std::set<std::string> free, const std::vector<std::string>& bound, const Assignment& env) {
  for (const auto& v : bound) free.erase(v);
  for (const auto& v : free) {
    if (!env.count(v)) throw UnboundVariableError("variable '" + v + "' is free and not assigned");
  }
}

}  // namespace

Truth eval3(const FiniteModel& m, const Assignment& env, const Formula& f) {
  require_bound(free_variables(f), {}, env);
  return ThreeValued(m, env).formula(f);
}

TruthCounts count3(const FiniteModel& m, const Assignment& env, const Formula& body,
                   const std::vector<std::string>& bound) {
  require_bound(free_variables(body), bound, env);
  return ThreeValued(m, env).counts(body, bound);
}

P1Value p1(const FiniteModel& m, const Assignment& env, const Formula& body, const std::vector<std::string>& bound) {
  TruthCounts c = count3(m, env, body, bound);
  if (c.defined() == 0) return P1Value::undefined();
  return Rational(static_cast<std::int64_t>(c.t), static_cast<std::int64_t>(c.defined()));
}

Rational p2(const FiniteModel& m, const Assignment& env, const Formula& body, const std::vector<std::string>& bound) {
  TruthCounts c = count3(m, env, body, bound);
  return Rational(static_cast<std::int64_t>(c.defined()), static_cast<std::int64_t>(c.total()));
}

P1Value eval_term3(const FiniteModel& m, const Assignment& env, const ProbTerm& t) {
  require_bound(free_variables(t), {}, env);
  return ThreeValued(m, env).term(t);
}

}  // namespace condlogic
