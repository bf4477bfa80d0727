#ifndef CONDLOGIC_SRC_EVAL_ENV_HPP
#define CONDLOGIC_SRC_EVAL_ENV_HPP

#include <string>
#include <utility>
#include <vector>

#include "condlogic/error.hpp"
#include "condlogic/formula.hpp"
#include "condlogic/model.hpp"
#include "condlogic/semantics_lp.hpp"

namespace condlogic::detail {

// Variable bindings as a stack of (name, domain index); inner bindings shadow outer.
class Env {
 public:
  Env(const FiniteModel& m, const Assignment& assignment) {
    for (const auto& [var, constant] : assignment) {
      auto i = m.index_of(constant);
      if (!i) throw DomainError("assignment maps '" + var + "' to '" + constant + "', which is not in the domain");
      bindings_.emplace_back(var, *i);
    }
  }

  void push(const std::string& var, std::size_t value) { bindings_.emplace_back(var, value); }
  void pop(std::size_t n = 1) { bindings_.resize(bindings_.size() - n); }
  void rebind_top(std::size_t offset_from_top, std::size_t value) {
    bindings_[bindings_.size() - 1 - offset_from_top].second = value;
  }

  std::size_t lookup(const std::string& var) const {
    for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it) {
      if (it->first == var) return it->second;
    }
    throw UnboundVariableError("variable '" + var + "' is unbound");
  }

 private:
  std::vector<std::pair<std::string, std::size_t>> bindings_;
};

inline void resolve_args(const FiniteModel& m, const Env& env, const std::vector<Term>& args,
                         std::vector<std::size_t>& out) {
  out.clear();
  for (const auto& a : args) {
    if (a.is_variable()) {
      out.push_back(env.lookup(a.name));
    } else {
      auto i = m.index_of(a.name);
      if (!i) throw DomainError("constant '" + a.name + "' is not in the domain");
      out.push_back(*i);
    }
  }
}

// Calls fn() once per tuple in domain^|bound| with the bound variables pushed
// onto env; returns the number of tuples.
template <class Fn>
std::size_t for_each_tuple(const FiniteModel& m, Env& env, const std::vector<std::string>& bound, Fn&& fn) {
  const std::size_t n = m.size();
  const std::size_t k = bound.size();
  for (const auto& v : bound) env.push(v, 0);
  std::vector<std::size_t> digits(k, 0);
  std::size_t total = 0;
  while (true) {
    ++total;
    fn();
    std::size_t i = k;
    while (i-- > 0) {
      if (++digits[i] < n) {
        env.rebind_top(k - 1 - i, digits[i]);
        break;
      }
      digits[i] = 0;
      env.rebind_top(k - 1 - i, 0);
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  env.pop(k);
  return total;
}

}  // namespace condlogic::detail

#endif  // CONDLOGIC_SRC_EVAL_ENV_HPP
