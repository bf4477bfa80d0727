#include "condlogic/deduction.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "condlogic/error.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/semantics_lp.hpp"
#include "condlogic/structure.hpp"

namespace condlogic {

// ---- Fact ------------------------------------------------------------------------

Fact Fact::holds(Formula formula) {
  if (!classical_fragment(formula)) throw std::invalid_argument("HOLDS facts must be classical formulas");
  return Fact(Holds{std::move(formula)});
}

Fact Fact::bound(ProbTerm term, Relation rel, Rational value) {
  if (term.kind() != ProbTerm::Kind::Prop && term.kind() != ProbTerm::Kind::CondProp) {
    throw std::invalid_argument("BOUND facts need a proportion or conditional term");
  }
  if (!classical_fragment(term)) throw std::invalid_argument("BOUND facts must use classical formulas");
  if (value < Rational(0) || value > Rational(1)) throw std::invalid_argument("BOUND value must lie in [0,1]");
  return Fact(Bound{std::move(term), rel, std::move(value)});
}

std::string Fact::str() const {
  if (is_holds()) return "HOLDS " + render(as_holds().formula);
  const Bound& b = as_bound();
  return "BOUND " + render(Formula::compare(b.term, b.rel, ProbTerm::constant(b.value)));
}

bool operator==(const Fact& a, const Fact& b) {
  if (a.is_holds() != b.is_holds()) return false;
  if (a.is_holds()) return a.as_holds().formula == b.as_holds().formula;
  const auto& x = a.as_bound();
  const auto& y = b.as_bound();
  return x.rel == y.rel && x.value == y.value && x.term == y.term;
}

namespace {

// Subset of [0,1] allowed by a Bound fact.
struct Interval {
  Rational lo{0};
  bool lo_open = false;
  Rational hi{1};
  bool hi_open = false;

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }

  bool within(const Interval& outer) const {
    if (empty()) return true;
    bool lo_ok = lo > outer.lo || (lo == outer.lo && (lo_open || !outer.lo_open));
    bool hi_ok = hi < outer.hi || (hi == outer.hi && (hi_open || !outer.hi_open));
    return lo_ok && hi_ok;
  }
};

Interval interval_of(Relation rel, const Rational& v) {
  Interval i;
  switch (rel) {
    case Relation::Eq: i.lo = v; i.hi = v; break;
    case Relation::GreaterEq: i.lo = v; break;
    case Relation::Greater: i.lo = v; i.lo_open = true; break;
    case Relation::LessEq: i.hi = v; break;
    case Relation::Less: i.hi = v; i.hi_open = true; break;
  }
  if (i.lo < Rational(0)) { i.lo = 0; i.lo_open = false; }
  if (i.hi > Rational(1)) { i.hi = 1; i.hi_open = false; }
  return i;
}

Interval interval_of(const Fact::Bound& b) { return interval_of(b.rel, b.value); }

}  // namespace

bool entails(const Fact& a, const Fact& b) {
  if (a.is_holds() != b.is_holds()) return false;
  if (a.is_holds()) return a.as_holds().formula == b.as_holds().formula;
  const auto& x = a.as_bound();
  const auto& y = b.as_bound();
  if (!(x.term == y.term)) return false;
  return interval_of(x).within(interval_of(y));
}

// ---- rules -------------------------------------------------------------------------

std::string_view rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R1p: return "R1'";
    case Rule::R2p: return "R2'";
    case Rule::R1pp: return "R1''";
    case Rule::R3pp: return "R3''";
    case Rule::WMP: return "WMP";
    case Rule::DISJ: return "DISJ";
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  std::string n;
  for (char c : name) n += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (n == "R1") return Rule::R1;
  if (n == "R1'" || n == "R1P") return Rule::R1p;
  if (n == "R2'" || n == "R2P" || n == "R2''" || n == "R2\"" || n == "R2PP") return Rule::R2p;
  if (n == "R1''" || n == "R1\"" || n == "R1PP") return Rule::R1pp;
  if (n == "R3''" || n == "R3\"" || n == "R3PP") return Rule::R3pp;
  if (n == "WMP") return Rule::WMP;
  if (n == "DISJ") return Rule::DISJ;
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = {Rule::R1,   Rule::R1p, Rule::R2p, Rule::R1pp,
                                          Rule::R3pp, Rule::WMP, Rule::DISJ};
  return rules;
}

namespace {

struct Failure {
  bool side_condition = false;
  std::string message;
};

using Outcome = std::variant<Fact, Failure>;

Failure mismatch(std::string msg) { return {false, std::move(msg)}; }
Failure violation(std::string msg) { return {true, std::move(msg)}; }

const Fact::Bound* prop_fact(const Fact& f) {
  if (!f.is_bound() || f.as_bound().term.kind() != ProbTerm::Kind::Prop) return nullptr;
  return &f.as_bound();
}

const Fact::Bound* cond_fact(const Fact& f) {
  if (!f.is_bound() || f.as_bound().term.kind() != ProbTerm::Kind::CondProp) return nullptr;
  return &f.as_bound();
}

bool entails_value(const Fact::Bound& b, Relation rel, const Rational& v) {
  return interval_of(b).within(interval_of(rel, v));
}

bool lower_bounded(const Fact::Bound& b) {
  return b.rel == Relation::Eq || b.rel == Relation::GreaterEq || b.rel == Relation::Greater;
}

// x must list exactly the free variables of the participating formulas.
std::optional<Failure> check_vector(const std::vector<std::string>& bound, std::initializer_list<Formula> formulas) {
  std::set<std::string> free;
  for (const auto& f : formulas) {
    auto fv = free_variables(f);
    free.insert(fv.begin(), fv.end());
  }
  std::set<std::string> listed(bound.begin(), bound.end());
  if (listed != free) {
    std::string have, want;
    for (const auto& v : listed) have += (have.empty() ? "" : ",") + v;
    for (const auto& v : free) want += (want.empty() ? "" : ",") + v;
    return violation("bound variables {" + have + "} must be exactly the free variables {" + want + "}");
  }
  return std::nullopt;
}

Outcome attempt(Rule rule, std::span<const Fact> p, const std::optional<Formula>& disjunction) {
  const std::size_t arity = (rule == Rule::R2p || rule == Rule::DISJ) ? 1 : 2;
  if (p.size() != arity) {
    return mismatch(std::string(rule_name(rule)) + " takes " + std::to_string(arity) + " premise(s)");
  }
  switch (rule) {
    case Rule::R1: {
      if (!p[0].is_holds() || !p[1].is_holds()) return mismatch("R1 needs two HOLDS premises");
      const Formula& imp = p[1].as_holds().formula;
      if (imp.kind() != Formula::Kind::Imp) return mismatch("R1: second premise must be an implication");
      if (!(imp.lhs() == p[0].as_holds().formula)) return mismatch("R1: antecedent does not match first premise");
      return Fact::holds(imp.rhs());
    }
    case Rule::R2p: {
      if (!p[0].is_holds()) return mismatch("R2' needs a HOLDS premise");
      const Formula& imp = p[0].as_holds().formula;
      if (imp.kind() != Formula::Kind::Imp) return mismatch("R2': premise must be an implication");
      auto vars = free_variable_vector(imp);
      if (vars.empty()) return violation("R2': the implication has no free variables to bind");
      return Fact::bound(ProbTerm::proportion(imp, vars), Relation::Eq, Rational(1));
    }
    case Rule::R1p:
    case Rule::WMP: {
      const auto* a = prop_fact(p[0]);
      const auto* ab = prop_fact(p[1]);
      if (!a || !ab) return mismatch(std::string(rule_name(rule)) + " needs two proportion bounds");
      const Formula& imp = ab->term.body();
      if (imp.kind() != Formula::Kind::Imp || !(imp.lhs() == a->term.body())) {
        return mismatch(std::string(rule_name(rule)) + ": second premise must bound [a -> b] for the first premise's a");
      }
      if (a->term.bound() != ab->term.bound()) return violation("premises bind different variable vectors");
      if (auto bad = check_vector(a->term.bound(), {imp.lhs(), imp.rhs()})) return *bad;
      const Formula& beta = imp.rhs();
      if (rule == Rule::R1p) {
        if (!entails_value(*a, Relation::Eq, 1) || !entails_value(*ab, Relation::Eq, 1)) {
          return mismatch("R1' needs both premises to state the value 1");
        }
        return Fact::bound(ProbTerm::proportion(beta, a->term.bound()), Relation::Eq, Rational(1));
      }
      if (!lower_bounded(*a) || !lower_bounded(*ab)) return mismatch("WMP needs lower bounds (=, >=, >)");
      Rational value = max(Rational(0), interval_of(*a).lo + interval_of(*ab).lo - Rational(1));
      return Fact::bound(ProbTerm::proportion(beta, a->term.bound()), Relation::GreaterEq, value);
    }
    case Rule::R1pp: {
      const auto* a = prop_fact(p[0]);
      const auto* ba = cond_fact(p[1]);
      if (!a || !ba) return mismatch("R1'' needs [a]=1 and [b given a]=1");
      if (!(ba->term.condition() == a->term.body())) return mismatch("R1'': condition does not match [a]");
      if (a->term.bound() != ba->term.bound()) return violation("premises bind different variable vectors");
      if (auto bad = check_vector(a->term.bound(), {a->term.body(), ba->term.body()})) return *bad;
      if (!entails_value(*a, Relation::Eq, 1) || !entails_value(*ba, Relation::Eq, 1)) {
        return mismatch("R1'' needs both premises to state the value 1");
      }
      return Fact::bound(ProbTerm::proportion(ba->term.body(), a->term.bound()), Relation::Eq, Rational(1));
    }
    case Rule::R3pp: {
      const auto* ab = prop_fact(p[0]);
      const auto* a = prop_fact(p[1]);
      if (!a || !ab) return mismatch("R3'' needs [a -> b]=1 and [a]>0");
      const Formula& imp = ab->term.body();
      if (imp.kind() != Formula::Kind::Imp || !(imp.lhs() == a->term.body())) {
        return mismatch("R3'': first premise must bound [a -> b] for the second premise's a");
      }
      if (a->term.bound() != ab->term.bound()) return violation("premises bind different variable vectors");
      if (auto bad = check_vector(a->term.bound(), {imp.lhs(), imp.rhs()})) return *bad;
      if (!entails_value(*ab, Relation::Eq, 1)) return mismatch("R3'' needs [a -> b] = 1");
      if (!entails_value(*a, Relation::Greater, 0)) return mismatch("R3'' needs [a] > 0");
      return Fact::bound(ProbTerm::conditional(imp.rhs(), imp.lhs(), a->term.bound()), Relation::Eq, Rational(1));
    }
    case Rule::DISJ: {
      const auto* a = prop_fact(p[0]);
      if (!a) return mismatch("DISJ needs a proportion bound");
      if (!lower_bounded(*a)) return mismatch("DISJ needs a lower bound (=, >=, >)");
      if (!disjunction || disjunction->kind() != Formula::Kind::Or) return mismatch("DISJ needs a target disjunction");
      const Formula& d = *disjunction;
      if (!(d.lhs() == a->term.body()) && !(d.rhs() == a->term.body())) {
        return mismatch("DISJ: the premise formula is not a disjunct of the target");
      }
      if (auto bad = check_vector(a->term.bound(), {d})) return *bad;
      const Interval i = interval_of(*a);
      return Fact::bound(ProbTerm::proportion(d, a->term.bound()), i.lo_open ? Relation::Greater : Relation::GreaterEq,
                         i.lo);
    }
  }
  return mismatch("unknown rule");
}

}  // namespace

Fact apply_rule(Rule rule, std::span<const Fact> premises, const std::optional<Formula>& disjunction) {
  Outcome out = attempt(rule, premises, disjunction);
  if (auto* f = std::get_if<Fact>(&out)) return *f;
  const auto& fail = std::get<Failure>(out);
  if (fail.side_condition) throw SideConditionViolation(fail.message);
  throw SchemaMismatch(fail.message);
}

// ---- derive --------------------------------------------------------------------------

namespace {

void collect_disjunctions(const Formula& f, std::vector<Formula>& out);

void collect_disjunctions(const ProbTerm& t, std::vector<Formula>& out) {
  if (t.kind() == ProbTerm::Kind::Const) return;
  if (t.is_arithmetic()) {
    collect_disjunctions(t.lhs(), out);
    collect_disjunctions(t.rhs(), out);
    return;
  }
  collect_disjunctions(t.body(), out);
  if (t.kind() == ProbTerm::Kind::CondProp) collect_disjunctions(t.condition(), out);
}

void collect_disjunctions(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return;
    case Formula::Kind::Not: collect_disjunctions(f.operand(), out); return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: collect_disjunctions(f.body(), out); return;
    case Formula::Kind::Compare:
      collect_disjunctions(f.left_term(), out);
      collect_disjunctions(f.right_term(), out);
      return;
    default:
      if (f.kind() == Formula::Kind::Or && std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      collect_disjunctions(f.lhs(), out);
      collect_disjunctions(f.rhs(), out);
  }
}

void collect_disjunctions(const Fact& fact, std::vector<Formula>& out) {
  if (fact.is_holds()) {
    collect_disjunctions(fact.as_holds().formula, out);
  } else {
    collect_disjunctions(fact.as_bound().term, out);
  }
}

struct Node {
  Fact fact;
  std::optional<std::size_t> step;  // producing step, none for KB facts
};

struct Step {
  Rule rule;
  std::vector<std::size_t> premises;  // node indices
  std::size_t conclusion;
};

}  // namespace

std::optional<Derivation> derive(const std::vector<Fact>& kb, const Fact& goal, const DeriveOptions& options) {
  std::vector<Node> nodes;
  for (const auto& f : kb) nodes.push_back({f, std::nullopt});
  std::vector<Step> steps;

  auto find_goal = [&](std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t i = from; i < nodes.size(); ++i) {
      if (entails(nodes[i].fact, goal)) return i;
    }
    return std::nullopt;
  };

  std::vector<Formula> disjunctions;
  for (const auto& f : kb) collect_disjunctions(f, disjunctions);
  collect_disjunctions(goal, disjunctions);

  std::optional<std::size_t> hit = find_goal(0);
  for (std::size_t round = 0; !hit && round < options.budget; ++round) {
    struct Pending {
      Fact fact;
      Rule rule;
      std::vector<std::size_t> premises;
    };
    std::vector<Pending> pending;
    auto known = [&](const Fact& f) {
      for (const auto& n : nodes) {
        if (entails(n.fact, f)) return true;
      }
      for (const auto& p : pending) {
        if (entails(p.fact, f)) return true;
      }
      return false;
    };
    auto offer = [&](Outcome out, Rule rule, std::vector<std::size_t> premises) {
      auto* f = std::get_if<Fact>(&out);
      if (!f) return;
      if (f->is_bound() && f->as_bound().rel != Relation::Eq && f->as_bound().value.is_zero()) return;  // vacuous
      if (known(*f)) return;
      pending.push_back({*f, rule, std::move(premises)});
    };

    const std::size_t n = nodes.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Fact one[1] = {nodes[i].fact};
      offer(attempt(Rule::R2p, one, std::nullopt), Rule::R2p, {i});
      for (const auto& d : disjunctions) offer(attempt(Rule::DISJ, one, d), Rule::DISJ, {i});
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const Fact two[2] = {nodes[i].fact, nodes[j].fact};
        for (Rule r : {Rule::R1, Rule::R1p, Rule::R1pp, Rule::R3pp, Rule::WMP}) {
          offer(attempt(r, two, std::nullopt), r, {i, j});
        }
      }
    }
    if (pending.empty()) break;
    for (auto& p : pending) {
      steps.push_back({p.rule, std::move(p.premises), nodes.size()});
      nodes.push_back({std::move(p.fact), steps.size() - 1});
      if (nodes.size() >= options.max_facts) break;
    }
    hit = find_goal(n);
    if (nodes.size() >= options.max_facts) break;
  }
  if (!hit) return std::nullopt;

  // Collect the steps the goal fact depends on, in creation order.
  std::set<std::size_t> used;
  std::vector<std::size_t> stack = {*hit};
  while (!stack.empty()) {
    std::size_t node = stack.back();
    stack.pop_back();
    if (!nodes[node].step || used.count(*nodes[node].step)) continue;
    used.insert(*nodes[node].step);
    for (std::size_t prem : steps[*nodes[node].step].premises) stack.push_back(prem);
  }
  Derivation d{kb, goal, {}};
  for (std::size_t s : used) {
    std::vector<Fact> premises;
    for (std::size_t prem : steps[s].premises) premises.push_back(nodes[prem].fact);
    d.steps.push_back({steps[s].rule, std::move(premises), nodes[steps[s].conclusion].fact});
  }
  return d;
}

// ---- soundness -------------------------------------------------------------------------

bool fact_true(const FiniteModel& m, const Fact& fact) {
  if (fact.is_bound()) {
    const auto& b = fact.as_bound();
    return holds(eval_term(m, b.term), b.rel, b.value);
  }
  const Formula& f = fact.as_holds().formula;
  auto vars = free_variable_vector(f);
  if (vars.empty()) return eval2(m, f);
  // Open HOLDS facts are universally closed.
  std::vector<std::size_t> digits(vars.size(), 0);
  while (true) {
    Assignment env;
    for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = m.domain()[digits[i]];
    if (!eval2(m, env, f)) return false;
    std::size_t i = vars.size();
    while (i-- > 0) {
      if (++digits[i] < m.size()) break;
      digits[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return true;
  }
}

bool SoundnessReport::all_sound() const {
  return std::all_of(steps.begin(), steps.end(), [](const StepCheck& s) { return s.locally_sound; });
}

SoundnessReport check_soundness(const Derivation& d, const FiniteModel& m) {
  SoundnessReport report;
  for (const auto& f : d.kb) report.kb_true.push_back(fact_true(m, f));
  for (const auto& step : d.steps) {
    StepCheck c{step, {}, false, true};
    bool all = true;
    for (const auto& p : step.premises) {
      bool t = fact_true(m, p);
      c.premises_true.push_back(t);
      all = all && t;
    }
    c.conclusion_true = fact_true(m, step.conclusion);
    c.locally_sound = !all || c.conclusion_true;
    report.steps.push_back(std::move(c));
  }
  report.goal_true = fact_true(m, d.goal);
  return report;
}

// ---- text format -------------------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Relation flip(Relation r) {
  switch (r) {
    case Relation::Less: return Relation::Greater;
    case Relation::LessEq: return Relation::GreaterEq;
    case Relation::GreaterEq: return Relation::LessEq;
    case Relation::Greater: return Relation::Less;
    default: return r;
  }
}

std::optional<Fact> as_bound_fact(const Formula& f) {
  if (f.kind() != Formula::Kind::Compare) return std::nullopt;
  auto is_prop = [](const ProbTerm& t) {
    return t.kind() == ProbTerm::Kind::Prop || t.kind() == ProbTerm::Kind::CondProp;
  };
  const ProbTerm& l = f.left_term();
  const ProbTerm& r = f.right_term();
  if (is_prop(l) && r.kind() == ProbTerm::Kind::Const) return Fact::bound(l, f.relation(), r.value());
  if (is_prop(r) && l.kind() == ProbTerm::Kind::Const) return Fact::bound(r, flip(f.relation()), l.value());
  return std::nullopt;
}

bool starts_with_keyword(std::string_view s, std::string_view kw) {
  return s.size() > kw.size() && s.substr(0, kw.size()) == kw &&
         std::isspace(static_cast<unsigned char>(s[kw.size()]));
}

}  // namespace

Fact parse_fact(std::string_view text) {
  text = trim(text);
  try {
    if (starts_with_keyword(text, "HOLDS")) return Fact::holds(parse(text.substr(5)));
    if (starts_with_keyword(text, "BOUND")) {
      Formula f = parse(text.substr(5));
      if (auto b = as_bound_fact(f)) return *b;
      throw FormatError("BOUND needs the form [body]_{x} <rel> <rational>");
    }
    Formula f = parse(text);
    if (auto b = as_bound_fact(f)) return *b;
    return Fact::holds(f);
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::vector<Fact> parse_kb(std::string_view text) {
  std::vector<Fact> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      if (!starts_with_keyword(line, "HOLDS") && !starts_with_keyword(line, "BOUND")) {
        throw FormatError("line " + std::to_string(line_no) + ": expected HOLDS or BOUND");
      }
      try {
        out.push_back(parse_fact(line));
      } catch (const SyntaxError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
      } catch (const FormatError& e) {
        throw FormatError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    start = end + 1;
  }
  return out;
}

std::string render_derivation(const Derivation& d) {
  std::ostringstream os;
  if (d.steps.empty()) {
    os << "goal already in knowledge base: " << d.goal.str() << "\n";
    return os.str();
  }
  for (std::size_t i = 0; i < d.steps.size(); ++i) {
    const auto& s = d.steps[i];
    os << (i + 1) << ". " << rule_name(s.rule) << "\n";
    for (const auto& p : s.premises) os << "     from  " << p.str() << "\n";
    os << "     infer " << s.conclusion.str() << "\n";
  }
  return os.str();
}

}  // namespace condlogic
