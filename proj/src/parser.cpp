#include "condlogic/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>
#include <variant>

#include "condlogic/structure.hpp"

namespace condlogic {

namespace {

enum class Tok {
  Ident,
  Constant,  // @name
  Number,
  LParen,
  RParen,
  LBracket,
  RBracket,
  Underscore,
  LBrace,
  RBrace,
  Comma,
  Dot,
  Bang,
  Amp,
  Bar,
  Arrow,
  Squiggle,
  Plus,
  Minus,
  Star,
  Rel,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t start, std::size_t end) {
    out.push_back({kind, std::string(text.substr(start, end - start)), {start, end}});
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      push(Tok::Ident, start, i);
      continue;
    }
    if (c == '@') {
      ++i;
      if (i >= text.size() || !ident_char(text[i])) {
        throw SyntaxError("expected constant name after '@'", {start, i}, {"identifier"});
      }
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back({Tok::Constant, std::string(text.substr(start + 1, i - start - 1)), {start, i}});
      continue;
    }
    if (digit(c)) {
      while (i < text.size() && digit(text[i])) ++i;
      if (i + 1 < text.size() && text[i] == '.' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      } else if (i + 1 < text.size() && text[i] == '/' && digit(text[i + 1])) {
        ++i;
        while (i < text.size() && digit(text[i])) ++i;
      }
      push(Tok::Number, start, i);
      continue;
    }
    auto two = text.substr(i, 2);
    if (two == "->") { push(Tok::Arrow, i, i + 2); i += 2; continue; }
    if (two == "~>") { push(Tok::Squiggle, i, i + 2); i += 2; continue; }
    if (two == "<=" || two == ">=") { push(Tok::Rel, i, i + 2); i += 2; continue; }
    Tok kind;
    switch (c) {
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case '_': kind = Tok::Underscore; break;
      case '{': kind = Tok::LBrace; break;
      case '}': kind = Tok::RBrace; break;
      case ',': kind = Tok::Comma; break;
      case '.': kind = Tok::Dot; break;
      case '!': kind = Tok::Bang; break;
      case '&': kind = Tok::Amp; break;
      case '|': kind = Tok::Bar; break;
      case '+': kind = Tok::Plus; break;
      case '-': kind = Tok::Minus; break;
      case '*': kind = Tok::Star; break;
      case '<':
      case '>':
      case '=': kind = Tok::Rel; break;
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", {i, i + 1});
    }
    push(kind, i, i + 1);
    ++i;
  }
  out.push_back({Tok::End, "", {text.size(), text.size()}});
  return out;
}

bool is_keyword(std::string_view s) {
  return s == "forall" || s == "exists" || s == "given" || s == "P1" || s == "P2";
}

Relation relation_of(std::string_view s) {
  if (s == "<") return Relation::Less;
  if (s == "<=") return Relation::LessEq;
  if (s == "=") return Relation::Eq;
  if (s == ">=") return Relation::GreaterEq;
  return Relation::Greater;
}

// Precedence levels, loosest first.
enum Level : int {
  kCompare = 0,
  kCond = 1,
  kImp = 2,
  kOr = 3,
  kAnd = 4,
  kNot = 5,
  kSum = 6,
  kProduct = 7,
  kPrimary = 8,
};

using Value = std::variant<Formula, ProbTerm>;

struct Parsed {
  Value value;
  SourceSpan span;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Formula parse_all() {
    Parsed p = parse_level(kCompare);
    if (peek().kind != Tok::End) {
      throw SyntaxError("unexpected " + describe(peek()), peek().span, {"end of input"});
    }
    return as_formula(p);
  }

  std::variant<Formula, ProbTerm> parse_any() {
    Parsed p = parse_level(kCompare);
    if (peek().kind != Tok::End) {
      throw SyntaxError("unexpected " + describe(peek()), peek().span, {"end of input"});
    }
    return p.value;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (peek().kind != kind) {
      throw SyntaxError("expected " + what + " but found " + describe(peek()), peek().span, {what});
    }
    return advance();
  }

  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  static Formula as_formula(const Parsed& p) {
    if (auto* f = std::get_if<Formula>(&p.value)) return *f;
    throw SyntaxError("expected a formula, found a probability term", p.span, {"formula"});
  }

  static ProbTerm as_term(const Parsed& p) {
    if (auto* t = std::get_if<ProbTerm>(&p.value)) return *t;
    throw SyntaxError("expected a probability term, found a formula", p.span, {"term"});
  }

  static SourceSpan join(SourceSpan a, SourceSpan b) { return {a.start, b.end}; }

  Parsed parse_level(int level) {
    switch (level) {
      case kCompare: return parse_compare();
      case kCond: return parse_right_assoc(Tok::Squiggle, kCond);
      case kImp: return parse_right_assoc(Tok::Arrow, kImp);
      case kOr: return parse_left_assoc(Tok::Bar, kOr);
      case kAnd: return parse_left_assoc(Tok::Amp, kAnd);
      case kNot: return parse_not();
      case kSum: return parse_sum();
      case kProduct: return parse_product();
      default: return parse_primary();
    }
  }

  Parsed parse_compare() {
    Parsed lhs = parse_level(kCond);
    if (peek().kind != Tok::Rel) return lhs;
    Relation rel = relation_of(advance().text);
    ProbTerm left = as_term(lhs);
    Parsed rhs = parse_level(kCond);
    ProbTerm right = as_term(rhs);
    if (peek().kind == Tok::Rel) {
      throw SyntaxError("comparisons do not chain; parenthesize", peek().span, {"end of comparison"});
    }
    return {Formula::compare(left, rel, right), join(lhs.span, rhs.span)};
  }

  Parsed parse_right_assoc(Tok op, int level) {
    Parsed lhs = parse_level(level + 1);
    if (!accept(op)) return lhs;
    Formula left = as_formula(lhs);
    Parsed rhs = parse_level(level);
    Formula right = as_formula(rhs);
    Formula f = op == Tok::Arrow ? Formula::implication(left, right) : Formula::conditional(left, right);
    return {f, join(lhs.span, rhs.span)};
  }

  Parsed parse_left_assoc(Tok op, int level) {
    Parsed acc = parse_level(level + 1);
    while (peek().kind == op) {
      advance();
      Formula left = as_formula(acc);
      Parsed rhs = parse_level(level + 1);
      Formula right = as_formula(rhs);
      Formula f = op == Tok::Amp ? Formula::conjunction(left, right) : Formula::disjunction(left, right);
      acc = {f, join(acc.span, rhs.span)};
    }
    return acc;
  }

  Parsed parse_not() {
    if (peek().kind != Tok::Bang) return parse_level(kSum);
    SourceSpan start = advance().span;
    Parsed operand = parse_not();
    return {Formula::negation(as_formula(operand)), join(start, operand.span)};
  }

  Parsed parse_sum() {
    Parsed acc = parse_level(kProduct);
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool plus = advance().kind == Tok::Plus;
      ProbTerm left = as_term(acc);
      Parsed rhs = parse_level(kProduct);
      ProbTerm right = as_term(rhs);
      acc = {plus ? ProbTerm::add(left, right) : ProbTerm::sub(left, right), join(acc.span, rhs.span)};
    }
    return acc;
  }

  Parsed parse_product() {
    Parsed acc = parse_level(kPrimary);
    while (accept(Tok::Star)) {
      ProbTerm left = as_term(acc);
      Parsed rhs = parse_level(kPrimary);
      acc = {ProbTerm::mul(left, as_term(rhs)), join(acc.span, rhs.span)};
    }
    return acc;
  }

  std::string expect_variable() {
    const Token& t = expect(Tok::Ident, "variable");
    if (is_keyword(t.text)) throw SyntaxError("keyword '" + t.text + "' used as a variable", t.span, {"variable"});
    return t.text;
  }

  std::vector<std::string> parse_variable_list(SourceSpan where) {
    std::vector<std::string> vars;
    vars.push_back(expect_variable());
    while (accept(Tok::Comma)) vars.push_back(expect_variable());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (std::find(vars.begin(), vars.begin() + static_cast<long>(i), vars[i]) != vars.begin() + static_cast<long>(i)) {
        throw SyntaxError("duplicate bound variable '" + vars[i] + "'", {where.start, peek().span.start});
      }
    }
    return vars;
  }

  Parsed parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        SourceSpan start = advance().span;
        Parsed inner = parse_level(kCompare);
        SourceSpan end = expect(Tok::RParen, "')'").span;
        return {inner.value, join(start, end)};
      }
      case Tok::Number: {
        advance();
        return {ProbTerm::constant(*Rational::parse(t.text)), t.span};
      }
      case Tok::Minus: {
        SourceSpan start = advance().span;
        const Token& num = expect(Tok::Number, "number");
        return {ProbTerm::constant(-*Rational::parse(num.text)), join(start, num.span)};
      }
      case Tok::LBracket: return parse_bracket();
      case Tok::Ident:
        if (t.text == "forall" || t.text == "exists") return parse_quantifier();
        if (t.text == "P1" || t.text == "P2") return parse_probability_quantifier();
        if (t.text == "given") {
          throw SyntaxError("unexpected 'given' outside a conditional term", t.span, {"formula"});
        }
        return parse_atom();
      default:
        throw SyntaxError("unexpected " + describe(t), t.span,
                          {"formula", "term", "'('", "'['", "'!'", "number", "'forall'", "'exists'", "'P1'", "'P2'"});
    }
  }

  Parsed parse_quantifier() {
    const Token& kw = advance();
    bool universal = kw.text == "forall";
    auto vars = parse_variable_list(kw.span);
    expect(Tok::Dot, "'.'");
    Parsed body = parse_level(kCompare);
    Formula f = as_formula(body);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      f = universal ? Formula::forall(*it, f) : Formula::exists(*it, f);
    }
    return {f, join(kw.span, body.span)};
  }

  Parsed parse_probability_quantifier() {
    const Token& kw = advance();
    bool first = kw.text == "P1";
    auto vars = parse_variable_list(kw.span);
    expect(Tok::Dot, "'.'");
    Parsed body = parse_level(kCond);
    Formula f = as_formula(body);
    return {first ? ProbTerm::p1(vars, f) : ProbTerm::p2(vars, f), join(kw.span, body.span)};
  }

  Parsed parse_bracket() {
    SourceSpan start = advance().span;
    Formula body = as_formula(parse_level(kCompare));
    std::optional<Formula> condition;
    if (at_keyword("given")) {
      advance();
      condition = as_formula(parse_level(kCompare));
    }
    expect(Tok::RBracket, condition ? "']'" : "']' or 'given'");
    expect(Tok::Underscore, "'_'");
    expect(Tok::LBrace, "'{'");
    auto vars = parse_variable_list(start);
    SourceSpan end = expect(Tok::RBrace, "'}'").span;
    ProbTerm t = condition ? ProbTerm::conditional(body, *condition, vars) : ProbTerm::proportion(body, vars);
    return {t, join(start, end)};
  }

  Parsed parse_atom() {
    const Token& name = advance();
    if (is_keyword(name.text)) throw SyntaxError("unexpected keyword '" + name.text + "'", name.span, {"formula"});
    std::vector<Term> args;
    SourceSpan end = name.span;
    if (accept(Tok::LParen)) {
      if (peek().kind != Tok::RParen) {
        do {
          const Token& a = peek();
          if (a.kind == Tok::Constant) {
            advance();
            args.push_back(Term::constant(a.text));
          } else {
            args.push_back(Term::variable(expect_variable()));
          }
        } while (accept(Tok::Comma));
      }
      end = expect(Tok::RParen, "')' or ','").span;
    }
    return {Formula::atom(name.text, std::move(args)), join(name.span, end)};
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

// ---- resolution of constants ------------------------------------------------

class ConstantResolver {
 public:
  explicit ConstantResolver(const std::set<std::string>& constants) : constants_(constants) {}

  Formula visit(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom: {
        auto args = f.args();
        for (auto& a : args) {
          if (a.is_variable() && constants_.count(a.name) && !in_scope(a.name)) a = Term::constant(a.name);
        }
        return Formula::atom(f.predicate(), std::move(args));
      }
      case Formula::Kind::Not: return Formula::negation(visit(f.operand()));
      case Formula::Kind::And: return Formula::conjunction(visit(f.lhs()), visit(f.rhs()));
      case Formula::Kind::Or: return Formula::disjunction(visit(f.lhs()), visit(f.rhs()));
      case Formula::Kind::Imp: return Formula::implication(visit(f.lhs()), visit(f.rhs()));
      case Formula::Kind::Cond: return Formula::conditional(visit(f.lhs()), visit(f.rhs()));
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        scope_.push_back(f.variable());
        Formula body = visit(f.body());
        scope_.pop_back();
        return f.kind() == Formula::Kind::Forall ? Formula::forall(f.variable(), body)
                                                 : Formula::exists(f.variable(), body);
      }
      case Formula::Kind::Compare:
        return Formula::compare(visit(f.left_term()), f.relation(), visit(f.right_term()));
    }
    return f;
  }

  ProbTerm visit(const ProbTerm& t) {
    switch (t.kind()) {
      case ProbTerm::Kind::Const: return t;
      case ProbTerm::Kind::Add: return ProbTerm::add(visit(t.lhs()), visit(t.rhs()));
      case ProbTerm::Kind::Sub: return ProbTerm::sub(visit(t.lhs()), visit(t.rhs()));
      case ProbTerm::Kind::Mul: return ProbTerm::mul(visit(t.lhs()), visit(t.rhs()));
      default: break;
    }
    const auto depth = scope_.size();
    scope_.insert(scope_.end(), t.bound().begin(), t.bound().end());
    Formula body = visit(t.body());
    std::optional<Formula> condition;
    if (t.kind() == ProbTerm::Kind::CondProp) condition = visit(t.condition());
    scope_.resize(depth);
    switch (t.kind()) {
      case ProbTerm::Kind::Prop: return ProbTerm::proportion(body, t.bound());
      case ProbTerm::Kind::CondProp: return ProbTerm::conditional(body, *condition, t.bound());
      case ProbTerm::Kind::P1: return ProbTerm::p1(t.bound(), body);
      default: return ProbTerm::p2(t.bound(), body);
    }
  }

 private:
  bool in_scope(const std::string& v) const { return std::find(scope_.begin(), scope_.end(), v) != scope_.end(); }

  const std::set<std::string>& constants_;
  std::vector<std::string> scope_;
};

// ---- rendering ----------------------------------------------------------------

std::string join_vars(const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) out += ",";
    out += vars[i];
  }
  return out;
}

// `tail` is true when nothing that a right-extending construct could absorb
// follows this node in the output.
void render_formula(std::ostringstream& os, const Formula& f, int required, bool tail);
void render_term(std::ostringstream& os, const ProbTerm& t, int required, bool tail);

int level_of(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return kPrimary;
    case Formula::Kind::Not: return kNot;
    case Formula::Kind::And: return kAnd;
    case Formula::Kind::Or: return kOr;
    case Formula::Kind::Imp: return kImp;
    case Formula::Kind::Cond: return kCond;
    default: return kCompare;
  }
}

void render_formula(std::ostringstream& os, const Formula& f, int required, bool tail) {
  const bool extends_right = f.kind() == Formula::Kind::Forall || f.kind() == Formula::Kind::Exists;
  const bool parens = level_of(f) < required || (extends_right && !tail);
  if (parens) {
    os << '(';
    tail = true;
  }
  switch (f.kind()) {
    case Formula::Kind::Atom:
      os << f.predicate();
      if (!f.args().empty()) {
        os << '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) os << ',';
          const Term& a = f.args()[i];
          if (!a.is_variable()) os << '@';
          os << a.name;
        }
        os << ')';
      }
      break;
    case Formula::Kind::Not:
      os << '!';
      render_formula(os, f.operand(), kNot, tail);
      break;
    case Formula::Kind::And:
      render_formula(os, f.lhs(), kAnd, false);
      os << " & ";
      render_formula(os, f.rhs(), kNot, tail);
      break;
    case Formula::Kind::Or:
      render_formula(os, f.lhs(), kOr, false);
      os << " | ";
      render_formula(os, f.rhs(), kAnd, tail);
      break;
    case Formula::Kind::Imp:
      render_formula(os, f.lhs(), kOr, false);
      os << " -> ";
      render_formula(os, f.rhs(), kImp, tail);
      break;
    case Formula::Kind::Cond:
      render_formula(os, f.lhs(), kImp, false);
      os << " ~> ";
      render_formula(os, f.rhs(), kCond, tail);
      break;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      os << (f.kind() == Formula::Kind::Forall ? "forall " : "exists ") << f.variable() << ". ";
      render_formula(os, f.body(), kCompare, tail);
      break;
    case Formula::Kind::Compare:
      render_term(os, f.left_term(), kCond, true);
      os << ' ' << relation_symbol(f.relation()) << ' ';
      render_term(os, f.right_term(), kCond, tail);
      break;
  }
  if (parens) os << ')';
}

int level_of(const ProbTerm& t) {
  switch (t.kind()) {
    case ProbTerm::Kind::Add:
    case ProbTerm::Kind::Sub: return kSum;
    case ProbTerm::Kind::Mul: return kProduct;
    default: return kPrimary;
  }
}

void render_term(std::ostringstream& os, const ProbTerm& t, int required, bool tail) {
  const bool extends_right = t.kind() == ProbTerm::Kind::P1 || t.kind() == ProbTerm::Kind::P2;
  const bool parens = level_of(t) < required || (extends_right && !tail);
  if (parens) {
    os << '(';
    tail = true;
  }
  switch (t.kind()) {
    case ProbTerm::Kind::Const: os << t.value().str(); break;
    case ProbTerm::Kind::Prop:
      os << '[';
      render_formula(os, t.body(), kCompare, true);
      os << "]_{" << join_vars(t.bound()) << '}';
      break;
    case ProbTerm::Kind::CondProp:
      os << '[';
      render_formula(os, t.body(), kCompare, true);
      os << " given ";
      render_formula(os, t.condition(), kCompare, true);
      os << "]_{" << join_vars(t.bound()) << '}';
      break;
    case ProbTerm::Kind::P1:
    case ProbTerm::Kind::P2:
      os << (t.kind() == ProbTerm::Kind::P1 ? "P1 " : "P2 ") << join_vars(t.bound()) << ". ";
      render_formula(os, t.body(), kCond, tail);
      break;
    case ProbTerm::Kind::Add:
    case ProbTerm::Kind::Sub:
      render_term(os, t.lhs(), kSum, false);
      os << (t.kind() == ProbTerm::Kind::Add ? " + " : " - ");
      render_term(os, t.rhs(), kProduct, tail);
      break;
    case ProbTerm::Kind::Mul:
      render_term(os, t.lhs(), kProduct, false);
      os << " * ";
      render_term(os, t.rhs(), kPrimary, tail);
      break;
  }
  if (parens) os << ')';
}

}  // namespace

Formula parse(std::string_view text, const ParseOptions& options) {
  Formula f = Parser(text).parse_all();
  if (options.constants.empty()) return f;
  return resolve_constants(f, options.constants);
}

Expression parse_expression(std::string_view text, const ParseOptions& options) {
  Expression e = Parser(text).parse_any();
  if (options.constants.empty()) return e;
  ConstantResolver r(options.constants);
  return std::visit([&](const auto& v) -> Expression { return r.visit(v); }, e);
}

Formula parse_sentence(std::string_view text, const ParseOptions& options) {
  Formula f = parse(text, options);
  auto free = free_variable_vector(f);
  if (!free.empty()) {
    throw UnboundVariableError("sentence has free variable '" + free.front() + "'");
  }
  return f;
}

std::vector<Formula> parse_formula_file(std::string_view text, const ParseOptions& options) {
  std::vector<Formula> out;
  std::size_t line_start = 0;
  while (line_start <= text.size()) {
    std::size_t line_end = text.find('\n', line_start);
    if (line_end == std::string_view::npos) line_end = text.size();
    std::string_view line = text.substr(line_start, line_end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    bool blank = std::all_of(line.begin(), line.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (!blank) {
      try {
        out.push_back(parse(line, options));
      } catch (const SyntaxError& e) {
        SourceSpan s = e.span();
        throw SyntaxError(e.what(), {s.start + line_start, s.end + line_start}, e.expected());
      }
    }
    line_start = line_end + 1;
  }
  return out;
}

std::string render(const Formula& f) {
  std::ostringstream os;
  render_formula(os, f, kCompare, true);
  return os.str();
}

std::string render(const ProbTerm& t) {
  std::ostringstream os;
  render_term(os, t, kCompare, true);
  return os.str();
}

Formula resolve_constants(const Formula& f, const std::set<std::string>& constants) {
  return ConstantResolver(constants).visit(f);
}

}  // namespace condlogic
