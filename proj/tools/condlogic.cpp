// condlogic: evaluate formulas, run reproductions, derive facts, search for counterexamples.
//
// Exit codes: 0 ok, 1 reproduction failed / counterexample found / goal not derived,
// 2 usage error, 3 file, format or evaluation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "condlogic/bundled.hpp"
#include "condlogic/deduction.hpp"
#include "condlogic/error.hpp"
#include "condlogic/model.hpp"
#include "condlogic/parser.hpp"
#include "condlogic/semantics_3v.hpp"
#include "condlogic/semantics_lp.hpp"
#include "condlogic/verifier.hpp"

namespace cl = condlogic;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kInput = 3;

struct Options {
  std::string format = "text";
  bool decimal = false;

  bool structured() const { return format == "structured"; }
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `bundled:<name>` selects a model compiled into the library.
std::string model_text(const std::string& path) {
  const std::string prefix = "bundled:";
  if (path.rfind(prefix, 0) == 0) {
    try {
      return std::string(cl::bundled_text(path.substr(prefix.size())));
    } catch (const std::out_of_range& e) {
      throw InputError(e.what());
    }
  }
  return read_file(path);
}

std::set<std::string> domain_set(const cl::FiniteModel& m) { return {m.domain().begin(), m.domain().end()}; }

std::string show(const cl::Rational& r, const Options& o) {
  if (!o.decimal) return r.str();
  return r.str() + " (approx " + r.decimal(6) + ")";
}

void print_syntax_error(const cl::SyntaxError& e, std::string_view text) {
  auto s = e.span();
  std::cerr << "syntax error at " << s.start << ".." << s.end << ": " << e.what() << "\n";
  // Point at the span on its line.
  std::size_t line_start = text.rfind('\n', s.start == 0 ? 0 : s.start - 1);
  line_start = (line_start == std::string_view::npos || s.start == 0) ? 0 : line_start + 1;
  if (s.start < line_start) line_start = 0;
  std::size_t line_end = text.find('\n', s.start);
  if (line_end == std::string_view::npos) line_end = text.size();
  std::cerr << "  " << text.substr(line_start, line_end - line_start) << "\n  "
            << std::string(s.start - line_start, ' ')
            << std::string(std::max<std::size_t>(1, std::min(s.end, line_end) - s.start), '^') << "\n";
  if (!e.expected().empty()) {
    std::cerr << "  expected:";
    for (const auto& x : e.expected()) std::cerr << " " << x;
    std::cerr << "\n";
  }
}

// ---- eval ---------------------------------------------------------------------------

struct EvalArgs {
  std::string model;
  std::string formula;
  std::string file;
  std::string semantics = "2v";
  std::vector<std::string> assign;
};

int run_eval(const EvalArgs& a, const Options& o) {
  cl::FiniteModel m = cl::load_model(model_text(a.model));
  cl::ParseOptions po{domain_set(m)};
  std::vector<std::string> sources;
  std::string text;
  if (!a.file.empty()) {
    text = read_file(a.file);
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      if (line.find_first_not_of(" \t\r") != std::string::npos) sources.push_back(line);
    }
  } else {
    sources.push_back(a.formula);
  }
  cl::Assignment env;
  for (const auto& kv : a.assign) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw InputError("--assign expects var=constant, got " + kv);
    env[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  const bool three = a.semantics == "3v";

  json results = json::array();
  for (const auto& src : sources) {
    std::optional<cl::Expression> parsed;
    try {
      parsed = cl::parse_expression(src, po);
    } catch (const cl::SyntaxError& err) {
      print_syntax_error(err, src);
      return kInput;
    }
    const cl::Expression& e = *parsed;
    std::string value;
    if (auto* f = std::get_if<cl::Formula>(&e)) {
      value = three ? std::string(1, cl::truth_char(cl::eval3(m, env, *f))) : (cl::eval2(m, env, *f) ? "true" : "false");
    } else {
      const auto& t = std::get<cl::ProbTerm>(e);
      if (three) {
        cl::P1Value v = cl::eval_term3(m, env, t);
        value = v.defined() ? show(v.value(), o) : "UNDEFINED";
      } else {
        value = show(cl::eval_term(m, env, t), o);
      }
    }
    if (o.structured()) {
      results.push_back({{"input", src}, {"value", value}});
    } else {
      std::cout << value << "\n";
    }
  }
  if (o.structured()) std::cout << json{{"semantics", a.semantics}, {"results", results}}.dump(2) << "\n";
  return kOk;
}

// ---- repro ----------------------------------------------------------------------------

int run_repro(const std::string& name, const Options& o) {
  std::vector<std::string> names;
  if (name == "all") {
    names = cl::repro_names();
  } else {
    const auto& known = cl::repro_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      std::cerr << "unknown reproduction '" << name << "'; choose from:";
      for (const auto& n : known) std::cerr << " " << n;
      std::cerr << " all\n";
      return kUsage;
    }
    names = {name};
  }
  bool all_pass = true;
  json reports = json::array();
  for (const auto& n : names) {
    cl::ReproReport r = cl::repro(n);
    all_pass = all_pass && r.passed();
    if (o.structured()) {
      reports.push_back(r.json());
    } else {
      std::cout << r.text();
      if (names.size() > 1) std::cout << "\n";
    }
  }
  if (o.structured()) {
    std::cout << (names.size() == 1 ? reports[0] : json{{"reports", reports}, {"verdict", all_pass ? "PASS" : "FAIL"}})
                     .dump(2)
              << "\n";
  } else if (names.size() > 1) {
    std::cout << "all: " << (all_pass ? "PASS" : "FAIL") << "\n";
  }
  return all_pass ? kOk : kFailed;
}

// ---- derive ------------------------------------------------------------------------------

struct DeriveArgs {
  std::string kb;
  std::string goal;
  std::size_t budget = 10;
  std::string check_model;
};

int run_derive(const DeriveArgs& a, const Options& o) {
  std::vector<cl::Fact> kb = cl::parse_kb(read_file(a.kb));
  cl::Fact goal = [&] {
    try {
      return cl::parse_fact(a.goal);
    } catch (const cl::SyntaxError& e) {
      print_syntax_error(e, a.goal);
      throw;
    }
  }();
  cl::DeriveOptions opts;
  opts.budget = a.budget;
  auto d = cl::derive(kb, goal, opts);
  std::optional<cl::SoundnessReport> report;
  if (d && !a.check_model.empty()) report = cl::check_soundness(*d, cl::load_model(model_text(a.check_model)));

  if (o.structured()) {
    json j;
    j["goal"] = goal.str();
    j["found"] = d.has_value();
    if (d) {
      j["steps"] = json::array();
      for (std::size_t i = 0; i < d->steps.size(); ++i) {
        const auto& s = d->steps[i];
        json step{{"rule", std::string(cl::rule_name(s.rule))}, {"conclusion", s.conclusion.str()}};
        step["premises"] = json::array();
        for (const auto& p : s.premises) step["premises"].push_back(p.str());
        if (report) {
          step["premises_true"] = report->steps[i].premises_true;
          step["conclusion_true"] = report->steps[i].conclusion_true;
          step["locally_sound"] = report->steps[i].locally_sound;
        }
        j["steps"].push_back(step);
      }
      if (report) {
        j["kb_true"] = report->kb_true;
        j["goal_true"] = report->goal_true;
      }
    }
    std::cout << j.dump(2) << "\n";
    return d ? kOk : kFailed;
  }

  if (!d) {
    std::cout << "NOT FOUND\n";
    return kFailed;
  }
  std::cout << cl::render_derivation(*d);
  if (report) {
    std::cout << "\nsoundness on " << a.check_model << ":\n";
    for (std::size_t i = 0; i < kb.size(); ++i) {
      std::cout << "  kb   " << (report->kb_true[i] ? "true " : "false") << "  " << kb[i].str() << "\n";
    }
    for (std::size_t i = 0; i < report->steps.size(); ++i) {
      const auto& s = report->steps[i];
      bool premises = std::all_of(s.premises_true.begin(), s.premises_true.end(), [](bool b) { return b; });
      std::cout << "  step " << (i + 1) << "  premises " << (premises ? "true " : "false") << "  conclusion "
                << (s.conclusion_true ? "true " : "false") << "  " << (s.locally_sound ? "sound" : "UNSOUND") << "\n";
    }
    std::cout << "  goal " << (report->goal_true ? "true" : "false") << "\n";
  }
  return kOk;
}

// ---- search ----------------------------------------------------------------------------------

struct SearchArgs {
  std::string property;
  std::size_t max_domain = 3;
  bool allow_u = false;
  bool exhaustive = false;
  bool random = false;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::uint64_t budget = 10'000'000;
};

int run_search(const SearchArgs& a, const Options& o) {
  const auto& known = cl::property_names();
  if (std::find(known.begin(), known.end(), a.property) == known.end()) {
    std::cerr << "unknown property '" << a.property << "'; choose from:";
    for (const auto& n : known) std::cerr << " " << n;
    std::cerr << "\n";
    return kUsage;
  }
  if (a.exhaustive == a.random) {
    std::cerr << "choose exactly one of --exhaustive and --random\n";
    return kUsage;
  }
  cl::SearchSpace space;
  space.max_domain = a.max_domain;
  space.allow_u = a.allow_u;
  cl::SearchMode mode;
  mode.exhaustive = a.exhaustive;
  mode.seed = a.seed;
  mode.trials = a.trials;
  mode.budget = a.budget;
  cl::SearchOutcome out;
  try {
    out = cl::search_counterexample(a.property, space, mode);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  }
  if (o.structured()) {
    std::cout << out.json().dump(2) << "\n";
  } else {
    std::cout << out.text();
  }
  return out.counterexample ? kFailed : kOk;
}

// ---- transfer --------------------------------------------------------------------------------

struct TransferArgs {
  std::string model;
  std::string alpha;
  std::string beta;
  std::string var = "x";
};

int run_transfer(const TransferArgs& a, const Options& o) {
  cl::FiniteModel m = cl::load_model(model_text(a.model));
  cl::ParseOptions po{domain_set(m)};
  cl::Formula alpha = cl::parse(a.alpha, po);
  cl::Formula beta = cl::parse(a.beta, po);
  cl::TransferReport t = cl::transfer_experiment(m, alpha, beta, a.var);
  if (o.structured()) {
    std::cout << json{{"implication", t.implication.str()},
                      {"conditional", t.conditional.str()},
                      {"restricted_implication", t.restricted_implication.str()},
                      {"restricted_beta", t.restricted_beta.str()},
                      {"local_invariant", t.local_invariant}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << t.text();
  }
  return t.local_invariant ? kOk : kFailed;
}

// ---- parse -----------------------------------------------------------------------------------

int run_parse(const std::string& text, const Options& o) {
  std::optional<cl::Expression> parsed;
  try {
    parsed = cl::parse_expression(text);
  } catch (const cl::SyntaxError& err) {
    print_syntax_error(err, text);
    return kInput;
  }
  const cl::Expression& e = *parsed;
  std::string canonical = std::visit([](const auto& v) { return cl::render(v); }, e);
  cl::Expression again = cl::parse_expression(canonical);
  bool round_trip = again == e;
  if (o.structured()) {
    std::cout << json{{"canonical", canonical}, {"round_trip", round_trip}}.dump(2) << "\n";
  } else {
    std::cout << canonical << "\n";
  }
  return round_trip ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical first-order logic over finite models"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  if (const char* env = std::getenv("CONDLOGIC_FORMAT")) opts.format = env;
  app.add_option("--format", opts.format, "Output format (default from CONDLOGIC_FORMAT)")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--decimal", opts.decimal, "Also print approximate decimals");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula or term on a model");
  eval->add_option("--model", eval_args.model, "Model file, or bundled:<name>")->required();
  auto* formula_opt = eval->add_option("--formula", eval_args.formula, "Formula or term text");
  auto* file_opt = eval->add_option("--file", eval_args.file, "File with one formula per line");
  formula_opt->excludes(file_opt);
  eval->add_option("--semantics", eval_args.semantics, "2v or 3v")->check(CLI::IsMember({"2v", "3v"}));
  eval->add_option("--assign", eval_args.assign, "Free variable binding var=constant");

  std::string repro_name;
  auto* repro = app.add_subcommand("repro", "Run a named reproduction");
  repro->add_option("name", repro_name, "Reproduction name or 'all'")->required();

  DeriveArgs derive_args;
  auto* derive = app.add_subcommand("derive", "Search for a derivation of a goal fact");
  derive->add_option("--kb", derive_args.kb, "Knowledge base file")->required();
  derive->add_option("--goal", derive_args.goal, "Goal fact")->required();
  derive->add_option("--budget", derive_args.budget, "Maximum chain depth")->check(CLI::PositiveNumber);
  derive->add_option("--check-model", derive_args.check_model, "Check each step on this model");

  SearchArgs search_args;
  auto* search = app.add_subcommand("search", "Search for a counterexample to a property");
  search->add_option("--property", search_args.property, "Property id")->required();
  search->add_option("--max-domain", search_args.max_domain, "Largest domain size")
      ->required()
      ->check(CLI::PositiveNumber);
  search->add_flag("--allow-u", search_args.allow_u, "Allow U in generated models");
  search->add_flag("--exhaustive", search_args.exhaustive, "Enumerate every model");
  search->add_flag("--random", search_args.random, "Sample random models");
  search->add_option("--seed", search_args.seed, "Random seed");
  search->add_option("--trials", search_args.trials, "Random models to draw");
  search->add_option("--budget", search_args.budget, "Cap on models for exhaustive search");

  TransferArgs transfer_args;
  auto* transfer = app.add_subcommand("transfer", "Compare implication and conditional under restriction");
  transfer->add_option("--model", transfer_args.model, "Model file, or bundled:<name>")->required();
  transfer->add_option("--alpha", transfer_args.alpha, "Condition a")->required();
  transfer->add_option("--beta", transfer_args.beta, "Consequent b")->required();
  transfer->add_option("--var", transfer_args.var, "Variable of the condition");

  std::string parse_text;
  auto* parse = app.add_subcommand("parse", "Print the canonical rendering");
  parse->add_option("--formula", parse_text, "Formula or term text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (opts.format != "text" && opts.format != "structured") {
    std::cerr << "unknown format '" << opts.format << "' (text or structured)\n";
    return kUsage;
  }

  try {
    if (*eval) {
      if (eval_args.formula.empty() == eval_args.file.empty()) {
        std::cerr << "eval needs exactly one of --formula and --file\n";
        return kUsage;
      }
      return run_eval(eval_args, opts);
    }
    if (*repro) return run_repro(repro_name, opts);
    if (*derive) return run_derive(derive_args, opts);
    if (*search) return run_search(search_args, opts);
    if (*transfer) return run_transfer(transfer_args, opts);
    if (*parse) return run_parse(parse_text, opts);
  } catch (const cl::SyntaxError& e) {
    std::cerr << "syntax error at " << e.span().start << ".." << e.span().end << ": " << e.what() << "\n";
    return kInput;
  } catch (const cl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kUsage;
}
