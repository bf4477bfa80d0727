#ifndef CONDLOGIC_MODEL_HPP
#define CONDLOGIC_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "condlogic/formula.hpp"
#include "condlogic/rational.hpp"
#include "condlogic/truth.hpp"

namespace condlogic {

struct PredicateSignature {
  std::string name;
  std::size_t arity = 1;

  friend bool operator==(const PredicateSignature&, const PredicateSignature&) = default;
};

// Finite domain with 3-valued predicate tables. Classical models are the
// special case where no tuple maps to U.
class FiniteModel {
 public:
  struct Predicate {
    std::size_t arity = 0;
    Truth default_value = Truth::F;
    std::vector<Truth> table;  // dense, size |domain|^arity, row-major over argument indices

    friend bool operator==(const Predicate&, const Predicate&) = default;
  };

  // Throws FormatError on an empty domain or repeated names.
  explicit FiniteModel(std::vector<std::string> domain);

  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  std::optional<std::size_t> index_of(std::string_view constant) const;

  // Adds a predicate with every tuple set to `default_value`.
  // Throws ArityError if the name is already declared with another arity.
  void declare(const std::string& name, std::size_t arity, Truth default_value = Truth::F);

  void set(const std::string& name, std::span<const std::size_t> args, Truth value);
  void set(const std::string& name, const std::vector<std::string>& args, Truth value);

  // Throws ArityError for an undeclared predicate or a wrong argument count.
  Truth value(const std::string& name, std::span<const std::size_t> args) const;

  const std::map<std::string, Predicate>& predicates() const { return predicates_; }
  const Predicate* find(const std::string& name) const;

  bool is_classical() const;

  friend bool operator==(const FiniteModel&, const FiniteModel&) = default;

 private:
  std::size_t offset(const Predicate& p, std::span<const std::size_t> args) const;

  std::vector<std::string> domain_;
  std::map<std::string, std::size_t> index_;
  std::map<std::string, Predicate> predicates_;
};

struct World {
  Rational weight;
  FiniteModel model;
};

// Weighted finite set of models; weights are positive and sum to exactly 1.
class WorldsEnsemble {
 public:
  // Throws FormatError if the invariants do not hold.
  explicit WorldsEnsemble(std::vector<World> worlds);

  const std::vector<World>& worlds() const { return worlds_; }

 private:
  std::vector<World> worlds_;
};

// ---- file format (JSON) ------------------------------------------------------

FiniteModel load_model(std::string_view text);
FiniteModel model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const FiniteModel& m);
std::string save_model(const FiniteModel& m);

WorldsEnsemble load_ensemble(std::string_view text);
nlohmann::json ensemble_to_json(const WorldsEnsemble& e);

// ---- conditioning ------------------------------------------------------------

// Subpopulation {d : condition(d)} with tables restricted to it. `condition`
// must be classical with exactly one free variable `variable`.
FiniteModel restrict(const FiniteModel& m, const Formula& condition, const std::string& variable);

// Sum of the weights of the worlds where the closed classical sentence holds.
Rational world_prob(const WorldsEnsemble& e, const Formula& sentence);

// ---- generation and enumeration ------------------------------------------------

struct ModelSpace {
  std::vector<PredicateSignature> predicates;
  bool allow_u = false;
};

// Domain names used by generated models: d0, d1, ...
std::vector<std::string> generated_domain(std::size_t size);

// Each tuple uniform over {T, F} (or {T, U, F}); deterministic given the seed.
FiniteModel random_model(std::size_t domain_size, const ModelSpace& space, std::uint64_t seed);
FiniteModel random_model(std::size_t domain_size, const ModelSpace& space, std::mt19937_64& rng);

// Streams every model over a fixed domain exactly once, in odometer order.
class ModelEnumerator {
 public:
  // Throws BudgetError if the model count exceeds `cap`.
  ModelEnumerator(std::size_t domain_size, ModelSpace space, std::uint64_t cap);

  std::uint64_t count() const { return count_; }
  std::optional<FiniteModel> next();

 private:
  std::size_t domain_size_;
  ModelSpace space_;
  std::uint64_t count_ = 0;
  std::vector<std::uint8_t> digits_;
  bool done_ = false;
};

// v^(sum over predicates of domain_size^arity), or nullopt past 2^64.
std::optional<std::uint64_t> model_count(std::size_t domain_size, const ModelSpace& space);

// For unary-only signatures: one representative per isomorphism class, i.e.
// per multiset of element types. Proportions of formulas whose only free
// variable is the bound one agree across each class.
class UnaryProfileEnumerator {
 public:
  UnaryProfileEnumerator(std::size_t domain_size, ModelSpace space);

  std::optional<FiniteModel> next();

 private:
  std::size_t domain_size_;
  ModelSpace space_;
  std::size_t type_count_;
  std::vector<std::size_t> counts_;
  bool done_ = false;
};

}  // namespace condlogic

#endif  // CONDLOGIC_MODEL_HPP
