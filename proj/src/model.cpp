#include "condlogic/model.hpp"

#include <set>

#include "condlogic/error.hpp"
#include "condlogic/semantics_lp.hpp"
#include "condlogic/structure.hpp"

namespace condlogic {

// ---- FiniteModel ---------------------------------------------------------------

FiniteModel::FiniteModel(std::vector<std::string> domain) : domain_(std::move(domain)) {
  if (domain_.empty()) throw FormatError("model domain must be nonempty");
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (domain_[i].empty()) throw FormatError("empty constant name in domain");
    if (!index_.emplace(domain_[i], i).second) {
      throw FormatError("constant '" + domain_[i] + "' listed twice in domain");
    }
  }
}

std::optional<std::size_t> FiniteModel::index_of(std::string_view constant) const {
  auto it = index_.find(std::string(constant));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void FiniteModel::declare(const std::string& name, std::size_t arity, Truth default_value) {
  if (auto it = predicates_.find(name); it != predicates_.end()) {
    if (it->second.arity != arity) {
      throw ArityError("predicate '" + name + "' redeclared with arity " + std::to_string(arity));
    }
    return;
  }
  std::size_t cells = 1;
  for (std::size_t i = 0; i < arity; ++i) cells *= domain_.size();
  predicates_.emplace(name, Predicate{arity, default_value, std::vector<Truth>(cells, default_value)});
}

const FiniteModel::Predicate* FiniteModel::find(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

std::size_t FiniteModel::offset(const Predicate& p, std::span<const std::size_t> args) const {
  std::size_t at = 0;
  for (std::size_t a : args) at = at * domain_.size() + a;
  (void)p;
  return at;
}

void FiniteModel::set(const std::string& name, std::span<const std::size_t> args, Truth value) {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw ArityError("predicate '" + name + "' is not declared");
  if (args.size() != it->second.arity) {
    throw ArityError("predicate '" + name + "' has arity " + std::to_string(it->second.arity) + ", got " +
                     std::to_string(args.size()) + " arguments");
  }
  for (std::size_t a : args) {
    if (a >= domain_.size()) throw DomainError("argument index outside the domain");
  }
  it->second.table[offset(it->second, args)] = value;
}

void FiniteModel::set(const std::string& name, const std::vector<std::string>& args, Truth value) {
  std::vector<std::size_t> idx;
  idx.reserve(args.size());
  for (const auto& a : args) {
    auto i = index_of(a);
    if (!i) throw DomainError("constant '" + a + "' is not in the domain");
    idx.push_back(*i);
  }
  set(name, idx, value);
}

Truth FiniteModel::value(const std::string& name, std::span<const std::size_t> args) const {
  auto it = predicates_.find(name);
  if (it == predicates_.end()) throw ArityError("predicate '" + name + "' is not interpreted by the model");
  if (args.size() != it->second.arity) {
    throw ArityError("predicate '" + name + "' has arity " + std::to_string(it->second.arity) + ", used with " +
                     std::to_string(args.size()) + " arguments");
  }
  return it->second.table[offset(it->second, args)];
}

bool FiniteModel::is_classical() const {
  for (const auto& [name, p] : predicates_) {
    for (Truth v : p.table) {
      if (v == Truth::U) return false;
    }
  }
  return true;
}

// ---- WorldsEnsemble ------------------------------------------------------------

WorldsEnsemble::WorldsEnsemble(std::vector<World> worlds) : worlds_(std::move(worlds)) {
  if (worlds_.empty()) throw FormatError("worlds ensemble must contain at least one world");
  Rational total;
  for (const auto& w : worlds_) {
    if (w.weight.sign() <= 0) throw FormatError("world weight " + w.weight.str() + " is not positive");
    total += w.weight;
  }
  if (total != Rational(1)) throw FormatError("world weights sum to " + total.str() + ", not 1");
}

// ---- JSON ----------------------------------------------------------------------

namespace {

using nlohmann::json;

Truth parse_truth(const json& v, const std::string& where) {
  if (!v.is_string()) throw FormatError(where + ": truth value must be a string \"T\", \"F\" or \"U\"");
  auto t = truth_from_string(v.get<std::string>());
  if (!t) throw FormatError(where + ": invalid truth value '" + v.get<std::string>() + "'");
  return *t;
}

std::vector<std::string> parse_tuple(const json& v, const std::string& where) {
  if (!v.is_array()) throw FormatError(where + ": tuple must be a list of constant names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw FormatError(where + ": tuple elements must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

FiniteModel model_from_json(const json& doc) {
  if (!doc.is_object()) throw FormatError("model document must be an object");
  if (!doc.contains("domain") || !doc["domain"].is_array()) throw FormatError("model needs a 'domain' list");
  std::vector<std::string> domain;
  for (const auto& d : doc["domain"]) {
    if (!d.is_string()) throw FormatError("domain entries must be strings");
    domain.push_back(d.get<std::string>());
  }
  FiniteModel m(std::move(domain));
  if (!doc.contains("predicates")) return m;
  const json& preds = doc["predicates"];
  if (!preds.is_object()) throw FormatError("'predicates' must be an object keyed by predicate name");
  for (const auto& [name, spec] : preds.items()) {
    const std::string where = "predicate '" + name + "'";
    if (!spec.is_object()) throw FormatError(where + " must be an object");
    if (!spec.contains("arity") || !spec["arity"].is_number_unsigned()) {
      throw FormatError(where + " needs a non-negative integer 'arity'");
    }
    const auto arity = spec["arity"].get<std::size_t>();
    Truth def = spec.contains("default") ? parse_truth(spec["default"], where) : Truth::F;
    m.declare(name, arity, def);
    std::set<std::vector<std::string>> seen;
    const std::pair<const char*, Truth> lists[] = {{"true", Truth::T}, {"false", Truth::F}, {"undef", Truth::U}};
    for (const auto& [key, value] : lists) {
      if (!spec.contains(key)) continue;
      if (!spec[key].is_array()) throw FormatError(where + ": '" + key + "' must be a list of tuples");
      for (const auto& tuple_doc : spec[key]) {
        auto tuple = parse_tuple(tuple_doc, where);
        if (tuple.size() != arity) {
          throw ArityError(where + " has arity " + std::to_string(arity) + " but lists a tuple of length " +
                           std::to_string(tuple.size()));
        }
        if (!seen.insert(tuple).second) throw FormatError(where + ": a tuple is listed more than once");
        m.set(name, tuple, value);
      }
    }
  }
  return m;
}

FiniteModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed model document: ") + e.what());
  }
  return model_from_json(doc);
}

json model_to_json(const FiniteModel& m) {
  json doc;
  doc["domain"] = m.domain();
  json preds = json::object();
  const std::size_t n = m.size();
  for (const auto& [name, p] : m.predicates()) {
    json spec;
    spec["arity"] = p.arity;
    spec["default"] = std::string(1, truth_char(p.default_value));
    json lists[3] = {json::array(), json::array(), json::array()};
    std::vector<std::size_t> args(p.arity, 0);
    for (std::size_t cell = 0; cell < p.table.size(); ++cell) {
      std::size_t rest = cell;
      for (std::size_t i = p.arity; i-- > 0;) {
        args[i] = rest % n;
        rest /= n;
      }
      Truth v = p.table[cell];
      if (v == p.default_value) continue;
      json tuple = json::array();
      for (std::size_t a : args) tuple.push_back(m.domain()[a]);
      lists[v == Truth::T ? 0 : v == Truth::F ? 1 : 2].push_back(tuple);
    }
    if (!lists[0].empty()) spec["true"] = lists[0];
    if (!lists[1].empty()) spec["false"] = lists[1];
    if (!lists[2].empty()) spec["undef"] = lists[2];
    preds[name] = spec;
  }
  doc["predicates"] = preds;
  return doc;
}

std::string save_model(const FiniteModel& m) { return model_to_json(m).dump(2) + "\n"; }

WorldsEnsemble load_ensemble(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("malformed ensemble document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("worlds") || !doc["worlds"].is_array()) {
    throw FormatError("ensemble needs a 'worlds' list");
  }
  std::vector<World> worlds;
  for (const auto& w : doc["worlds"]) {
    if (!w.is_object() || !w.contains("weight") || !w.contains("model")) {
      throw FormatError("each world needs 'weight' and 'model'");
    }
    if (!w["weight"].is_string()) throw FormatError("world weight must be a string such as \"1/10\"");
    auto weight = Rational::parse(w["weight"].get<std::string>());
    if (!weight) throw FormatError("invalid world weight '" + w["weight"].get<std::string>() + "'");
    worlds.push_back({*weight, model_from_json(w["model"])});
  }
  return WorldsEnsemble(std::move(worlds));
}

json ensemble_to_json(const WorldsEnsemble& e) {
  json worlds = json::array();
  for (const auto& w : e.worlds()) worlds.push_back({{"weight", w.weight.str()}, {"model", model_to_json(w.model)}});
  return {{"worlds", worlds}};
}

// ---- conditioning --------------------------------------------------------------

FiniteModel restrict(const FiniteModel& m, const Formula& condition, const std::string& variable) {
  if (!classical_fragment(condition)) throw FragmentError("restriction condition must be classical");
  auto free = free_variables(condition);
  if (free.size() != 1 || *free.begin() != variable) {
    throw UnboundVariableError("restriction condition must have exactly the free variable '" + variable + "'");
  }
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (eval2(m, {{variable, m.domain()[i]}}, condition)) kept.push_back(i);
  }
  if (kept.empty()) throw EmptyRestriction("no domain element satisfies the restriction condition");

  std::vector<std::string> domain;
  for (std::size_t i : kept) domain.push_back(m.domain()[i]);
  FiniteModel out(std::move(domain));
  const std::size_t k = kept.size();
  for (const auto& [name, p] : m.predicates()) {
    out.declare(name, p.arity, p.default_value);
    std::vector<std::size_t> local(p.arity, 0), global(p.arity, 0);
    std::size_t cells = 1;
    for (std::size_t i = 0; i < p.arity; ++i) cells *= k;
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t i = p.arity; i-- > 0;) {
        local[i] = rest % k;
        global[i] = kept[local[i]];
        rest /= k;
      }
      out.set(name, local, m.value(name, global));
    }
  }
  return out;
}

Rational world_prob(const WorldsEnsemble& e, const Formula& sentence) {
  if (!classical_fragment(sentence)) throw FragmentError("world_prob needs a classical sentence");
  if (auto free = free_variable_vector(sentence); !free.empty()) {
    throw OpenFormulaError("world_prob needs a closed sentence; '" + free.front() + "' is free");
  }
  Rational total;
  for (const auto& w : e.worlds()) {
    if (eval2(w.model, sentence)) total += w.weight;
  }
  return total;
}

// ---- generation ------------------------------------------------------------------

std::vector<std::string> generated_domain(std::size_t size) {
  std::vector<std::string> out;
  out.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.push_back("d" + std::to_string(i));
  return out;
}

namespace {

// Digit encoding shared by generation and enumeration.
constexpr Truth kDigitTruth[3] = {Truth::F, Truth::T, Truth::U};

std::size_t cells_for(std::size_t domain_size, std::size_t arity) {
  std::size_t c = 1;
  for (std::size_t i = 0; i < arity; ++i) c *= domain_size;
  return c;
}

FiniteModel empty_model(std::size_t domain_size, const ModelSpace& space) {
  FiniteModel m(generated_domain(domain_size));
  for (const auto& p : space.predicates) m.declare(p.name, p.arity, Truth::F);
  return m;
}

}  // namespace

FiniteModel random_model(std::size_t domain_size, const ModelSpace& space, std::mt19937_64& rng) {
  FiniteModel m = empty_model(domain_size, space);
  const std::uint64_t values = space.allow_u ? 3 : 2;
  for (const auto& p : space.predicates) {
    const std::size_t cells = cells_for(domain_size, p.arity);
    std::vector<std::size_t> args(p.arity, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t i = p.arity; i-- > 0;) {
        args[i] = rest % domain_size;
        rest /= domain_size;
      }
      m.set(p.name, args, kDigitTruth[rng() % values]);
    }
  }
  return m;
}

FiniteModel random_model(std::size_t domain_size, const ModelSpace& space, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_model(domain_size, space, rng);
}

std::optional<std::uint64_t> model_count(std::size_t domain_size, const ModelSpace& space) {
  const std::uint64_t values = space.allow_u ? 3 : 2;
  std::uint64_t count = 1;
  for (const auto& p : space.predicates) {
    const std::size_t cells = cells_for(domain_size, p.arity);
    for (std::size_t i = 0; i < cells; ++i) {
      if (count > UINT64_MAX / values) return std::nullopt;
      count *= values;
    }
  }
  return count;
}

ModelEnumerator::ModelEnumerator(std::size_t domain_size, ModelSpace space, std::uint64_t cap)
    : domain_size_(domain_size), space_(std::move(space)) {
  if (domain_size_ == 0) throw FormatError("domain size must be at least 1");
  auto count = model_count(domain_size_, space_);
  if (!count || *count > cap) {
    throw BudgetError("model space has " + (count ? std::to_string(*count) : std::string("more than 2^64")) +
                      " models, over the cap of " + std::to_string(cap));
  }
  count_ = *count;
  std::size_t total = 0;
  for (const auto& p : space_.predicates) total += cells_for(domain_size_, p.arity);
  digits_.assign(total, 0);
}

std::optional<FiniteModel> ModelEnumerator::next() {
  if (done_) return std::nullopt;
  FiniteModel m = empty_model(domain_size_, space_);
  std::size_t d = 0;
  for (const auto& p : space_.predicates) {
    const std::size_t cells = cells_for(domain_size_, p.arity);
    std::vector<std::size_t> args(p.arity, 0);
    for (std::size_t cell = 0; cell < cells; ++cell) {
      std::size_t rest = cell;
      for (std::size_t i = p.arity; i-- > 0;) {
        args[i] = rest % domain_size_;
        rest /= domain_size_;
      }
      m.set(p.name, args, kDigitTruth[digits_[d++]]);
    }
  }
  const std::uint8_t base = space_.allow_u ? 3 : 2;
  std::size_t i = 0;
  for (; i < digits_.size(); ++i) {
    if (++digits_[i] < base) break;
    digits_[i] = 0;
  }
  if (i == digits_.size()) done_ = true;
  return m;
}

UnaryProfileEnumerator::UnaryProfileEnumerator(std::size_t domain_size, ModelSpace space)
    : domain_size_(domain_size), space_(std::move(space)) {
  if (domain_size_ == 0) throw FormatError("domain size must be at least 1");
  for (const auto& p : space_.predicates) {
    if (p.arity != 1) throw ArityError("profile enumeration needs unary predicates; '" + p.name + "' is not");
  }
  const std::size_t base = space_.allow_u ? 3 : 2;
  type_count_ = 1;
  for (std::size_t i = 0; i < space_.predicates.size(); ++i) type_count_ *= base;
  counts_.assign(type_count_, 0);
  counts_[0] = domain_size_;
}

std::optional<FiniteModel> UnaryProfileEnumerator::next() {
  if (done_) return std::nullopt;
  FiniteModel m = empty_model(domain_size_, space_);
  const std::size_t base = space_.allow_u ? 3 : 2;
  std::size_t element = 0;
  for (std::size_t type = 0; type < type_count_; ++type) {
    for (std::size_t c = 0; c < counts_[type]; ++c, ++element) {
      std::size_t rest = type;
      for (const auto& p : space_.predicates) {
        const std::size_t arg[1] = {element};
        m.set(p.name, arg, kDigitTruth[rest % base]);
        rest /= base;
      }
    }
  }
  // Advance to the next composition of domain_size into type_count parts.
  std::size_t j = type_count_ - 1;
  while (j-- > 0) {
    if (counts_[j] > 0) break;
  }
  if (j == static_cast<std::size_t>(-1) || type_count_ == 1) {
    done_ = true;
  } else {
    const std::size_t tail = counts_[type_count_ - 1];
    counts_[type_count_ - 1] = 0;
    --counts_[j];
    counts_[j + 1] = tail + 1;
  }
  return m;
}

}  // namespace condlogic
