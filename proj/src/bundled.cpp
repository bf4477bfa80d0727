#include "condlogic/bundled.hpp"

#include <stdexcept>
#include <utility>

namespace condlogic {

namespace {

const std::pair<std::string_view, std::string_view> kBundled[] = {
#include "condlogic/bundled_data.inc"
};

}  // namespace

std::vector<std::string> bundled_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : kBundled) out.emplace_back(name);
  return out;
}

std::string_view bundled_text(std::string_view name) {
  for (const auto& [n, text] : kBundled) {
    if (n == name) return text;
  }
  throw std::out_of_range("no bundled model named " + std::string(name));
}

FiniteModel bundled_model(std::string_view name) { return load_model(bundled_text(name)); }

WorldsEnsemble bundled_ensemble(std::string_view name) { return load_ensemble(bundled_text(name)); }

}  // namespace condlogic
