#ifndef CONDLOGIC_BUNDLED_HPP
#define CONDLOGIC_BUNDLED_HPP

#include <string>
#include <string_view>
#include <vector>

#include "condlogic/model.hpp"

namespace condlogic {

// Model files compiled into the library: court, birds_ensemble,
// example4_witness, nested_witness.
std::vector<std::string> bundled_names();
// Raw JSON text; throws std::out_of_range for an unknown name.
std::string_view bundled_text(std::string_view name);

FiniteModel bundled_model(std::string_view name);
WorldsEnsemble bundled_ensemble(std::string_view name);

}  // namespace condlogic

#endif  // CONDLOGIC_BUNDLED_HPP
