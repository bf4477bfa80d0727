#ifndef CONDLOGIC_TRUTH_HPP
#define CONDLOGIC_TRUTH_HPP

#include <cstdint>
#include <optional>
#include <string_view>

namespace condlogic {

// Ordered F < U < T so that the strong-Kleene quantifiers are min / max.
enum class Truth : std::uint8_t { F = 0, U = 1, T = 2 };

constexpr bool is_defined(Truth v) { return v != Truth::U; }
constexpr Truth from_bool(bool b) { return b ? Truth::T : Truth::F; }

constexpr Truth truth_not(Truth p) {
  switch (p) {
    case Truth::T: return Truth::F;
    case Truth::F: return Truth::T;
    default: return Truth::U;
  }
}

constexpr Truth truth_and(Truth p, Truth q) { return p < q ? p : q; }
constexpr Truth truth_or(Truth p, Truth q) { return p < q ? q : p; }

// p |- q: T iff p=T and q=T, F iff p=T and q=F, otherwise U.
constexpr Truth truth_cond(Truth p, Truth q) { return p == Truth::T ? q : Truth::U; }

constexpr char truth_char(Truth v) {
  switch (v) {
    case Truth::T: return 'T';
    case Truth::F: return 'F';
    default: return 'U';
  }
}

constexpr std::optional<Truth> truth_from_string(std::string_view s) {
  if (s == "T") return Truth::T;
  if (s == "F") return Truth::F;
  if (s == "U") return Truth::U;
  return std::nullopt;
}

}  // namespace condlogic

#endif  // CONDLOGIC_TRUTH_HPP
