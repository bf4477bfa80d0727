#include "condlogic/rational.hpp"

#include <cctype>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace condlogic {

Rational::Rational(const Integer& numerator, const Integer& denominator) {
  if (denominator == 0) throw std::domain_error("rational with zero denominator");
  if (denominator < 0) {
    value_ = boost::multiprecision::cpp_rational(Integer(-numerator), Integer(-denominator));
  } else {
    value_ = boost::multiprecision::cpp_rational(numerator, denominator);
  }
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (is_integer()) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

double Rational::to_double() const { return value_.convert_to<double>(); }

std::string Rational::decimal(int digits) const {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << to_double();
  return os.str();
}

namespace {

std::optional<Rational::Integer> parse_digits(std::string_view text) {
  if (text.empty()) return std::nullopt;
  Rational::Integer value = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::optional<Rational> result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_digits(text.substr(0, slash));
    auto den = parse_digits(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    result = Rational(*num, *den);
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = parse_digits(text.substr(0, dot));
    auto frac_text = text.substr(dot + 1);
    auto frac = parse_digits(frac_text);
    if (!whole || !frac) return std::nullopt;
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_text.size(); ++i) scale *= 10;
    result = Rational(*whole * scale + *frac, scale);
  } else {
    auto whole = parse_digits(text);
    if (!whole) return std::nullopt;
    result = Rational(*whole, Integer(1));
  }
  if (negative) result = -*result;
  return result;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace condlogic
