#ifndef CONDLOGIC_ERROR_HPP
#define CONDLOGIC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace condlogic {

// Byte offsets into the parsed text, start <= end.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, SourceSpan span, std::vector<std::string> expected = {})
      : Error(message), span_(span), expected_(std::move(expected)) {}

  SourceSpan span() const { return span_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  SourceSpan span_;
  std::vector<std::string> expected_;
};

class UnboundVariableError : public Error {
 public:
  using Error::Error;
};

// A 3-valued construct (|-, P1, P2) reached a 2-valued evaluator.
class FragmentError : public Error {
 public:
  using Error::Error;
};

class NonClassicalModelError : public Error {
 public:
  using Error::Error;
};

class OpenFormulaError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ArityError : public Error {
 public:
  using Error::Error;
};

class EmptyRestriction : public Error {
 public:
  using Error::Error;
};

class BudgetError : public Error {
 public:
  using Error::Error;
};

class SchemaMismatch : public Error {
 public:
  using Error::Error;
};

class SideConditionViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace condlogic

#endif  // CONDLOGIC_ERROR_HPP
