#ifndef POPPROTO_ERRORS_HPP
#define POPPROTO_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace popproto {

// Raised by the text parsers; `line` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Raised when an exhaustive exploration hits its node budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::size_t explored, const std::string& what)
      : std::runtime_error(what), explored_(explored) {}
  std::size_t explored() const { return explored_; }

 private:
  std::size_t explored_;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace popproto

#endif
