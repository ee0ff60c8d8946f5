#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "hconv/errors.hpp"
#include "hconv/polynomial.hpp"

namespace hconv {

// Syntax or dimension error in a polynomial expression. offset() is the byte
// offset into the source text, expected() the token kinds that would have
// been accepted there.
class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, std::string found,
             std::string detail = {});

  std::size_t offset() const noexcept { return offset_; }
  const std::set<std::string>& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
  std::string found_;
};

// Largest accepted exponent and variable index.
inline constexpr unsigned kMaxExponent = 1000;
inline constexpr unsigned kMaxVariable = 64;

// Grammar:
//   expr     := ["-"] term (("+"|"-") term)*
//   term     := factor ("*" factor)*
//   factor   := base ("^" NAT)?
//   base     := RATIONAL | VAR | "(" expr ")"
//   VAR      := "x" NAT          (1-based)
//   RATIONAL := INT ("/" POSINT)?
// Whitespace between tokens is ignored. The dimension is the highest variable
// index (at least 1) unless dim is given; a variable beyond dim is an error.
Polynomial parse_polynomial(std::string_view text, std::optional<std::size_t> dim = std::nullopt);

// Canonical text: terms in descending graded-lex order, "3/2*x1^2*x2",
// unit coefficients and unit exponents omitted, joined by " + " / " - ".
// The zero polynomial prints as "0".
std::string to_string(const Polynomial& p);

}  // namespace hconv
