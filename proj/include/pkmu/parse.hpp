#pragma once

#include "pkmu/scalar.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pkmu {

/// Syntax or semantic error in scalar text, with the byte offset it occurred at.
struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
  std::size_t position;
};

/// Parses an expression over the given coordinate names into canonical form.
///
/// Grammar: integers, rationals via '/', `sqrt2`, coordinate names, `+ - * / ^`,
/// `exp(<linear form in coordinates with rational coefficients>)`, parentheses.
/// '/' requires a nonzero constant divisor; '^' a non-negative integer exponent.
Scalar parse_scalar(const std::string& text, const std::vector<std::string>& chart);

}  // namespace pkmu
