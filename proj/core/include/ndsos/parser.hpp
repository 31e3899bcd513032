#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ndsos/local_order.hpp"
#include "ndsos/polynomial.hpp"

namespace ndsos {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg + " at position " + std::to_string(position)), pos(position) {}
    std::size_t pos;
};

// Grammar: terms separated by +/-; term = [rational][*] monomial;
// rational = p or p/q; monomial = product of var[^k] with * separators.
// Whitespace is insignificant. Variable order fixes the exponent layout.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables);

// Variable names in order of first appearance in the text.
std::vector<std::string> infer_variables(const std::string& text);

// Canonical printing: terms sorted descending by `order` (so the constant
// term leads), coefficients as p or p/q. The zero polynomial prints as "0".
std::string to_string(const Polynomial& f, const std::vector<std::string>& variables,
                      const LocalOrder& order = LocalOrder::anti_graded_lex());

// Default names: x,y,z,w for n <= 4, else x1..xn.
std::vector<std::string> default_variables(std::size_t nvars);

}  // namespace ndsos
