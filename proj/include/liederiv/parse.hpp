#ifndef LIEDERIV_PARSE_HPP
#define LIEDERIV_PARSE_HPP

#include <string>
#include <vector>

#include "liederiv/derivation.hpp"
#include "liederiv/polynomial.hpp"
#include "liederiv/rational_function.hpp"

namespace liederiv {

// Text grammar: integers, x1..x9, + - * / ^, parentheses; whitespace is
// ignored. Derivations additionally use d1..d9 atoms, e.g. "x3*d1 + d2".
// Pass num_vars = 0 to infer it as the largest index that occurs.

RationalFunction parse_rational_function(const std::string& text, int num_vars = 0);

/// Like parse_rational_function but rejects values with a nontrivial denominator.
Polynomial parse_polynomial(const std::string& text, int num_vars = 0);

Derivation parse_derivation(const std::string& text, int num_vars = 0);

/// Semicolon-separated derivations sharing one inferred variable count.
std::vector<Derivation> parse_derivation_list(const std::string& text, int num_vars = 0);

} // namespace liederiv

#endif
