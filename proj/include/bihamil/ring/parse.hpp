#pragma once

#include <string>
#include <vector>

#include "bihamil/ring/scalar.hpp"

namespace bihamil {

// Parses an expression over the named coordinates. Throws ParseError with the
// offending character offset on syntax errors, unknown names and division by
// the zero polynomial.
Scalar parse_scalar(const std::string& text, const std::vector<std::string>& coords);

bool is_identifier(const std::string& s);

}  // namespace bihamil
