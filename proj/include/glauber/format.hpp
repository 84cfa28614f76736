#pragma once

#include <string>

namespace glauber {

/// Shortest-safe text for a double: 17 significant digits, "nan", "inf", "-inf".
std::string format_double(double x);

/// Inverse of format_double; throws std::invalid_argument on malformed text.
double parse_double(const std::string& text);

}  // namespace glauber
