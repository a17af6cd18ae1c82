#pragma once

#include <string>
#include <string_view>

namespace krrlab {

// Shortest-safe text form of a double: 17 significant digits, "C" locale,
// so that parse_real(format_real(x)) == x bit for bit.
std::string format_real(double value);

// Strict parse of a whole token; throws std::invalid_argument on junk.
double parse_real(std::string_view text);
long long parse_integer(std::string_view text);

} // namespace krrlab
