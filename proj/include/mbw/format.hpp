#pragma once

#include <string>
#include <string_view>

namespace mbw {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Inverse of format_double; throws std::invalid_argument on junk.
double parse_double(std::string_view text);

}  // namespace mbw
