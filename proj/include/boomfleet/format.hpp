#pragma once

#include <string>

namespace boomfleet {

/// Shortest decimal text that round-trips to the same double.
std::string format_double(double v);

/// Fixed-precision decimal text.
std::string format_fixed(double v, int digits);

}  // namespace boomfleet
