#pragma once

#include <string>

namespace ppr {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

}  // namespace ppr
