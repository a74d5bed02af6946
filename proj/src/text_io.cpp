#include "ppr/text_io.hpp"

#include <charconv>

namespace ppr {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace ppr
