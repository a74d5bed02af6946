#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace ppr {

using NodeId = std::uint32_t;
using ExternalId = std::uint64_t;

// Bad caller input: out-of-range node, alpha outside (0,1), empty list, ...
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input that parsed but violates a graph invariant (e.g. a node with no
// out-arcs).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require(bool cond, const char* msg) {
  if (!cond) throw ArgumentError(msg);
}

inline void require_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
}

}  // namespace ppr
