#pragma once

#include <stdexcept>
#include <string>

namespace bdim {

// Bad argument or out-of-domain request (index, α outside I, jet order, word).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The table violates a geometric requirement (convexity, disjointness, no-eclipse).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical procedure failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file or configuration (JSON syntax, schema, flags).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bdim
