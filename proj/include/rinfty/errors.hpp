#pragma once

#include <stdexcept>
#include <string>

namespace rinfty {

// Shape mismatches between matrices, vectors, groups and actions.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A matrix or block that must be invertible is not.
class InvertibilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Out-of-range numeric parameters (negative exponents, modulus < 2, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input: group specs, matrix JSON, witness files.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A brute-force oracle was asked to enumerate more elements than its bound.
class SizeBoundError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A matrix has no finite order within the configured search bound.
class OrderError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace rinfty
