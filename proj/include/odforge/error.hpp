#pragma once

#include <stdexcept>
#include <string>

namespace odforge {

/// Operands live in different Z_2^r.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested design is outside what the cubic-function constructions reach
/// (e.g. half-rate designs for n = 1 mod 8).
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on a structural input failed (a triple that cannot be split,
/// a design whose labels do not match a splitting, ...).
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A construction produced something its own invariants rule out. Always a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed design document or identity file.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace odforge
