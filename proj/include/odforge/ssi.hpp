#pragma once

// Hurwitz sum-of-squares identities read off a real design:
// (a_0^2 + ... + a_{k-1}^2)(b_0^2 + ... + b_{n-1}^2) = c_0^2 + ... + c_{p-1}^2
// with c = (sum_i a_i A_i) b.

#include <cstdint>
#include <string>
#include <vector>

#include "odforge/bounds.hpp"
#include "odforge/design.hpp"

namespace odforge {

class SSIdentity {
 public:
  SSIdentity() = default;
  /// `matrices` holds k row-major p x n sign matrices. Validates shapes and
  /// entries; does not check the identity itself.
  SSIdentity(std::size_t p, std::size_t n, std::vector<std::vector<std::int8_t>> matrices);

  DesignParams params() const;
  std::size_t p() const { return p_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return matrices_.size(); }
  std::int8_t at(std::size_t i, std::size_t row, std::size_t col) const { return matrices_[i][row * n_ + col]; }
  const std::vector<std::vector<std::int8_t>>& matrices() const { return matrices_; }
  std::vector<std::vector<std::int8_t>>& matrices() { return matrices_; }

  /// Sum a_i A_i as a design over variables 0..k-1.
  DesignMatrix reassemble() const;

  friend bool operator==(const SSIdentity&, const SSIdentity&) = default;

 private:
  std::size_t p_ = 0, n_ = 0;
  std::vector<std::vector<std::int8_t>> matrices_;
};

/// First violated equation of A_i^T A_i = I, A_i^T A_j + A_j^T A_i = 0, or empty.
std::string check_pair_equations(const SSIdentity& id);

/// Coefficient matrices of a real design; throws ConstructionError for complex
/// designs or when the pair equations fail.
SSIdentity rod_to_ssi(const DesignMatrix& g);

struct IdentitySample {
  std::vector<std::int64_t> a, b, c;
  std::int64_t lhs = 0, rhs = 0;
};

/// c = (sum a_i A_i) b and both sides of the identity, in checked 64-bit
/// arithmetic (throws std::overflow_error).
IdentitySample evaluate_identity(const SSIdentity& id, const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b);

struct IdentityCheck {
  bool passed = true;
  int trials = 0;
  std::vector<IdentitySample> failures;  ///< at most a few
};

/// Random integer a, b with entries in [-100, 100].
IdentityCheck check_identity(const SSIdentity& id, int trials, std::uint64_t seed);

/// "c_0 = a_0 b_0 - a_1 b_1" lines under the identity header.
std::string render_identity_text(const SSIdentity& id);

}  // namespace odforge
