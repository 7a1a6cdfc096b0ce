#pragma once

// Arithmetic on Z_2^r and the cubic binary function f whose parity fixes every
// sign in the designs built by this library.
//
// Bit j-1 of the machine word holds the j-th component u_j, so u_1 is the least
// significant bit. Ascending word value is the canonical order used for every
// set, row, column and variable numbering in the library.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace odforge {

class BinaryVector {
 public:
  static constexpr int kMaxDim = 32;

  constexpr BinaryVector() = default;
  /// Throws DimensionError unless 1 <= dim <= 32 and bits fits in dim bits.
  BinaryVector(std::uint32_t bits, int dim);

  /// From explicit components, u_1 first: from_components({1,0,1}).
  static BinaryVector from_components(const std::vector<int>& components);
  static BinaryVector zero(int dim) { return BinaryVector(0u, dim); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr int dim() const { return dim_; }
  /// Component u_j, 1-based.
  int component(int j) const;

  /// "(1,0,1)" with u_1 first.
  std::string to_string() const;

  friend constexpr bool operator==(const BinaryVector&, const BinaryVector&) = default;
  friend constexpr std::strong_ordering operator<=>(const BinaryVector& a, const BinaryVector& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_ = 0;
  int dim_ = 0;
};

constexpr std::uint32_t dim_mask(int dim) {
  return dim >= 32 ? 0xFFFFFFFFu : ((1u << dim) - 1u);
}

BinaryVector add(const BinaryVector& u, const BinaryVector& v);
inline BinaryVector operator+(const BinaryVector& u, const BinaryVector& v) { return add(u, v); }

int weight(const BinaryVector& u);

/// epsilon^j: the single 1 at position j (1-based).
BinaryVector basis_vector(int j, int dim);
/// epsilon = (1,...,1).
BinaryVector all_ones(int dim);

/// u + e. With the default e = epsilon^1 this flips the first coordinate.
BinaryVector hat(const BinaryVector& u, const BinaryVector& e);
BinaryVector hat(const BinaryVector& u);

/// f(u, v) in {0, 1}.
int f(const BinaryVector& u, const BinaryVector& v);

/// alpha(u) = f(u, u); 0 iff weight(u) = 0 mod 4.
int alpha(const BinaryVector& u);

/// f is linear in its second argument: f(u, v) = parity(v & f_mask(u)).
/// The mask is the whole closed form; everything else is a popcount.
std::uint32_t f_mask(const BinaryVector& u);

/// Every element of Z_2^dim in canonical order. dim <= 24.
std::vector<BinaryVector> all_vectors(int dim);

namespace detail {

/// Bit j of the result is u_1 + ... + u_{j+1} mod 2.
constexpr std::uint32_t prefix_parity(std::uint32_t b) {
  b ^= b << 1;
  b ^= b << 2;
  b ^= b << 4;
  b ^= b << 8;
  b ^= b << 16;
  return b;
}

/// binomial(w, 2) mod 2, which is bit 1 of w.
constexpr std::uint32_t pair_parity(int w) { return w < 2 ? 0u : (static_cast<std::uint32_t>(w) >> 1) & 1u; }

constexpr std::uint32_t mask_from_bits(std::uint32_t b, int w, std::uint32_t full) {
  std::uint32_t m = prefix_parity(b);
  if (w >= 1 && pair_parity(w - 1)) m ^= b;
  if (pair_parity(w)) m ^= ~b;
  return m & full;
}

}  // namespace detail

}  // namespace odforge
