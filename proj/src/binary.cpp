#include "odforge/binary.hpp"

#include <bit>
#include <sstream>

#include "odforge/error.hpp"

namespace odforge {

namespace {

void require_same_dim(const BinaryVector& u, const BinaryVector& v, const char* op) {
  if (u.dim() != v.dim()) {
    std::ostringstream msg;
    msg << op << ": dimension mismatch (" << u.dim() << " vs " << v.dim() << ")";
    throw DimensionError(msg.str());
  }
}

}  // namespace

BinaryVector::BinaryVector(std::uint32_t bits, int dim) : bits_(bits), dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DimensionError("BinaryVector: dimension must be in [1, 32], got " + std::to_string(dim));
  }
  if ((bits & ~dim_mask(dim)) != 0) {
    throw DimensionError("BinaryVector: bits exceed dimension " + std::to_string(dim));
  }
}

BinaryVector BinaryVector::from_components(const std::vector<int>& components) {
  std::uint32_t bits = 0;
  for (std::size_t j = 0; j < components.size(); ++j) {
    if (components[j] != 0 && components[j] != 1) {
      throw DimensionError("BinaryVector: components must be 0 or 1");
    }
    if (components[j] != 0 && j < 32) bits |= 1u << j;
  }
  return BinaryVector(bits, static_cast<int>(components.size()));
}

int BinaryVector::component(int j) const {
  if (j < 1 || j > dim_) {
    throw DimensionError("component index " + std::to_string(j) + " out of range");
  }
  return static_cast<int>((bits_ >> (j - 1)) & 1u);
}

std::string BinaryVector::to_string() const {
  std::string s = "(";
  for (int j = 0; j < dim_; ++j) {
    if (j) s += ',';
    s += ((bits_ >> j) & 1u) ? '1' : '0';
  }
  s += ')';
  return s;
}

BinaryVector add(const BinaryVector& u, const BinaryVector& v) {
  require_same_dim(u, v, "add");
  return BinaryVector(u.bits() ^ v.bits(), u.dim());
}

int weight(const BinaryVector& u) { return std::popcount(u.bits()); }

BinaryVector basis_vector(int j, int dim) {
  if (j < 1 || j > dim) {
    throw DimensionError("basis_vector: j=" + std::to_string(j) + " outside [1, " +
                         std::to_string(dim) + "]");
  }
  return BinaryVector(1u << (j - 1), dim);
}

BinaryVector all_ones(int dim) {
  if (dim < 1 || dim > BinaryVector::kMaxDim) {
    throw DimensionError("all_ones: bad dimension " + std::to_string(dim));
  }
  return BinaryVector(dim_mask(dim), dim);
}

BinaryVector hat(const BinaryVector& u, const BinaryVector& e) {
  require_same_dim(u, e, "hat");
  return BinaryVector(u.bits() ^ e.bits(), u.dim());
}

BinaryVector hat(const BinaryVector& u) { return BinaryVector(u.bits() ^ 1u, u.dim()); }

std::uint32_t f_mask(const BinaryVector& u) {
  return detail::mask_from_bits(u.bits(), std::popcount(u.bits()), dim_mask(u.dim()));
}

int f(const BinaryVector& u, const BinaryVector& v) {
  require_same_dim(u, v, "f");
  return std::popcount(v.bits() & f_mask(u)) & 1;
}

int alpha(const BinaryVector& u) { return (weight(u) & 3) == 0 ? 0 : 1; }

std::vector<BinaryVector> all_vectors(int dim) {
  if (dim < 1 || dim > 24) {
    throw DimensionError("all_vectors: dimension " + std::to_string(dim) + " too large to enumerate");
  }
  std::vector<BinaryVector> out;
  out.reserve(std::size_t{1} << dim);
  for (std::uint32_t b = 0; b < (1u << dim); ++b) out.emplace_back(b, dim);
  return out;
}

}  // namespace odforge
