#include "odforge/kernels.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>
#include <string>

#include "odforge/binary.hpp"

namespace odforge::kernels {

namespace scalar {

void parity_masked(std::uint32_t mask, const std::uint32_t* v, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<std::uint8_t>(std::popcount(v[i] & mask) & 1);
}

void f_pairs(const std::uint32_t* u, const std::uint32_t* v, std::uint8_t* out, std::size_t n, int dim) {
  const std::uint32_t full = dim_mask(dim);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t m = detail::mask_from_bits(u[i], std::popcount(u[i]), full);
    out[i] = static_cast<std::uint8_t>(std::popcount(v[i] & m) & 1);
  }
}

void alpha_many(const std::uint32_t* u, std::uint8_t* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (std::popcount(u[i]) & 3) ? 1 : 0;
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace scalar

namespace {

constexpr Table kScalar{Isa::Scalar, scalar::parity_masked, scalar::f_pairs, scalar::alpha_many,
                        scalar::dot};
#if ODFORGE_HAVE_AVX2_KERNELS
constexpr Table kAvx2{Isa::Avx2, avx2::parity_masked, avx2::f_pairs, avx2::alpha_many, avx2::dot};
#endif

std::atomic<const Table*>& slot() {
  static std::atomic<const Table*> s{&table_for(best_available())};
  return s;
}

}  // namespace

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa parse_isa(std::string_view name) {
  if (name == "scalar") return Isa::Scalar;
  if (name == "avx2") return Isa::Avx2;
  if (name == "auto") return best_available();
  throw std::invalid_argument("unknown ISA '" + std::string(name) + "'");
}

bool supported(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if ODFORGE_HAVE_AVX2_KERNELS
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa best_available() { return supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

const Table& table_for(Isa isa) {
#if ODFORGE_HAVE_AVX2_KERNELS
  if (isa == Isa::Avx2) return kAvx2;
#endif
  (void)isa;
  return kScalar;
}

const Table& active() { return *slot().load(std::memory_order_acquire); }

void select(Isa isa) {
  if (!supported(isa)) {
    throw std::runtime_error("ISA " + std::string(isa_name(isa)) + " not supported on this CPU");
  }
  slot().store(&table_for(isa), std::memory_order_release);
}

namespace {
void require_sizes(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": span size mismatch");
}
}  // namespace

void f_row(std::uint32_t mask, std::span<const std::uint32_t> v, std::span<std::uint8_t> out) {
  require_sizes(v.size(), out.size(), "f_row");
  active().parity_masked(mask, v.data(), out.data(), v.size());
}

void f_pairs(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v,
             std::span<std::uint8_t> out, int dim) {
  require_sizes(u.size(), v.size(), "f_pairs");
  require_sizes(u.size(), out.size(), "f_pairs");
  active().f_pairs(u.data(), v.data(), out.data(), u.size(), dim);
}

void alpha_many(std::span<const std::uint32_t> u, std::span<std::uint8_t> out) {
  require_sizes(u.size(), out.size(), "alpha_many");
  active().alpha_many(u.data(), out.data(), u.size());
}

double dot(std::span<const double> x, std::span<const double> y) {
  require_sizes(x.size(), y.size(), "dot");
  return active().dot(x.data(), y.data(), x.size());
}

}  // namespace odforge::kernels
