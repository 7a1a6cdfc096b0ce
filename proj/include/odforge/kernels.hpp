#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version; the active table is picked once at startup from
// CPUID and can be overridden (tests, --isa on the command line). Integer
// kernels must agree bit for bit across ISAs; dot() agrees exactly whenever the
// inputs are exactly representable partial sums (e.g. small integers).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace odforge::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
/// Throws std::invalid_argument for unknown names. "auto" maps to best_available().
Isa parse_isa(std::string_view name);

struct Table {
  Isa isa;
  /// out[i] = parity(v[i] & mask): f(u, v[i]) for the u whose f_mask is `mask`.
  void (*parity_masked)(std::uint32_t mask, const std::uint32_t* v, std::uint8_t* out, std::size_t n);
  /// out[i] = f(u[i], v[i]) for vectors living in Z_2^dim.
  void (*f_pairs)(const std::uint32_t* u, const std::uint32_t* v, std::uint8_t* out, std::size_t n, int dim);
  /// out[i] = alpha(u[i]).
  void (*alpha_many)(const std::uint32_t* u, std::uint8_t* out, std::size_t n);
  double (*dot)(const double* x, const double* y, std::size_t n);
};

bool supported(Isa isa);
Isa best_available();

/// The table in use. Thread-safe after first call.
const Table& active();
/// Force a table; throws std::runtime_error if the CPU lacks it.
void select(Isa isa);
/// Table for a specific ISA regardless of the active selection.
const Table& table_for(Isa isa);

// Span front-ends over active().
void f_row(std::uint32_t mask, std::span<const std::uint32_t> v, std::span<std::uint8_t> out);
void f_pairs(std::span<const std::uint32_t> u, std::span<const std::uint32_t> v,
             std::span<std::uint8_t> out, int dim);
void alpha_many(std::span<const std::uint32_t> u, std::span<std::uint8_t> out);
double dot(std::span<const double> x, std::span<const double> y);

namespace scalar {
void parity_masked(std::uint32_t mask, const std::uint32_t* v, std::uint8_t* out, std::size_t n);
void f_pairs(const std::uint32_t* u, const std::uint32_t* v, std::uint8_t* out, std::size_t n, int dim);
void alpha_many(const std::uint32_t* u, std::uint8_t* out, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
#define ODFORGE_HAVE_AVX2_KERNELS 1
namespace avx2 {
void parity_masked(std::uint32_t mask, const std::uint32_t* v, std::uint8_t* out, std::size_t n);
void f_pairs(const std::uint32_t* u, const std::uint32_t* v, std::uint8_t* out, std::size_t n, int dim);
void alpha_many(const std::uint32_t* u, std::uint8_t* out, std::size_t n);
double dot(const double* x, const double* y, std::size_t n);
}  // namespace avx2
#else
#define ODFORGE_HAVE_AVX2_KERNELS 0
#endif

}  // namespace odforge::kernels
