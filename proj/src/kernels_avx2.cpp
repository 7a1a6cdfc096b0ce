#include "odforge/kernels.hpp"

#if ODFORGE_HAVE_AVX2_KERNELS

#include <immintrin.h>

#include <array>
#include <cstring>

#include "odforge/binary.hpp"

#define ODFORGE_AVX2 __attribute__((target("avx2,fma")))

namespace odforge::kernels::avx2 {

namespace {

// Byte i of entry m is bit i of m.
constexpr std::array<std::uint64_t, 256> make_spread() {
  std::array<std::uint64_t, 256> t{};
  for (unsigned m = 0; m < 256; ++m) {
    std::uint64_t x = 0;
    for (unsigned i = 0; i < 8; ++i) {
      if (m & (1u << i)) x |= std::uint64_t{1} << (8 * i);
    }
    t[m] = x;
  }
  return t;
}
constexpr auto kSpread = make_spread();

ODFORGE_AVX2 inline __m256i parity32(__m256i x) {
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 16));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 8));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 4));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 2));
  x = _mm256_xor_si256(x, _mm256_srli_epi32(x, 1));
  return _mm256_and_si256(x, _mm256_set1_epi32(1));
}

ODFORGE_AVX2 inline __m256i popcount32(__m256i x) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0F);
  const __m256i lo = _mm256_and_si256(x, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(x, 4), low);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  const __m256i pairs = _mm256_maddubs_epi16(bytes, _mm256_set1_epi8(1));
  return _mm256_madd_epi16(pairs, _mm256_set1_epi16(1));
}

// Lanes hold 0 or 1; writes 8 bytes.
ODFORGE_AVX2 inline void store_bits(__m256i bits01, std::uint8_t* out) {
  const int m = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_slli_epi32(bits01, 31)));
  std::memcpy(out, &kSpread[static_cast<unsigned>(m)], 8);
}

ODFORGE_AVX2 inline __m256i load8(const std::uint32_t* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

}  // namespace

ODFORGE_AVX2 void parity_masked(std::uint32_t mask, const std::uint32_t* v, std::uint8_t* out,
                                std::size_t n) {
  const __m256i m = _mm256_set1_epi32(static_cast<int>(mask));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) store_bits(parity32(_mm256_and_si256(load8(v + i), m)), out + i);
  scalar::parity_masked(mask, v + i, out + i, n - i);
}

ODFORGE_AVX2 void f_pairs(const std::uint32_t* u, const std::uint32_t* v, std::uint8_t* out,
                          std::size_t n, int dim) {
  const __m256i full = _mm256_set1_epi32(static_cast<int>(dim_mask(dim)));
  const __m256i one = _mm256_set1_epi32(1);
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i b = load8(u + i);
    const __m256i w = popcount32(b);
    __m256i m = b;
    m = _mm256_xor_si256(m, _mm256_slli_epi32(m, 1));
    m = _mm256_xor_si256(m, _mm256_slli_epi32(m, 2));
    m = _mm256_xor_si256(m, _mm256_slli_epi32(m, 4));
    m = _mm256_xor_si256(m, _mm256_slli_epi32(m, 8));
    m = _mm256_xor_si256(m, _mm256_slli_epi32(m, 16));
    // binomial(w-1, 2) and binomial(w, 2) mod 2; when w = 0 the first term
    // multiplies b = 0 and drops out.
    const __m256i c_in = _mm256_and_si256(_mm256_srli_epi32(_mm256_sub_epi32(w, one), 1), one);
    const __m256i c_out = _mm256_and_si256(_mm256_srli_epi32(w, 1), one);
    m = _mm256_xor_si256(m, _mm256_and_si256(b, _mm256_sub_epi32(zero, c_in)));
    m = _mm256_xor_si256(m, _mm256_andnot_si256(b, _mm256_sub_epi32(zero, c_out)));
    m = _mm256_and_si256(m, full);
    store_bits(parity32(_mm256_and_si256(load8(v + i), m)), out + i);
  }
  scalar::f_pairs(u + i, v + i, out + i, n - i, dim);
}

ODFORGE_AVX2 void alpha_many(const std::uint32_t* u, std::uint8_t* out, std::size_t n) {
  const __m256i three = _mm256_set1_epi32(3);
  const __m256i zero = _mm256_setzero_si256();
  const __m256i one = _mm256_set1_epi32(1);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i r = _mm256_and_si256(popcount32(load8(u + i)), three);
    const __m256i is_zero = _mm256_cmpeq_epi32(r, zero);
    store_bits(_mm256_andnot_si256(is_zero, one), out + i);
  }
  scalar::alpha_many(u + i, out + i, n - i);
}

ODFORGE_AVX2 double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  const __m128d pair = _mm_add_pd(_mm256_castpd256_pd128(acc), _mm256_extractf128_pd(acc, 1));
  double s = _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace odforge::kernels::avx2

#endif  // ODFORGE_HAVE_AVX2_KERNELS
