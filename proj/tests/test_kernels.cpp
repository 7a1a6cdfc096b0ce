#include <doctest.h>

#include <cmath>
#include <vector>

#include "odforge/binary.hpp"
#include "odforge/kernels.hpp"
#include "support.hpp"

using namespace odforge;
namespace k = odforge::kernels;

namespace {

// Lengths around the 8-lane and 4-lane boundaries plus a long run.
const std::size_t kLengths[] = {0, 1, 3, 4, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1027};

}  // namespace

TEST_CASE("isa names parse and round trip") {
  CHECK(k::parse_isa("scalar") == k::Isa::Scalar);
  CHECK(k::parse_isa("avx2") == k::Isa::Avx2);
  CHECK(k::parse_isa("auto") == k::best_available());
  CHECK(k::isa_name(k::Isa::Scalar) == "scalar");
  CHECK_THROWS_AS(k::parse_isa("neon"), std::invalid_argument);
  CHECK(k::supported(k::Isa::Scalar));
}

TEST_CASE("scalar parity_masked is f with the row mask") {
  odtest::Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int r = rng.range(1, 32);
    const BinaryVector u(rng.bits(r), r);
    std::vector<std::uint32_t> v(37);
    for (auto& x : v) x = rng.bits(r);
    std::vector<std::uint8_t> out(v.size());
    k::scalar::parity_masked(f_mask(u), v.data(), out.data(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) REQUIRE(out[i] == odtest::literal_f(u.bits(), v[i], r));
  }
}

TEST_CASE("scalar f_pairs and alpha_many match the literal oracle") {
  odtest::Rng rng(5);
  for (int r : {1, 2, 5, 13, 24, 32}) {
    std::vector<std::uint32_t> u(53), v(53);
    for (auto& x : u) x = rng.bits(r);
    for (auto& x : v) x = rng.bits(r);
    std::vector<std::uint8_t> out(u.size()), al(u.size());
    k::scalar::f_pairs(u.data(), v.data(), out.data(), u.size(), r);
    k::scalar::alpha_many(u.data(), al.data(), u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      REQUIRE(out[i] == odtest::literal_f(u[i], v[i], r));
      REQUIRE(al[i] == odtest::literal_alpha(u[i], r));
    }
  }
}

#if ODFORGE_HAVE_AVX2_KERNELS
TEST_CASE("avx2 kernels agree with scalar bit for bit") {
  if (!k::supported(k::Isa::Avx2)) {
    MESSAGE("AVX2 not available on this CPU; equivalence not exercised");
    return;
  }
  odtest::Rng rng(17);
  for (std::size_t n : kLengths) {
    for (int r : {1, 3, 8, 17, 31, 32}) {
      std::vector<std::uint32_t> u(n), v(n);
      for (auto& x : u) x = rng.bits(r);
      for (auto& x : v) x = rng.bits(r);
      const std::uint32_t mask = rng.bits(32);
      std::vector<std::uint8_t> a(n + 1, 0xAB), b(n + 1, 0xAB);

      k::scalar::parity_masked(mask, v.data(), a.data(), n);
      k::avx2::parity_masked(mask, v.data(), b.data(), n);
      REQUIRE(a == b);

      k::scalar::f_pairs(u.data(), v.data(), a.data(), n, r);
      k::avx2::f_pairs(u.data(), v.data(), b.data(), n, r);
      REQUIRE(a == b);

      k::scalar::alpha_many(u.data(), a.data(), n);
      k::avx2::alpha_many(u.data(), b.data(), n);
      REQUIRE(a == b);
      // Nothing written past the end.
      REQUIRE(b[n] == 0xAB);
    }
  }
}

TEST_CASE("avx2 dot is exact on small integers and close on reals") {
  if (!k::supported(k::Isa::Avx2)) return;
  odtest::Rng rng(23);
  for (std::size_t n : kLengths) {
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.range(-50, 50));
      y[i] = static_cast<double>(rng.range(-50, 50));
    }
    REQUIRE(k::avx2::dot(x.data(), y.data(), n) == k::scalar::dot(x.data(), y.data(), n));
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = static_cast<double>(rng.next() >> 11) / 9007199254740992.0 - 0.5;
      y[i] = static_cast<double>(rng.next() >> 11) / 9007199254740992.0 - 0.5;
    }
    const double s = k::scalar::dot(x.data(), y.data(), n);
    const double a = k::avx2::dot(x.data(), y.data(), n);
    REQUIRE(std::abs(s - a) <= 1e-12 * (1.0 + static_cast<double>(n)));
  }
}

TEST_CASE("select switches the active table") {
  if (!k::supported(k::Isa::Avx2)) return;
  k::select(k::Isa::Scalar);
  CHECK(k::active().isa == k::Isa::Scalar);
  k::select(k::Isa::Avx2);
  CHECK(k::active().isa == k::Isa::Avx2);
  k::select(k::best_available());
}
#endif

TEST_CASE("span front-ends check sizes") {
  std::vector<std::uint32_t> v(4);
  std::vector<std::uint8_t> out(3);
  CHECK_THROWS_AS(k::f_row(0u, v, out), std::invalid_argument);
  std::vector<double> x(2), y(3);
  CHECK_THROWS_AS(k::dot(x, y), std::invalid_argument);
}
