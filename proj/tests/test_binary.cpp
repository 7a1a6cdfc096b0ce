#include <doctest.h>

#include "odforge/binary.hpp"
#include "odforge/error.hpp"
#include "support.hpp"

using namespace odforge;
using odtest::literal_alpha;
using odtest::literal_f;

TEST_CASE("BinaryVector construction and components") {
  const BinaryVector u = BinaryVector::from_components({1, 0, 1});
  CHECK(u.dim() == 3);
  CHECK(u.bits() == 0b101u);
  CHECK(u.component(1) == 1);
  CHECK(u.component(2) == 0);
  CHECK(u.component(3) == 1);
  CHECK(u.to_string() == "(1,0,1)");
  CHECK(weight(u) == 2);

  CHECK_THROWS_AS(BinaryVector(0u, 0), DimensionError);
  CHECK_THROWS_AS(BinaryVector(0u, 33), DimensionError);
  CHECK_THROWS_AS(BinaryVector(8u, 3), DimensionError);
  CHECK_THROWS_AS(BinaryVector::from_components({1, 2}), DimensionError);
  CHECK_THROWS_AS((void)u.component(0), DimensionError);
  CHECK_THROWS_AS((void)u.component(4), DimensionError);
  CHECK_NOTHROW(BinaryVector(0xFFFFFFFFu, 32));
}

TEST_CASE("addition is componentwise mod 2") {
  const BinaryVector u(0b1101u, 4), v(0b0111u, 4);
  CHECK((u + v).bits() == 0b1010u);
  CHECK(weight(u + u) == 0);
  CHECK_THROWS_AS(u + BinaryVector(1u, 3), DimensionError);
}

TEST_CASE("canonical order is ascending word value within a dimension") {
  const auto all = all_vectors(3);
  REQUIRE(all.size() == 8);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(all[i] < all[i + 1]);
  CHECK(all[1] == basis_vector(1, 3));
  CHECK(all[7] == all_ones(3));
}

TEST_CASE("hat flips the first coordinate") {
  const BinaryVector u(0b110u, 3);
  CHECK(hat(u).bits() == 0b111u);
  CHECK(hat(hat(u)) == u);
  CHECK(hat(u, all_ones(3)).bits() == 0b001u);
}

TEST_CASE("small values of f by hand") {
  const BinaryVector z(0u, 1), one(1u, 1);
  CHECK(f(z, z) == 0);
  CHECK(f(z, one) == 0);
  CHECK(f(one, z) == 0);
  CHECK(f(one, one) == 1);
}

TEST_CASE("f agrees with the literal triple sum, exhaustive for r <= 8") {
  for (int r = 1; r <= 8; ++r) {
    const std::uint32_t size = 1u << r;
    long mismatches = 0;
    for (std::uint32_t u = 0; u < size; ++u) {
      for (std::uint32_t v = 0; v < size; ++v) {
        if (f(BinaryVector(u, r), BinaryVector(v, r)) != literal_f(u, v, r)) ++mismatches;
      }
    }
    CHECK_MESSAGE(mismatches == 0, "r = " << r);
  }
}

TEST_CASE("f agrees with the literal triple sum on random pairs up to r = 32") {
  odtest::Rng rng(7);
  for (int trial = 0; trial < 4000; ++trial) {
    const int r = rng.range(1, 32);
    const std::uint32_t u = rng.bits(r), v = rng.bits(r);
    REQUIRE(f(BinaryVector(u, r), BinaryVector(v, r)) == literal_f(u, v, r));
  }
}

TEST_CASE("alpha depends on weight mod 4 only") {
  for (int r = 1; r <= 10; ++r) {
    for (std::uint32_t u = 0; u < (1u << r); ++u) {
      const BinaryVector x(u, r);
      const int expected = weight(x) % 4 == 0 ? 0 : 1;
      REQUIRE(alpha(x) == expected);
      REQUIRE(alpha(x) == literal_alpha(u, r));
    }
  }
}

TEST_CASE("f_mask makes f linear in its second argument") {
  odtest::Rng rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int r = rng.range(1, 32);
    const BinaryVector u(rng.bits(r), r), v(rng.bits(r), r), w(rng.bits(r), r);
    REQUIRE(f(u, v + w) == (f(u, v) ^ f(u, w)));
    REQUIRE(f(u, v) == __builtin_parity(v.bits() & f_mask(u)));
  }
}

TEST_CASE("f(e1, w) is the parity of w") {
  for (int r = 1; r <= 9; ++r) {
    for (std::uint32_t w = 0; w < (1u << r); ++w) {
      const BinaryVector x(w, r);
      REQUIRE(f(basis_vector(1, r), x) == weight(x) % 2);
    }
  }
}

TEST_CASE("dimension mismatch in f is an error") {
  CHECK_THROWS_AS(f(BinaryVector(1u, 2), BinaryVector(1u, 3)), DimensionError);
  CHECK_THROWS_AS(basis_vector(0, 3), DimensionError);
  CHECK_THROWS_AS(basis_vector(4, 3), DimensionError);
  CHECK_THROWS_AS(all_vectors(25), DimensionError);
}
