#pragma once

// Optimality oracles for orthogonal designs: the Hurwitz-Radon exponent, the
// maximal rate of non-square complex designs, and the minimal delay at that rate.

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace odforge {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms, positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);
  friend Rational operator+(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct DesignParams {
  std::int64_t p = 0;  ///< delay (rows)
  std::int64_t n = 0;  ///< antennas (columns)
  std::int64_t k = 0;  ///< variables
  Rational rate() const { return Rational(k, p); }
  std::string to_string() const;
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
};

BigInt binomial(unsigned n, unsigned k);

/// Hurwitz-Radon exponent: a rate-1 real design on n columns needs 2^delta(n) rows.
int delta(int n);
/// 1/2 + 1/n for even n, 1/2 + 1/(n+1) for odd n.
Rational liang_max_rate(int n);
/// binomial(2m, m-1), doubled when n = 2 mod 4; n = 2m - 1 or 2m.
BigInt adams_min_delay(int n);

enum class Family { Rate1Rod, LA, DR, TJC };

std::string family_name(Family family);
/// "rate1-rod", "la", "dr", "tjc".
Family parse_family(const std::string& name);

struct ValidationCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool ok = false;
};

struct ValidationReport {
  bool passed = true;
  /// Rate-1 designs only: whether p reaches the Hurwitz-Radon minimum. A rate-1
  /// design may pass (it is what the construction yields) without being optimal.
  bool optimal = true;
  std::vector<ValidationCheck> checks;
  std::string to_string() const;
};

ValidationReport validate(const DesignParams& params, Family family);

}  // namespace odforge
