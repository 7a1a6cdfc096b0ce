#include "odforge/bounds.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace odforge {

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = g ? num / g : 0;
  den_ = g ? den / g : 1;
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

std::string DesignParams::to_string() const {
  std::ostringstream os;
  os << "[" << p << ", " << n << ", " << k << "]";
  return os.str();
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

int delta(int n) {
  if (n < 1) throw std::invalid_argument("delta: n must be >= 1");
  switch (n % 8) {
    case 2:
    case 4:
    case 6:
      return n / 2;
    case 1:
    case 7:
      return (n - 1) / 2;
    case 3:
    case 5:
      return (n + 1) / 2;
    default:
      return n / 2 - 1;
  }
}

Rational liang_max_rate(int n) {
  if (n < 2) throw std::invalid_argument("liang_max_rate: n must be >= 2");
  return Rational(1, 2) + Rational(1, n % 2 == 0 ? n : n + 1);
}

BigInt adams_min_delay(int n) {
  if (n < 2) throw std::invalid_argument("adams_min_delay: n must be >= 2");
  const unsigned m = static_cast<unsigned>((n + 1) / 2);
  BigInt b = binomial(2 * m, m - 1);
  return n % 4 == 2 ? 2 * b : b;
}

std::string family_name(Family family) {
  switch (family) {
    case Family::Rate1Rod:
      return "rate1-rod";
    case Family::LA:
      return "la";
    case Family::DR:
      return "dr";
    case Family::TJC:
      return "tjc";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "rate1-rod") return Family::Rate1Rod;
  if (name == "la") return Family::LA;
  if (name == "dr") return Family::DR;
  if (name == "tjc") return Family::TJC;
  throw std::invalid_argument("unknown family '" + name + "'");
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks) {
    os << (c.ok ? "  ok    " : "  FAIL  ") << c.name << ": expected " << c.expected << ", got " << c.actual
       << "\n";
  }
  if (!optimal) os << "  note  delay is above the Hurwitz-Radon minimum\n";
  return os.str();
}

namespace {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

void add_check(ValidationReport& rep, std::string name, const auto& expected, const auto& actual) {
  std::ostringstream e, a;
  e << expected;
  a << actual;
  const bool ok = (expected == actual);
  rep.checks.push_back({std::move(name), e.str(), a.str(), ok});
  rep.passed = rep.passed && ok;
}

}  // namespace

ValidationReport validate(const DesignParams& params, Family family) {
  ValidationReport rep;
  if (params.p < params.k || params.k < 1 || params.n < 1) {
    rep.passed = false;
    rep.checks.push_back({"p >= k >= 1, n >= 1", "true", "false", false});
    return rep;
  }
  const int n = static_cast<int>(params.n);
  const BigInt p = params.p;
  const BigInt hr_delay = BigInt(1) << delta(n);
  switch (family) {
    case Family::Rate1Rod:
      add_check(rep, "rate", Rational(1), params.rate());
      rep.optimal = (p == hr_delay);
      break;
    case Family::LA:
      add_check(rep, "rate", liang_max_rate(n), params.rate());
      add_check(rep, "delay", adams_min_delay(n), p);
      break;
    case Family::DR:
      add_check(rep, "rate", Rational(1, 2), params.rate());
      add_check(rep, "delay", hr_delay, p);
      break;
    case Family::TJC:
      add_check(rep, "rate", Rational(1, 2), params.rate());
      add_check(rep, "delay", BigInt(hr_delay * 2), p);
      break;
  }
  return rep;
}

}  // namespace odforge
