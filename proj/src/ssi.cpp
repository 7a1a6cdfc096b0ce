#include "odforge/ssi.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "odforge/error.hpp"

namespace odforge {

SSIdentity::SSIdentity(std::size_t p, std::size_t n, std::vector<std::vector<std::int8_t>> matrices)
    : p_(p), n_(n), matrices_(std::move(matrices)) {
  for (const auto& m : matrices_) {
    if (m.size() != p_ * n_) throw std::invalid_argument("SSIdentity: matrix of the wrong size");
    for (std::int8_t x : m) {
      if (x < -1 || x > 1) throw std::invalid_argument("SSIdentity: entries must be 0, 1 or -1");
    }
  }
}

DesignParams SSIdentity::params() const {
  return {static_cast<std::int64_t>(p_), static_cast<std::int64_t>(n_), static_cast<std::int64_t>(k())};
}

DesignMatrix SSIdentity::reassemble() const {
  auto labels = [](std::size_t count) {
    int dim = 1;
    while (dim < 32 && (std::size_t{1} << dim) < count) ++dim;
    std::vector<BinaryVector> out;
    for (std::size_t i = 0; i < count; ++i) out.emplace_back(static_cast<std::uint32_t>(i), dim);
    return out;
  };
  DesignMatrix g(DesignKind::Rod, labels(p_), labels(n_), labels(k()));
  for (std::size_t i = 0; i < k(); ++i) {
    for (std::size_t r = 0; r < p_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (const int s = at(i, r, c)) {
          if (!g.at(r, c).is_zero()) throw ConstructionError("reassemble: two variables share an entry");
          g.set(r, c, Monomial::of(static_cast<int>(i), s));
        }
      }
    }
  }
  return g;
}

namespace {

struct Entry {
  std::size_t row, col;
  int sign;
};

std::vector<std::vector<Entry>> sparse(const SSIdentity& id) {
  std::vector<std::vector<Entry>> out(id.k());
  for (std::size_t i = 0; i < id.k(); ++i) {
    for (std::size_t r = 0; r < id.p(); ++r) {
      for (std::size_t c = 0; c < id.n(); ++c) {
        if (const int s = id.at(i, r, c)) out[i].push_back({r, c, s});
      }
    }
  }
  return out;
}

}  // namespace

std::string check_pair_equations(const SSIdentity& id) {
  const auto sp = sparse(id);
  const std::size_t n = id.n();
  std::vector<int> acc(n * n);
  for (std::size_t i = 0; i < id.k(); ++i) {
    for (std::size_t j = i; j < id.k(); ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      // Entries are sorted by row; merge on equal rows.
      const auto& x = sp[i];
      const auto& y = sp[j];
      std::size_t a = 0, b0 = 0;
      while (a < x.size()) {
        while (b0 < y.size() && y[b0].row < x[a].row) ++b0;
        for (std::size_t b = b0; b < y.size() && y[b].row == x[a].row; ++b) {
          const int prod = x[a].sign * y[b].sign;
          acc[x[a].col * n + y[b].col] += prod;
          acc[y[b].col * n + x[a].col] += prod;
        }
        ++a;
      }
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          const int want = (i == j && c == d) ? 2 : 0;
          if (acc[c * n + d] != want) {
            std::ostringstream os;
            if (i == j) {
              os << "A_" << i << "^T A_" << i << " != I at (" << c << "," << d << ")";
            } else {
              os << "A_" << i << "^T A_" << j << " + A_" << j << "^T A_" << i << " != 0 at (" << c << "," << d
                 << ")";
            }
            return os.str();
          }
        }
      }
    }
  }
  return {};
}

SSIdentity rod_to_ssi(const DesignMatrix& g) {
  if (g.kind() != DesignKind::Rod) throw ConstructionError("rod_to_ssi: expected a real design");
  if (g.gram_scale() != 1) throw ConstructionError("rod_to_ssi: design has gram scale " + std::to_string(g.gram_scale()));
  std::vector<std::vector<std::int8_t>> mats(g.k(), std::vector<std::int8_t>(g.p() * g.n(), 0));
  for (std::size_t r = 0; r < g.p(); ++r) {
    for (std::size_t c = 0; c < g.n(); ++c) {
      const Monomial& m = g.at(r, c);
      if (!m.is_zero()) mats[static_cast<std::size_t>(m.var)][r * g.n() + c] = m.sign;
    }
  }
  SSIdentity id(g.p(), g.n(), std::move(mats));
  if (auto err = check_pair_equations(id); !err.empty()) throw ConstructionError("rod_to_ssi: " + err);
  return id;
}

namespace {

std::int64_t checked_mul(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_mul_overflow(x, y, &out)) throw std::overflow_error("identity check: 64-bit overflow");
  return out;
}

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t out;
  if (__builtin_add_overflow(x, y, &out)) throw std::overflow_error("identity check: 64-bit overflow");
  return out;
}

std::int64_t sum_squares(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (std::int64_t x : v) s = checked_add(s, checked_mul(x, x));
  return s;
}

}  // namespace

IdentitySample evaluate_identity(const SSIdentity& id, const std::vector<std::int64_t>& a,
                                 const std::vector<std::int64_t>& b) {
  if (a.size() != id.k() || b.size() != id.n()) throw std::invalid_argument("evaluate_identity: wrong vector length");
  IdentitySample s{a, b, std::vector<std::int64_t>(id.p(), 0), 0, 0};
  for (std::size_t i = 0; i < id.k(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t r = 0; r < id.p(); ++r) {
      for (std::size_t c = 0; c < id.n(); ++c) {
        if (const int e = id.at(i, r, c)) s.c[r] = checked_add(s.c[r], checked_mul(e * a[i], b[c]));
      }
    }
  }
  s.lhs = checked_mul(sum_squares(a), sum_squares(b));
  s.rhs = sum_squares(s.c);
  return s;
}

IdentityCheck check_identity(const SSIdentity& id, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("check_identity: trials must be >= 1");
  IdentityCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> dist(-100, 100);
  std::vector<std::int64_t> a(id.k()), b(id.n());
  for (int t = 0; t < trials; ++t) {
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);
    IdentitySample s = evaluate_identity(id, a, b);
    ++out.trials;
    if (s.lhs != s.rhs) {
      out.passed = false;
      if (out.failures.size() < 4) out.failures.push_back(std::move(s));
    }
  }
  return out;
}

std::string render_identity_text(const SSIdentity& id) {
  std::ostringstream os;
  auto squares = [&](char name, std::size_t count) {
    os << "(";
    for (std::size_t i = 0; i < count; ++i) os << (i ? " + " : "") << name << i << "^2";
    os << ")";
  };
  squares('a', id.k());
  squares('b', id.n());
  os << " = ";
  for (std::size_t r = 0; r < id.p(); ++r) os << (r ? " + " : "") << "c" << r << "^2";
  os << "\n\n";
  for (std::size_t r = 0; r < id.p(); ++r) {
    os << "c" << r << " =";
    bool first = true;
    for (std::size_t c = 0; c < id.n(); ++c) {
      for (std::size_t i = 0; i < id.k(); ++i) {
        const int e = id.at(i, r, c);
        if (!e) continue;
        if (first) {
          os << (e < 0 ? " -" : " ");
        } else {
          os << (e < 0 ? " - " : " + ");
        }
        os << "a" << i << " b" << c;
        first = false;
      }
    }
    if (first) os << " 0";
    os << "\n";
  }
  return os.str();
}

}  // namespace odforge
