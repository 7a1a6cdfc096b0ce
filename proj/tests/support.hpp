#pragma once

// Test-only oracles. Nothing here calls into the library's closed forms: f is
// evaluated from its defining triple sum, matrices are multiplied densely.

#include <cstdint>
#include <vector>

#include "odforge/design.hpp"

namespace odtest {

/// splitmix64; deterministic across platforms, unlike the std distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
  std::uint32_t bits(int dim) {
    return static_cast<std::uint32_t>(next()) & (dim >= 32 ? 0xFFFFFFFFu : ((1u << dim) - 1u));
  }
  int range(int lo, int hi) { return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
};

inline int bit(std::uint32_t x, int i) { return static_cast<int>((x >> i) & 1u); }

/// sum_{i<j<k} (u_i u_j v_k + u_i v_j u_k + v_i u_j u_k) + sum_{i<=j} u_i v_j  (mod 2).
inline int literal_f(std::uint32_t u, std::uint32_t v, int r) {
  int s = 0;
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      for (int k = j + 1; k < r; ++k) {
        s += bit(u, i) * bit(u, j) * bit(v, k);
        s += bit(u, i) * bit(v, j) * bit(u, k);
        s += bit(v, i) * bit(u, j) * bit(u, k);
      }
    }
  }
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) s += bit(u, i) * bit(v, j);
  }
  return s & 1;
}

inline int literal_alpha(std::uint32_t u, int r) { return literal_f(u, u, r); }

using IntMatrix = std::vector<std::vector<long>>;

inline IntMatrix transpose_times(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t p = a.size(), n = a.empty() ? 0 : a[0].size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix out(n, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      for (std::size_t r = 0; r < p; ++r) out[i][j] += a[r][i] * b[r][j];
    }
  }
  return out;
}

/// Coefficient matrix of one variable in a real design.
inline IntMatrix coefficient(const odforge::DesignMatrix& d, int var) {
  IntMatrix out(d.p(), std::vector<long>(d.n(), 0));
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.n(); ++j) {
      const auto& m = d.at(i, j);
      if (!m.is_zero() && m.var == var) out[i][j] = m.sign;
    }
  }
  return out;
}

/// G_u over V x W built straight from the definition with the literal f.
inline IntMatrix literal_slice(std::uint32_t u, const std::vector<std::uint32_t>& V, const std::vector<std::uint32_t>& W,
                               int r) {
  IntMatrix g(W.size(), std::vector<long>(V.size(), 0));
  for (std::size_t i = 0; i < W.size(); ++i) {
    for (std::size_t j = 0; j < V.size(); ++j) {
      if ((V[j] ^ W[i]) == u) g[i][j] = literal_f(u, V[j], r) ? -1 : 1;
    }
  }
  return g;
}

// Admissibility over raw integers and the literal alpha.
inline bool brute_admissible(const odforge::IndexSet& U, const odforge::IndexSet& V, const odforge::IndexSet& W) {
  const int r = U.dim();
  for (const auto& u : U) {
    for (const auto& v : V) {
      if (!W.contains(u + v)) return false;
    }
  }
  for (const auto& w : W) {
    bool found = false;
    for (const auto& u : U) {
      for (const auto& v : V) {
        if ((u + v) != w) continue;
        found = true;
        if (w.bits() == 0) continue;
        for (const auto& u2 : U) {
          if (u2 == u) continue;
          const odforge::BinaryVector v2 = w + u2;
          if (!V.contains(v2)) continue;
          if (literal_alpha((u + u2).bits(), r) != 1) return false;
          if (literal_alpha((v + v2).bits(), r) != 1) return false;
        }
      }
    }
    if (!found) return false;
  }
  return true;
}

/// Nonzero entries of a design, for picking mutation sites.
inline std::vector<std::pair<std::size_t, std::size_t>> nonzero_positions(const odforge::DesignMatrix& d) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < d.p(); ++i) {
    for (std::size_t j = 0; j < d.n(); ++j) {
      if (!d.at(i, j).is_zero()) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace odtest
