#include "odforge/design.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "odforge/error.hpp"
#include "odforge/kernels.hpp"

namespace odforge {

Monomial Monomial::of(int var, int sign, bool conj) {
  if (var < 0) throw std::invalid_argument("Monomial: negative variable id");
  if (sign != 1 && sign != -1) throw std::invalid_argument("Monomial: sign must be +1 or -1");
  return {static_cast<std::int32_t>(var), static_cast<std::int8_t>(sign), conj};
}

Monomial Monomial::negated() const {
  if (is_zero()) return *this;
  Monomial m = *this;
  m.sign = static_cast<std::int8_t>(-m.sign);
  return m;
}

Monomial Monomial::conjugated() const {
  if (is_zero()) return *this;
  Monomial m = *this;
  m.conj = !m.conj;
  return m;
}

std::string kind_name(DesignKind kind) { return kind == DesignKind::Rod ? "ROD" : "COD"; }

std::string variable_name(DesignKind kind, int var) {
  return (kind == DesignKind::Rod ? "x" : "z") + std::to_string(var);
}

DesignMatrix::DesignMatrix(DesignKind kind, std::vector<BinaryVector> rows, std::vector<BinaryVector> cols,
                           std::vector<BinaryVector> variables, int gram_scale)
    : kind_(kind),
      rows_(std::move(rows)),
      cols_(std::move(cols)),
      variables_(std::move(variables)),
      entries_(rows_.size() * cols_.size()),
      gram_scale_(gram_scale) {
  if (gram_scale_ < 1) throw std::invalid_argument("DesignMatrix: gram scale must be positive");
}

DesignParams DesignMatrix::params() const {
  return {static_cast<std::int64_t>(p()), static_cast<std::int64_t>(n()), static_cast<std::int64_t>(k())};
}

void DesignMatrix::set(std::size_t row, std::size_t col, Monomial m) {
  if (row >= p() || col >= n()) throw std::out_of_range("DesignMatrix::set: position out of range");
  if (!m.is_zero()) {
    if (static_cast<std::size_t>(m.var) >= k()) throw std::invalid_argument("DesignMatrix::set: variable id >= k");
    if (m.sign != 1 && m.sign != -1) throw std::invalid_argument("DesignMatrix::set: bad sign");
    if (m.conj && kind_ == DesignKind::Rod) throw std::invalid_argument("DesignMatrix::set: conjugate in a ROD");
  } else {
    m = Monomial::zero();
  }
  entries_[row * n() + col] = m;
}

std::size_t DesignMatrix::zero_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Monomial& m) { return m.is_zero(); }));
}

std::vector<std::pair<std::size_t, Monomial>> DesignMatrix::column(std::size_t col) const {
  std::vector<std::pair<std::size_t, Monomial>> out;
  for (std::size_t i = 0; i < p(); ++i) {
    const Monomial& m = at(i, col);
    if (!m.is_zero()) out.emplace_back(i, m);
  }
  return out;
}

namespace {

std::optional<std::size_t> find_label(const std::vector<BinaryVector>& labels, const BinaryVector& x) {
  auto it = std::find(labels.begin(), labels.end(), x);
  if (it == labels.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

}  // namespace

std::optional<std::size_t> DesignMatrix::row_index(const BinaryVector& label) const { return find_label(rows_, label); }
std::optional<std::size_t> DesignMatrix::col_index(const BinaryVector& label) const { return find_label(cols_, label); }

DesignMatrix DesignMatrix::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<BinaryVector> labels;
  for (std::size_t c : cols) {
    if (c >= n()) throw std::out_of_range("select_columns: column out of range");
    labels.push_back(cols_[c]);
  }
  DesignMatrix out(kind_, rows_, std::move(labels), variables_, gram_scale_);
  out.provenance_ = provenance_;
  for (std::size_t i = 0; i < p(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) out.entries_[i * cols.size() + j] = at(i, cols[j]);
  }
  return out;
}

std::string DesignMatrix::entry_text(std::size_t row, std::size_t col) const {
  const Monomial& m = at(row, col);
  if (m.is_zero()) return "0";
  std::string s = (m.sign < 0 ? "-" : "") + variable_name(kind_, m.var);
  if (m.conj) s += "*";
  return s;
}

DesignMatrix build_slice(const BinaryVector& u, const IndexSet& V, const IndexSet& W) {
  if (u.dim() != V.dim() || u.dim() != W.dim()) throw DimensionError("build_slice: dimension mismatch");
  DesignMatrix g(DesignKind::Rod, W.elements(), V.elements(), {u});
  std::vector<std::uint32_t> vbits;
  for (const auto& v : V) vbits.push_back(v.bits());
  std::vector<std::uint8_t> signs(vbits.size());
  kernels::f_row(f_mask(u), vbits, signs);
  for (std::size_t j = 0; j < V.size(); ++j) {
    if (auto i = W.index_of(u + V[j])) g.set(*i, j, Monomial::of(0, signs[j] ? -1 : 1));
  }
  return g;
}

DesignMatrix assemble_rod(const AdmissibleTriple& t) {
  const int r = t.r;
  if (t.U.dim() != r || t.V.dim() != r || t.W.dim() != r) throw DimensionError("assemble_rod: dimension mismatch");
  DesignMatrix g(DesignKind::Rod, t.W.elements(), t.V.elements(), t.U.elements());

  // Dense label -> row table; triples are capped well below 2^24 elements.
  std::vector<std::int32_t> row_of(std::size_t{1} << r, -1);
  for (std::size_t i = 0; i < t.W.size(); ++i) row_of[t.W[i].bits()] = static_cast<std::int32_t>(i);

  std::vector<std::uint32_t> vbits;
  for (const auto& v : t.V) vbits.push_back(v.bits());
  std::vector<std::uint8_t> signs(vbits.size());
  for (std::size_t var = 0; var < t.U.size(); ++var) {
    const BinaryVector& u = t.U[var];
    kernels::f_row(f_mask(u), vbits, signs);
    for (std::size_t j = 0; j < vbits.size(); ++j) {
      const std::int32_t i = row_of[u.bits() ^ vbits[j]];
      if (i < 0) throw InternalError("assemble_rod: u+v = " + (u + t.V[j]).to_string() + " is not a row label");
      if (!g.at(static_cast<std::size_t>(i), j).is_zero()) {
        throw InternalError("assemble_rod: slices overlap at row " + t.W[static_cast<std::size_t>(i)].to_string() +
                            ", column " + t.V[j].to_string());
      }
      g.set(static_cast<std::size_t>(i), j, Monomial::of(static_cast<int>(var), signs[j] ? -1 : 1));
    }
  }
  g.provenance().family = t.family == TripleFamily::Rate1 ? "rate1-rod" : "maxrate-rod";
  g.provenance().r = r;
  g.provenance().case_tag = t.case_tag;
  g.provenance().chain.push_back("assemble:" + t.case_tag);
  return g;
}

// ---------------------------------------------------------------------------
// Symbolic verification.
//
// Entry (a, b) of D^* D is sum_i conj(D[i,a]) D[i,b]. Each product of two
// monomials is a signed product of two factors, a factor being (var, conj).
// Scalars commute, so the term key is the sorted factor pair. For complex
// designs z_i* z_j and z_j* z_i still get distinct keys.

namespace {

using Factor = std::uint32_t;  // var * 2 + conj

Factor factor_of(const Monomial& m, bool extra_conj) {
  return static_cast<Factor>(m.var) * 2u + static_cast<Factor>(m.conj != extra_conj);
}

struct Term {
  std::uint64_t key;
  std::int64_t coeff;
};

std::string factor_text(DesignKind kind, Factor f) {
  std::string s = variable_name(kind, static_cast<int>(f / 2));
  if (f & 1u) s += "*";
  return s;
}

std::string term_text(DesignKind kind, std::uint64_t key) {
  return factor_text(kind, static_cast<Factor>(key >> 32)) + " " + factor_text(kind, static_cast<Factor>(key));
}

std::uint64_t make_key(Factor a, Factor b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

std::uint64_t square_key(DesignKind kind, int var) {
  const Factor x = static_cast<Factor>(var) * 2u;
  return kind == DesignKind::Rod ? make_key(x, x) : make_key(x, x + 1);
}

struct PairResult {
  std::size_t a, b;
  std::vector<SymbolicResidual> residuals;  // capped
  std::size_t residual_count = 0;
  std::optional<std::int64_t> uniform_square;  // diagonal only
};

using Column = std::vector<std::pair<std::size_t, Monomial>>;

PairResult check_pair(const DesignMatrix& d, const std::vector<Column>& cols, std::size_t a, std::size_t b,
                      std::size_t cap) {
  PairResult res{a, b, {}, 0, std::nullopt};
  const DesignKind kind = d.kind();
  std::vector<Term> terms;
  const Column& ca = cols[a];
  const Column& cb = cols[b];
  std::size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    if (ca[i].first < cb[j].first) {
      ++i;
    } else if (cb[j].first < ca[i].first) {
      ++j;
    } else {
      const Monomial& x = ca[i].second;
      const Monomial& y = cb[j].second;
      terms.push_back({make_key(factor_of(x, kind == DesignKind::Cod), factor_of(y, false)),
                       static_cast<std::int64_t>(x.sign) * y.sign});
      ++i;
      ++j;
    }
  }
  std::sort(terms.begin(), terms.end(), [](const Term& l, const Term& r) { return l.key < r.key; });
  std::vector<Term> merged;
  for (const Term& t : terms) {
    if (!merged.empty() && merged.back().key == t.key) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(t);
    }
  }
  if (a == b) {
    // Uniform multiple of the full sum of squares, whatever the expected scale.
    std::optional<std::int64_t> uniform;
    std::size_t squares = 0;
    bool clean = true;
    for (const Term& t : merged) {
      if (t.coeff == 0) continue;
      const bool is_square = t.key == square_key(kind, static_cast<int>((t.key >> 32) / 2));
      if (!is_square || (uniform && *uniform != t.coeff)) {
        clean = false;
        break;
      }
      uniform = t.coeff;
      ++squares;
    }
    if (clean && squares == d.k()) res.uniform_square = uniform;

    std::vector<bool> seen(d.k(), false);
    for (Term& t : merged) {
      const int v = static_cast<int>((t.key >> 32) / 2);
      if (t.key == square_key(kind, v)) {
        t.coeff -= d.gram_scale();
        seen[static_cast<std::size_t>(v)] = true;
      }
    }
    for (std::size_t v = 0; v < d.k(); ++v) {
      if (!seen[v]) merged.push_back({square_key(kind, static_cast<int>(v)), -static_cast<std::int64_t>(d.gram_scale())});
    }
  }
  for (const Term& t : merged) {
    if (t.coeff == 0) continue;
    ++res.residual_count;
    if (res.residuals.size() < cap) res.residuals.push_back({a, b, term_text(kind, t.key), t.coeff});
  }
  return res;
}

}  // namespace

SymbolicReport verify_symbolic(const DesignMatrix& d, const VerifyOptions& opts) {
  SymbolicReport rep;
  rep.expected_scale = d.gram_scale();
  const std::size_t n = d.n();
  std::vector<Column> cols(n);
  for (std::size_t c = 0; c < n; ++c) cols[c] = d.column(c);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) pairs.emplace_back(a, b);
  }
  std::vector<PairResult> results(pairs.size());

  unsigned threads = opts.threads;
  if (threads == 0) {
    const std::size_t work = pairs.size() * d.p();
    threads = work < (std::size_t{1} << 18) ? 1u : std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, pairs.size())));
  auto worker = [&](unsigned id) {
    for (std::size_t i = id; i < pairs.size(); i += threads) {
      results[i] = check_pair(d, cols, pairs[i].first, pairs[i].second, opts.max_residuals);
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(worker, id);
    for (auto& t : pool) t.join();
  }

  std::optional<std::int64_t> scale;
  bool uniform = n > 0;
  for (const PairResult& pr : results) {
    rep.residual_count += pr.residual_count;
    for (const auto& r : pr.residuals) {
      if (rep.residuals.size() < opts.max_residuals) rep.residuals.push_back(r);
    }
    if (pr.a == pr.b) {
      if (!pr.uniform_square || (scale && *scale != *pr.uniform_square)) {
        uniform = false;
      } else {
        scale = pr.uniform_square;
      }
    }
  }
  if (uniform && scale) rep.observed_scale = static_cast<int>(*scale);
  rep.passed = rep.residual_count == 0;
  return rep;
}

std::string SymbolicReport::to_string() const {
  std::ostringstream os;
  os << "symbolic: " << (passed ? "pass" : "FAIL") << " (expected scale " << expected_scale;
  if (observed_scale) os << ", observed " << *observed_scale;
  os << ")";
  if (!passed) {
    os << ", " << residual_count << " surviving term(s)";
    for (const auto& r : residuals) {
      os << "\n  column pair (" << r.col_a << "," << r.col_b << "): " << (r.excess > 0 ? "+" : "") << r.excess << " "
         << r.term;
    }
    if (residual_count > residuals.size()) os << "\n  ...";
  }
  return os.str();
}

NumericReport verify_numeric(const DesignMatrix& d, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_numeric: trials must be >= 1");
  NumericReport rep;
  const std::size_t p = d.p(), n = d.n(), k = d.k();
  const bool complex_values = d.kind() == DesignKind::Cod;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> re(k), im(k), col_re(p * n), col_im(p * n);
  double worst_ratio = -1.0;

  for (int t = 0; t < trials; ++t) {
    double sum_sq = 0.0;
    for (std::size_t v = 0; v < k; ++v) {
      re[v] = dist(rng);
      im[v] = complex_values ? dist(rng) : 0.0;
      sum_sq += re[v] * re[v] + im[v] * im[v];
    }
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t i = 0; i < p; ++i) {
        const Monomial& m = d.at(i, c);
        double x = 0.0, y = 0.0;
        if (!m.is_zero()) {
          x = m.sign * re[static_cast<std::size_t>(m.var)];
          y = m.sign * im[static_cast<std::size_t>(m.var)] * (m.conj ? -1.0 : 1.0);
        }
        col_re[c * p + i] = x;
        col_im[c * p + i] = y;
      }
    }
    const double expected = d.gram_scale() * sum_sq;
    const double tol = 1e-9 * std::max(1.0, expected);
    double err = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      std::span<const double> ar(&col_re[a * p], p), ai(&col_im[a * p], p);
      for (std::size_t b = a; b < n; ++b) {
        std::span<const double> br(&col_re[b * p], p), bi(&col_im[b * p], p);
        double g_re = kernels::dot(ar, br);
        double g_im = 0.0;
        if (complex_values) {
          g_re += kernels::dot(ai, bi);
          g_im = kernels::dot(ar, bi) - kernels::dot(ai, br);
        }
        if (a == b) g_re -= expected;
        err = std::max(err, std::hypot(g_re, g_im));
      }
    }
    const double ratio = err / tol;
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      rep.max_error = err;
      rep.tolerance = tol;
    }
    if (err > tol) rep.passed = false;
  }
  return rep;
}

std::string NumericReport::to_string() const {
  std::ostringstream os;
  os << "numeric: " << (passed ? "pass" : "FAIL") << " (max error " << max_error << ", tolerance " << tolerance
     << ")";
  return os.str();
}

}  // namespace odforge
