#include "odforge/transform.hpp"

#include <sstream>

#include "odforge/error.hpp"

namespace odforge {

BlockType classify_block(const Block& b) {
  const Monomial& a = b[0][0];
  const Monomial& x = b[0][1];
  const Monomial& y = b[1][0];
  const Monomial& d = b[1][1];
  auto fail = [&](const char* why) {
    std::ostringstream os;
    os << "2x2 block matches neither T1 nor T2 (" << why << ")";
    throw ConstructionError(os.str());
  };
  if (a.is_zero() || x.is_zero() || y.is_zero() || d.is_zero()) fail("zero entry");
  if (a.conj || x.conj || y.conj || d.conj) fail("conjugated entry");
  if (a.var != d.var || a.sign != d.sign) fail("diagonal entries differ");
  if (x.var != y.var || x.var == a.var) fail("off-diagonal variables");
  if (x.sign != -y.sign) fail("off-diagonal signs agree");
  return {x.sign == a.sign ? BlockType::Tag::T1 : BlockType::Tag::T2, a.sign};
}

Block expand_block(const BlockType& type, int var_u, int var_uh) {
  const int s = type.outer_sign;
  const int t = type.tag == BlockType::Tag::T1 ? 1 : -1;
  return {{{Monomial::of(var_u, s), Monomial::of(var_uh, s * t)},
           {Monomial::of(var_uh, -s * t), Monomial::of(var_u, s)}}};
}

BinaryVector ExtendedLabel::encode() const {
  if (tau != 0 && tau != 1) throw std::invalid_argument("ExtendedLabel: tau must be 0 or 1");
  const int d = base.dim() + 1;
  return BinaryVector(base.bits() | (static_cast<std::uint32_t>(tau) << base.dim()), d);
}

ExtendedLabel ExtendedLabel::decode(const BinaryVector& x) {
  if (x.dim() < 2) throw DimensionError("ExtendedLabel::decode: dimension must be >= 2");
  const int d = x.dim() - 1;
  return {BinaryVector(x.bits() & dim_mask(d), d), static_cast<int>((x.bits() >> d) & 1u)};
}

namespace {

std::vector<BinaryVector> extend(const std::vector<BinaryVector>& base, int tau) {
  std::vector<BinaryVector> out;
  out.reserve(base.size());
  for (const auto& x : base) out.push_back(ExtendedLabel{x, tau}.encode());
  return out;
}

std::size_t must_index(const IndexSet& set, const BinaryVector& x, const char* what) {
  auto i = set.index_of(x);
  if (!i) throw ConstructionError(std::string(what) + " " + x.to_string() + " is missing its dual");
  return *i;
}

void require_hat_stable(const IndexSet& set, const BinaryVector& e, const char* name) {
  if (set.hat_image(e) != set) throw ConstructionError(std::string(name) + " is not stable under the duality");
}

// g must be exactly the ROD that assemble_rod(t) produces.
void require_assembled(const DesignMatrix& g, const AdmissibleTriple& t) {
  if (g.kind() != DesignKind::Rod) throw ConstructionError("expected a real design");
  if (g.rows() != t.W.elements() || g.cols() != t.V.elements() || g.variables() != t.U.elements()) {
    throw ConstructionError("design labels do not match the triple");
  }
  const DesignMatrix ref = assemble_rod(t);
  for (std::size_t i = 0; i < g.p(); ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      if (g.at(i, j) != ref.at(i, j)) {
        throw ConstructionError("design entry (" + t.W[i].to_string() + ", " + t.V[j].to_string() +
                                ") differs from the triple's ROD");
      }
    }
  }
}

// Block pairing for a reduction: H[i][j] comes from rows (row0[i], row1[i]) and
// columns (col0[j], col1[j]) of g. var_slot maps a g variable to its H id
// (or -1 for the dual half), partner[h] is the g id of the dual of H variable h.
struct Pairing {
  std::vector<std::size_t> row0, row1, col0, col1;
  std::vector<int> var_slot;
  std::vector<int> partner;
  std::vector<BinaryVector> rows, cols, vars;
};

DesignMatrix reduce_blocks(const DesignMatrix& g, const Pairing& pr) {
  DesignMatrix h(DesignKind::Cod, pr.rows, pr.cols, pr.vars, 1);
  for (std::size_t i = 0; i < pr.row0.size(); ++i) {
    for (std::size_t j = 0; j < pr.col0.size(); ++j) {
      const Block b{{{g.at(pr.row0[i], pr.col0[j]), g.at(pr.row0[i], pr.col1[j])},
                     {g.at(pr.row1[i], pr.col0[j]), g.at(pr.row1[i], pr.col1[j])}}};
      if (b[0][0].is_zero() && b[0][1].is_zero() && b[1][0].is_zero() && b[1][1].is_zero()) continue;
      const std::string where = "block at row " + pr.rows[i].to_string() + ", column " + pr.cols[j].to_string();
      BlockType type;
      try {
        type = classify_block(b);
      } catch (const ConstructionError& e) {
        throw InternalError(where + ": " + e.what());
      }
      const int slot = pr.var_slot[static_cast<std::size_t>(b[0][0].var)];
      if (slot < 0) throw InternalError(where + ": leading variable lies in the dual half");
      if (pr.partner[static_cast<std::size_t>(slot)] != b[0][1].var) {
        throw InternalError(where + ": off-diagonal variable is not the dual of the diagonal one");
      }
      // T2 carries z, T1 carries its conjugate.
      h.set(i, j, Monomial::of(slot, type.outer_sign, type.tag == BlockType::Tag::T1));
    }
  }
  return h;
}

// Closed-form entry: (-1)^f(u,v) z_u, conjugated when f(u+e, v) != f(u, v).
Monomial formula_entry(const BinaryVector& w, const BinaryVector& v, const IndexSet& U0, const BinaryVector& e) {
  const BinaryVector u = w + v;
  auto idx = U0.index_of(u);
  if (!idx) return Monomial::zero();
  const int fu = f(u, v);
  return Monomial::of(static_cast<int>(*idx), fu ? -1 : 1, f(hat(u, e), v) != fu);
}

void cross_check(const DesignMatrix& h, const IndexSet& U0, const BinaryVector& e, const char* what) {
  for (std::size_t i = 0; i < h.p(); ++i) {
    for (std::size_t j = 0; j < h.n(); ++j) {
      if (h.at(i, j) != formula_entry(h.rows()[i], h.cols()[j], U0, e)) {
        throw InternalError(std::string(what) + ": block reduction disagrees with the closed form at (" +
                            h.rows()[i].to_string() + ", " + h.cols()[j].to_string() + ")");
      }
    }
  }
}

IndexSet first_half(const AdmissibleTriple& t) {
  return t.U.subset([&](const BinaryVector& u) { return f(u, t.e) == 0; });
}

}  // namespace

DesignMatrix reduce_to_cod(const DesignMatrix& g, const AdmissibleTriple& t, const Splitting& s) {
  require_assembled(g, t);
  if (s.e != t.e) throw ConstructionError("splitting duality differs from the triple's");
  if (auto err = check_splitting(t, s)) throw ConstructionError("splitting inconsistent with the design: " + *err);

  const BinaryVector& e = s.e;
  for (const auto& u : s.U0) {
    const BinaryVector uh = hat(u, e);
    for (const auto& v : s.V0) {
      const BinaryVector vh = hat(v, e);
      if (f(u, vh) != f(u, v) || f(uh, vh) != (f(uh, v) ^ 1)) {
        throw InternalError("linearity identities fail at u=" + u.to_string() + ", v=" + v.to_string());
      }
    }
  }

  Pairing pr;
  for (const auto& w : s.W0) {
    pr.row0.push_back(*t.W.index_of(w));
    pr.row1.push_back(must_index(t.W, hat(w, e), "row"));
  }
  for (const auto& v : s.V0) {
    pr.col0.push_back(*t.V.index_of(v));
    pr.col1.push_back(must_index(t.V, hat(v, e), "column"));
  }
  pr.var_slot.assign(t.U.size(), -1);
  for (std::size_t h = 0; h < s.U0.size(); ++h) {
    pr.var_slot[*t.U.index_of(s.U0[h])] = static_cast<int>(h);
    pr.partner.push_back(static_cast<int>(must_index(t.U, hat(s.U0[h], e), "variable")));
  }
  pr.rows = s.W0.elements();
  pr.cols = s.V0.elements();
  pr.vars = s.U0.elements();

  DesignMatrix h = reduce_blocks(g, pr);
  cross_check(h, s.U0, e, "reduce_to_cod");
  h.provenance() = g.provenance();
  h.provenance().chain.push_back("reduce");
  return h;
}

DesignMatrix induction_embedding(const DesignMatrix& g, const AdmissibleTriple& t) {
  require_assembled(g, t);
  const BinaryVector& e = t.e;
  if (f(e, e) != 1) throw ConstructionError("induction: f(e,e) must be 1");
  require_hat_stable(t.U, e, "U");
  require_hat_stable(t.V, e, "V");
  require_hat_stable(t.W, e, "W");
  if (t.U.size() % 2 != 0) throw ConstructionError("induction: odd number of variables");
  const IndexSet U0 = first_half(t);
  const IndexSet U1 = t.U.subset([&](const BinaryVector& u) { return !U0.contains(u); });
  if (U0.hat_image(e) != U1) throw ConstructionError("induction: {u : f(u,e) = 0} is not half of U");

  std::vector<BinaryVector> rows = extend(t.W.elements(), 0), cols = extend(t.V.elements(), 0);
  for (const auto& x : extend(t.W.elements(), 1)) rows.push_back(x);
  for (const auto& x : extend(t.V.elements(), 1)) cols.push_back(x);
  std::vector<BinaryVector> vars = extend(U0.elements(), 0);
  for (const auto& x : extend(U1.elements(), 1)) vars.push_back(x);

  // New id of each g variable and whether it lives on the tau-crossing half.
  std::vector<int> new_id(t.U.size());
  std::vector<bool> crossing(t.U.size());
  for (std::size_t i = 0; i < t.U.size(); ++i) {
    if (auto j = U0.index_of(t.U[i])) {
      new_id[i] = static_cast<int>(*j);
      crossing[i] = false;
    } else {
      new_id[i] = static_cast<int>(U0.size() + *U1.index_of(t.U[i]));
      crossing[i] = true;
    }
  }

  const std::size_t p = g.p(), n = g.n();
  DesignMatrix m(DesignKind::Rod, std::move(rows), std::move(cols), std::move(vars), 1);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Monomial& x = g.at(i, j);
      if (x.is_zero()) continue;
      const auto var = static_cast<std::size_t>(x.var);
      const Monomial y = Monomial::of(new_id[var], x.sign);
      for (std::size_t tau = 0; tau < 2; ++tau) {
        const std::size_t sigma = crossing[var] ? 1 - tau : tau;
        m.set(tau * p + i, sigma * n + j, y);
      }
    }
  }
  m.provenance() = g.provenance();
  m.provenance().r = t.r;
  m.provenance().chain.push_back("embed");
  return m;
}

DesignMatrix induct_to_cod_sparse(const DesignMatrix& g, const AdmissibleTriple& t) {
  const DesignMatrix m = induction_embedding(g, t);
  const BinaryVector& e = t.e;
  const IndexSet U0 = first_half(t);
  const IndexSet U1 = t.U.subset([&](const BinaryVector& u) { return !U0.contains(u); });
  const std::size_t p = t.W.size(), n = t.V.size();

  Pairing pr;
  for (std::size_t i = 0; i < p; ++i) {
    pr.row0.push_back(i);
    pr.row1.push_back(p + must_index(t.W, hat(t.W[i], e), "row"));
  }
  for (std::size_t j = 0; j < n; ++j) {
    pr.col0.push_back(j);
    pr.col1.push_back(n + must_index(t.V, hat(t.V[j], e), "column"));
  }
  pr.var_slot.assign(t.U.size(), -1);
  for (std::size_t h = 0; h < U0.size(); ++h) {
    pr.var_slot[h] = static_cast<int>(h);
    pr.partner.push_back(static_cast<int>(U0.size() + *U1.index_of(hat(U0[h], e))));
  }
  pr.rows = t.W.elements();
  pr.cols = t.V.elements();
  pr.vars = U0.elements();

  DesignMatrix h = reduce_blocks(m, pr);
  cross_check(h, U0, e, "induct_to_cod");
  h.provenance() = m.provenance();
  h.provenance().chain.push_back("reduce");
  return h;
}

DesignMatrix fold_dual_rows(const DesignMatrix& h, const BinaryVector& e) {
  DesignMatrix out(h.kind(), h.rows(), h.cols(), h.variables(), 2 * h.gram_scale());
  for (std::size_t i = 0; i < h.p(); ++i) {
    const BinaryVector& w = h.rows()[i];
    auto partner = h.row_index(hat(w, e));
    if (!partner) throw ConstructionError("fold_dual_rows: row " + w.to_string() + " has no dual row");
    const int s = f(e, w) ? -1 : 1;
    for (std::size_t j = 0; j < h.n(); ++j) {
      const Monomial& a = h.at(i, j);
      const Monomial& b = h.at(*partner, j);
      if (a.is_zero() == b.is_zero()) {
        throw ConstructionError("fold_dual_rows: supports of rows " + w.to_string() + " and its dual overlap");
      }
      out.set(i, j, a.is_zero() ? (s < 0 ? b.negated() : b) : a);
    }
  }
  out.provenance() = h.provenance();
  out.provenance().chain.push_back("fold");
  return out;
}

DesignMatrix induct_to_cod(const DesignMatrix& g, const AdmissibleTriple& t, bool dense) {
  DesignMatrix h = induct_to_cod_sparse(g, t);
  return dense ? fold_dual_rows(h, t.e) : h;
}

DesignMatrix tjc_double(const DesignMatrix& g) {
  if (g.kind() != DesignKind::Rod) throw ConstructionError("tjc_double: expected a real design");
  std::vector<BinaryVector> rows = extend(g.rows(), 0);
  for (const auto& x : extend(g.rows(), 1)) rows.push_back(x);
  DesignMatrix out(DesignKind::Cod, std::move(rows), g.cols(), g.variables(), 2 * g.gram_scale());
  const std::size_t p = g.p();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < g.n(); ++j) {
      out.set(i, j, g.at(i, j));
      out.set(p + i, j, g.at(i, j).conjugated());
    }
  }
  out.provenance() = g.provenance();
  out.provenance().chain.push_back("double");
  return out;
}

DesignMatrix drop_columns(const DesignMatrix& d, int count) {
  if (count < 1 || count > 2) throw ConstructionError("drop_columns: count must be 1 or 2");
  if (static_cast<std::size_t>(count) >= d.n()) throw ConstructionError("drop_columns: count must be below n");
  std::vector<std::size_t> keep(d.n() - static_cast<std::size_t>(count));
  for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = j;
  DesignMatrix out = d.select_columns(keep);
  out.provenance().columns_dropped += count;
  out.provenance().chain.push_back("drop:" + std::to_string(count));
  return out;
}

namespace {

constexpr int kMaxRate1N = 24;
constexpr int kMaxLaN = 16;
constexpr int kMaxHalfRateN = 24;

void require_range(int n, Family family) {
  const int hi = max_supported_n(family);
  if (n < 2 || n > hi) {
    throw UnsupportedError(family_name(family) + ": n must be in [2, " + std::to_string(hi) + "], got " +
                           std::to_string(n));
  }
}

// Rate-1 ROD for even n at the given r, with the r = 3 mod 4 surplus pair removed
// when it exceeds n.
std::pair<AdmissibleTriple, DesignMatrix> rate1_for(int even_n, int r) {
  AdmissibleTriple t = build_rate1_triple(r);
  int dropped = 0;
  if (static_cast<int>(t.V.size()) == even_n + 2) {
    t = drop_trailing_columns(t, 2);
    dropped = 2;
  }
  if (static_cast<int>(t.V.size()) != even_n) throw InternalError("rate-1 triple has the wrong column count");
  DesignMatrix g = assemble_rod(t);
  if (dropped) {
    g.provenance().columns_dropped = dropped;
    g.provenance().chain.push_back("drop:2");
  }
  return {std::move(t), std::move(g)};
}

}  // namespace

int max_supported_n(Family family) {
  switch (family) {
    case Family::Rate1Rod:
      return kMaxRate1N;
    case Family::LA:
      return kMaxLaN;
    case Family::DR:
    case Family::TJC:
      return kMaxHalfRateN;
  }
  return 0;
}

DesignMatrix make_rate1_rod(int n) {
  require_range(n, Family::Rate1Rod);
  const int even = n + (n % 2);
  auto [t, g] = rate1_for(even, even / 2);
  if (n % 2) g = drop_columns(g, 1);
  g.provenance().family = family_name(Family::Rate1Rod);
  return g;
}

DesignMatrix make_cod(int n, Family family) {
  if (family == Family::Rate1Rod) throw std::invalid_argument("make_cod: rate-1 RODs are real designs");
  require_range(n, family);

  if (family == Family::LA) {
    AdmissibleTriple t = build_maxrate_triple(n);
    const int pending = t.pending_column_drop;
    if (pending) t = drop_trailing_columns(t, pending);
    DesignMatrix g = assemble_rod(t);
    if (pending) {
      g.provenance().columns_dropped = pending;
      g.provenance().chain.push_back("drop:" + std::to_string(pending));
    }
    const Splitting s = build_splitting(t);
    DesignMatrix h = reduce_to_cod(g, t, s);
    h.provenance().family = family_name(family);
    return h;
  }

  if (n % 8 == 1) {
    throw UnsupportedError(family_name(family) + ": n = " + std::to_string(n) +
                           " is 1 mod 8, a case the rate-1 to complex construction does not reach");
  }
  // 2^delta(n) rows: delta(n) = n/2 - 1 for n = 0 mod 8 (r = 3 mod 4 gives 2r + 2
  // columns), n/2 for the other even n, and delta(n + 1) for odd n.
  const int even = n + (n % 2);
  const int r = even % 8 == 0 ? even / 2 - 1 : even / 2;
  auto [t, g] = rate1_for(even, r);
  DesignMatrix h = family == Family::DR ? induct_to_cod(g, t, true) : tjc_double(g);
  if (n % 2) h = drop_columns(h, 1);
  h.provenance().family = family_name(family);
  return h;
}

DesignMatrix make_design(int n, Family family) {
  return family == Family::Rate1Rod ? make_rate1_rod(n) : make_cod(n, family);
}

}  // namespace odforge
