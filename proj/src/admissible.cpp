#include "odforge/admissible.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "odforge/error.hpp"

namespace odforge {

IndexSet::IndexSet(int dim, std::vector<BinaryVector> elements) : dim_(dim), elements_(std::move(elements)) {
  for (const auto& x : elements_) {
    if (x.dim() != dim_) throw DimensionError("IndexSet: element of dimension " + std::to_string(x.dim()) +
                                              " in a set of dimension " + std::to_string(dim_));
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

IndexSet IndexSet::all(int dim) { return IndexSet(dim, all_vectors(dim)); }

IndexSet IndexSet::filter(int dim, const std::function<bool(const BinaryVector&)>& keep) {
  std::vector<BinaryVector> out;
  for (const auto& x : all_vectors(dim)) {
    if (keep(x)) out.push_back(x);
  }
  return IndexSet(dim, std::move(out));
}

bool IndexSet::contains(const BinaryVector& x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

std::optional<std::size_t> IndexSet::index_of(const BinaryVector& x) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
  if (it == elements_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - elements_.begin());
}

IndexSet IndexSet::sumset(const IndexSet& other) const {
  if (dim_ != other.dim_) throw DimensionError("sumset: dimension mismatch");
  std::vector<BinaryVector> out;
  out.reserve(size() * other.size());
  for (const auto& a : elements_) {
    for (const auto& b : other.elements_) out.push_back(a + b);
  }
  return IndexSet(dim_, std::move(out));
}

IndexSet IndexSet::hat_image(const BinaryVector& e) const {
  std::vector<BinaryVector> out;
  out.reserve(size());
  for (const auto& a : elements_) out.push_back(hat(a, e));
  return IndexSet(dim_, std::move(out));
}

IndexSet IndexSet::subset(const std::function<bool(const BinaryVector&)>& keep) const {
  std::vector<BinaryVector> out;
  for (const auto& a : elements_) {
    if (keep(a)) out.push_back(a);
  }
  return IndexSet(dim_, std::move(out));
}

std::string family_name(TripleFamily family) {
  return family == TripleFamily::Rate1 ? "rate1" : "maxrate";
}

std::string AdmissibilityViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::NotASumset:
      os << "u+v = " << w.to_string() << " (u=" << u.to_string() << ", v=" << v.to_string()
         << ") is not in W";
      break;
    case Kind::MissingDecomposition:
      os << "w = " << w.to_string() << " has no decomposition u+v";
      break;
    case Kind::AlphaCondition:
      os << "w = " << w.to_string() << " = " << u.to_string() << "+" << v.to_string() << " = "
         << u2.to_string() << "+" << v2.to_string() << " but alpha(u+u') = 0";
      break;
  }
  return os.str();
}

AdmissibilityReport check_admissible(const IndexSet& U, const IndexSet& V, const IndexSet& W) {
  if (U.dim() != V.dim() || U.dim() != W.dim()) throw DimensionError("check_admissible: dimension mismatch");
  struct Pair {
    BinaryVector u, v;
  };
  std::unordered_map<std::uint32_t, std::vector<Pair>> decompositions;
  decompositions.reserve(W.size() * 2);
  for (const auto& u : U) {
    for (const auto& v : V) {
      const BinaryVector w = u + v;
      if (!W.contains(w)) {
        return {false, AdmissibilityViolation{AdmissibilityViolation::Kind::NotASumset, w, u, v, {}, {}}};
      }
      decompositions[w.bits()].push_back({u, v});
    }
  }
  for (const auto& w : W) {
    auto it = decompositions.find(w.bits());
    if (it == decompositions.end()) {
      return {false, AdmissibilityViolation{AdmissibilityViolation::Kind::MissingDecomposition, w, {}, {}, {}, {}}};
    }
    if (w.bits() == 0) continue;
    const auto& ds = it->second;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        // u + u' = v + v' here, so one alpha covers both halves of the condition.
        if (alpha(ds[i].u + ds[j].u) != 1) {
          return {false, AdmissibilityViolation{AdmissibilityViolation::Kind::AlphaCondition, w, ds[i].u,
                                                ds[i].v, ds[j].u, ds[j].v}};
        }
      }
    }
  }
  return {};
}

bool columns_pairwise_alpha_one(const IndexSet& V) {
  for (std::size_t i = 0; i < V.size(); ++i) {
    for (std::size_t j = i + 1; j < V.size(); ++j) {
      if (alpha(V[i] + V[j]) != 1) return false;
    }
  }
  return true;
}

namespace {

constexpr int kMaxTripleDim = 20;

std::vector<BinaryVector> basis_and_duals(int r, int first_j) {
  std::vector<BinaryVector> out;
  const BinaryVector e1 = basis_vector(1, r);
  for (int j = first_j; j <= r; ++j) {
    out.push_back(basis_vector(j, r));
    out.push_back(hat(basis_vector(j, r), e1));
  }
  return out;
}

void require_admissible(const AdmissibleTriple& t) {
  if (auto rep = check_admissible(t.U, t.V, t.W); !rep) {
    throw InternalError("constructed triple " + t.case_tag + " is not admissible: " + rep.violation->describe());
  }
}

}  // namespace

AdmissibleTriple build_rate1_triple(int r) {
  if (r < 1 || r > kMaxTripleDim) {
    throw UnsupportedError("rate-1 triple: r must be in [1, " + std::to_string(kMaxTripleDim) + "]");
  }
  AdmissibleTriple t;
  t.r = t.requested_r = r;
  t.family = TripleFamily::Rate1;
  t.e = basis_vector(1, r);
  auto cols = basis_and_duals(r, 1);
  if (r % 4 == 3) {
    cols.push_back(all_ones(r));
    cols.push_back(hat(all_ones(r), t.e));
    t.case_tag = "rate1:r=3mod4";
  } else {
    t.case_tag = "rate1:r=" + std::to_string(r % 4) + "mod4";
  }
  t.U = IndexSet::all(r);
  t.V = IndexSet(r, std::move(cols));
  t.W = IndexSet::all(r);
  require_admissible(t);
  return t;
}

AdmissibleTriple build_maxrate_triple(int r) {
  if (r < 2 || r > kMaxTripleDim - 1) {
    throw UnsupportedError("maximal-rate triple: r must be in [2, " + std::to_string(kMaxTripleDim - 1) + "]");
  }
  if (r % 4 == 3) {
    AdmissibleTriple t = build_maxrate_triple(r + 1);
    t.requested_r = r;
    t.pending_column_drop = 2;
    t.case_tag = "maxrate:r=3mod4,m=" + std::to_string(t.m % 4) + "mod4";
    return t;
  }

  AdmissibleTriple t;
  t.r = t.requested_r = r;
  t.family = TripleFamily::MaxRate;
  t.e = basis_vector(1, r);
  const BinaryVector e1 = t.e;

  if (r % 4 == 1 || r % 4 == 2) {
    const int m = (r + 1) / 2;  // r = 2m - 1 or r = 2m
    if (m % 2 != 1) throw InternalError("maximal-rate r=1,2 mod 4 requires odd m");
    t.m = m;
    std::vector<BinaryVector> us;
    for (const auto& u : all_vectors(r)) {
      if (weight(u) == m) {
        us.push_back(u);
        us.push_back(hat(u, e1));
      }
    }
    t.U = IndexSet(r, std::move(us));
    t.V = IndexSet(r, basis_and_duals(r, 1));
  } else {
    const int m = r / 2;
    if (m % 2 != 0) throw InternalError("maximal-rate r=0 mod 4 requires even m");
    t.m = m;
    t.U = IndexSet::filter(r, [m](const BinaryVector& u) {
      return u.component(1) == 1 ? weight(u) == m : weight(u) == m - 1;
    });
    auto cols = basis_and_duals(r, 2);
    cols.push_back(all_ones(r));
    cols.push_back(hat(all_ones(r), e1));
    t.V = IndexSet(r, std::move(cols));
  }
  t.case_tag = "maxrate:r=" + std::to_string(r % 4) + "mod4,m=" + std::to_string(t.m % 4) + "mod4";
  t.W = t.U.sumset(t.V);
  require_admissible(t);
  if (!columns_pairwise_alpha_one(t.V)) {
    throw InternalError("maximal-rate columns " + t.case_tag + " violate alpha(v+v')=1");
  }
  return t;
}

AdmissibleTriple drop_trailing_columns(const AdmissibleTriple& t, int count) {
  if (count < 1 || static_cast<std::size_t>(count) >= t.V.size()) {
    throw ConstructionError("drop_trailing_columns: count " + std::to_string(count) + " out of range");
  }
  std::vector<BinaryVector> keep(t.V.begin(), t.V.end() - count);
  AdmissibleTriple out = t;
  out.V = IndexSet(t.r, std::move(keep));
  if (out.V.hat_image(t.e) != out.V) {
    throw ConstructionError("drop_trailing_columns: remaining columns are not stable under the duality");
  }
  out.W = out.U.sumset(out.V);
  out.pending_column_drop = std::max(0, t.pending_column_drop - count);
  require_admissible(out);
  return out;
}

std::optional<std::string> check_splitting(const AdmissibleTriple& t, const Splitting& s) {
  const BinaryVector& e = s.e;
  if (f(e, e) != 1) return "f(e,e) != 1";
  for (const auto& u : t.U) {
    const bool in0 = s.U0.contains(u), in1 = s.U1.contains(u);
    if (in0 == in1) return "U0/U1 do not partition U at " + u.to_string();
    if (in0 != (f(u, e) == 0)) return "U0 is not {u : f(u,e) = 0} at " + u.to_string();
  }
  if (s.U0.size() + s.U1.size() != t.U.size()) return "U0/U1 contain foreign elements";
  if (s.U0.hat_image(e) != s.U1) return "hat(U0) != U1";

  auto partition = [&](const IndexSet& all, const IndexSet& a, const IndexSet& b,
                       const char* name) -> std::optional<std::string> {
    if (a.size() + b.size() != all.size()) return std::string(name) + " halves do not cover the set";
    for (const auto& x : all) {
      if (a.contains(x) == b.contains(x)) return std::string(name) + " halves overlap or miss " + x.to_string();
    }
    if (a.hat_image(e) != b) return std::string(name) + "1 != hat(" + name + "0)";
    return std::nullopt;
  };
  if (auto err = partition(t.V, s.V0, s.V1, "V")) return err;
  if (auto err = partition(t.W, s.W0, s.W1, "W")) return err;
  if (s.U0.sumset(s.V0) != s.W0) return "W0 != U0 + V0";
  if (s.U1.sumset(s.V1) != s.W0) return "W0 != U1 + V1";
  if (s.U0.sumset(s.V1) != s.W1) return "W1 != U0 + V1";
  if (s.U1.sumset(s.V0) != s.W1) return "W1 != U1 + V0";
  return std::nullopt;
}

namespace {

Splitting split_by_first_coordinate(const AdmissibleTriple& t, int v_bit, int w_bit) {
  Splitting s;
  s.e = t.e;
  s.U0 = t.U.subset([&](const BinaryVector& u) { return f(u, t.e) == 0; });
  s.U1 = t.U.subset([&](const BinaryVector& u) { return f(u, t.e) == 1; });
  s.V0 = t.V.subset([&](const BinaryVector& v) { return v.component(1) == v_bit; });
  s.V1 = t.V.subset([&](const BinaryVector& v) { return v.component(1) != v_bit; });
  s.W0 = t.W.subset([&](const BinaryVector& w) { return w.component(1) == w_bit; });
  s.W1 = t.W.subset([&](const BinaryVector& w) { return w.component(1) != w_bit; });
  return s;
}

}  // namespace

Splitting build_splitting(const AdmissibleTriple& t) {
  if (t.e != basis_vector(1, t.r)) {
    throw ConstructionError("build_splitting: only the first-coordinate duality is tabulated");
  }
  if (t.family == TripleFamily::MaxRate) {
    // f(u, e1) on |u| = m, m-1 depends on m mod 4: U0 = {u1 = 0} for m = 1, 2 and
    // {u1 = 1} for m = 3, 0; W0 follows U0, V0 is always {v1 = 0}.
    const int uw_bit = (t.m % 4 == 1 || t.m % 4 == 2) ? 0 : 1;
    Splitting s = split_by_first_coordinate(t, 0, uw_bit);
    if (s.U0 != t.U.subset([&](const BinaryVector& u) { return u.component(1) == uw_bit; })) {
      throw InternalError("f(u,e1) disagrees with the first-coordinate table for " + t.case_tag);
    }
    if (auto err = check_splitting(t, s)) {
      throw InternalError("tabulated splitting fails for " + t.case_tag + ": " + *err);
    }
    return s;
  }
  std::string last;
  for (int v_bit : {0, 1}) {
    for (int w_bit : {0, 1}) {
      Splitting s = split_by_first_coordinate(t, v_bit, w_bit);
      auto err = check_splitting(t, s);
      if (!err) return s;
      last = *err;
    }
  }
  throw ConstructionError("triple " + t.case_tag + " (r=" + std::to_string(t.r) +
                          ") admits no first-coordinate splitting: " + last);
}

}  // namespace odforge
