#pragma once

// Admissible triples (U, V, W) of subsets of Z_2^r and their splittings under a
// duality u -> u + e. U indexes variables, V columns, W rows.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "odforge/binary.hpp"

namespace odforge {

/// Duplicate-free set of vectors of one dimension, kept in canonical order.
class IndexSet {
 public:
  IndexSet() = default;
  /// Sorts and deduplicates; throws DimensionError on mixed dimensions.
  IndexSet(int dim, std::vector<BinaryVector> elements);

  static IndexSet all(int dim);
  static IndexSet filter(int dim, const std::function<bool(const BinaryVector&)>& keep);

  int dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const std::vector<BinaryVector>& elements() const { return elements_; }
  const BinaryVector& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const BinaryVector& x) const;
  std::optional<std::size_t> index_of(const BinaryVector& x) const;

  /// {a + b : a in this, b in other}.
  IndexSet sumset(const IndexSet& other) const;
  /// Image under u -> u + e.
  IndexSet hat_image(const BinaryVector& e) const;
  IndexSet subset(const std::function<bool(const BinaryVector&)>& keep) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  int dim_ = 0;
  std::vector<BinaryVector> elements_;
};

enum class TripleFamily { Rate1, MaxRate };

std::string family_name(TripleFamily family);

struct AdmissibleTriple {
  IndexSet U, V, W;
  /// Dimension the sets live in. Equals requested_r except for the maximal-rate
  /// r = 3 mod 4 case, which is built one dimension up.
  int r = 0;
  int requested_r = 0;
  TripleFamily family = TripleFamily::Rate1;
  /// Residue-class identifier, e.g. "rate1:r=3mod4" or "maxrate:r=0mod4,m=2mod4".
  std::string case_tag;
  int m = 0;  ///< weight parameter of the maximal-rate families; 0 for rate 1
  BinaryVector e;
  /// Trailing columns the family asks to remove downstream (2 for maximal-rate r = 3 mod 4).
  int pending_column_drop = 0;
};

/// Offending double decomposition w = u + v = u' + v'.
struct AdmissibilityViolation {
  enum class Kind { NotASumset, MissingDecomposition, AlphaCondition };
  Kind kind;
  BinaryVector w, u, v, u2, v2;
  std::string describe() const;
};

struct AdmissibilityReport {
  bool admissible = true;
  std::optional<AdmissibilityViolation> violation;
  explicit operator bool() const { return admissible; }
};

/// Brute force over all decompositions of every w in U + V. The zero element is
/// exempt from the alpha condition.
AdmissibilityReport check_admissible(const IndexSet& U, const IndexSet& V, const IndexSet& W);

/// alpha(v + v') = 1 for every pair of distinct columns.
bool columns_pairwise_alpha_one(const IndexSet& V);

AdmissibleTriple build_rate1_triple(int r);
/// r >= 2. For r = 3 mod 4 the returned triple lives in Z_2^(r+1) with
/// pending_column_drop = 2.
AdmissibleTriple build_maxrate_triple(int r);

/// Removes the last `count` columns of V (canonical order), recomputes W = U + V,
/// and re-checks admissibility. count must leave V hat-stable, i.e. remove whole
/// pairs {v, v + e}.
AdmissibleTriple drop_trailing_columns(const AdmissibleTriple& t, int count);

struct Splitting {
  IndexSet U0, U1, V0, V1, W0, W1;
  BinaryVector e;
};

/// U0 = {f(u, e) = 0}, V0/W0 from the first-coordinate tables of the known
/// families, with an exhaustive first-coordinate fallback. All splitting
/// identities are re-verified; throws ConstructionError if none holds.
Splitting build_splitting(const AdmissibleTriple& t);

/// Checks every splitting identity; returns a description of the first failure.
std::optional<std::string> check_splitting(const AdmissibleTriple& t, const Splitting& s);

}  // namespace odforge
