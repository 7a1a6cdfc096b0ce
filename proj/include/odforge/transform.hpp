#pragma once

// Real-to-complex transforms: block reduction of a split ROD, induction through
// Z_2^(r+1), the stacked doubling, column removal, and the per-family pipelines.

#include <array>
#include <cstddef>

#include "odforge/admissible.hpp"
#include "odforge/bounds.hpp"
#include "odforge/design.hpp"

namespace odforge {

/// T1 ~ s [[x_u, x_uh], [-x_uh, x_u]], T2 ~ s [[x_u, -x_uh], [x_uh, x_u]].
struct BlockType {
  enum class Tag { T1, T2 };
  Tag tag = Tag::T1;
  int outer_sign = 1;
  friend bool operator==(const BlockType&, const BlockType&) = default;
};

using Block = std::array<std::array<Monomial, 2>, 2>;

/// Throws ConstructionError when the block matches neither pattern.
BlockType classify_block(const Block& b);
/// Inverse of classify_block for the variable ids of x_u and x_uh.
Block expand_block(const BlockType& type, int var_u, int var_uh);

/// Element of Z_2^r x {0, 1}, encoded as a vector of Z_2^(r+1) whose last
/// component is tau.
struct ExtendedLabel {
  BinaryVector base;
  int tau = 0;
  BinaryVector encode() const;
  static ExtendedLabel decode(const BinaryVector& x);
  friend bool operator==(const ExtendedLabel&, const ExtendedLabel&) = default;
};

/// Theorem-style reduction of the ROD assembled from s's triple: rows W0,
/// columns V0, variables U0. Every block is classified, and the result is
/// cross-checked entry by entry against the closed-form rule.
DesignMatrix reduce_to_cod(const DesignMatrix& g, const AdmissibleTriple& t, const Splitting& s);

/// The [2p, 2n, k] ROD over extended labels: rows W x {0,1}, columns V x {0,1},
/// variables U0 x 0 and U1 x 1, with U0 = {u : f(u, e) = 0}.
DesignMatrix induction_embedding(const DesignMatrix& g, const AdmissibleTriple& t);

/// Reduction of induction_embedding along the pairs ((w,0), (w+e,1)). The
/// result is a [p, n, k/2] COD with half its entries zero.
DesignMatrix induct_to_cod_sparse(const DesignMatrix& g, const AdmissibleTriple& t);

/// Fills the zeros of a sparse induction result: row w becomes
/// H[w] + (-1)^f(e,w) H[w+e]. The supports are complementary, so the result has
/// no zero entries and gram scale 2.
DesignMatrix fold_dual_rows(const DesignMatrix& h, const BinaryVector& e);

/// induct_to_cod_sparse, then fold_dual_rows when dense is set.
DesignMatrix induct_to_cod(const DesignMatrix& g, const AdmissibleTriple& t, bool dense = true);

/// [G; G'] with G' the conjugated copy: a [2p, n, k] COD, gram scale 2. Rows of
/// the second half carry tau = 1 in their extended label.
DesignMatrix tjc_double(const DesignMatrix& g);

/// Removes the last `count` columns (1 or 2). Throws ConstructionError if count
/// is out of range or would leave no column.
DesignMatrix drop_columns(const DesignMatrix& d, int count);

/// Rate-1 ROD on n columns: r = n/2 for even n (two trailing columns dropped
/// when r = 3 mod 4), the n + 1 design minus one column for odd n.
DesignMatrix make_rate1_rod(int n);

/// Full pipeline for LA, DR or TJC. Throws UnsupportedError for DR/TJC with
/// n = 1 mod 8 and outside the supported range.
DesignMatrix make_cod(int n, Family family);

/// make_rate1_rod or make_cod.
DesignMatrix make_design(int n, Family family);

/// Largest n accepted by make_design for the family.
int max_supported_n(Family family);

}  // namespace odforge
