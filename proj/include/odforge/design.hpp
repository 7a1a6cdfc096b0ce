#pragma once

// Orthogonal designs as grids of signed (possibly conjugated) single variables,
// plus exact verification of the Gram identity.
//
// A design D with gram scale s satisfies D^* D = s (|x_0|^2 + ... + |x_{k-1}|^2) I.
// Plain RODs and CODs have s = 1. The half-rate complex families built without
// zero entries (stacked or row-folded) carry s = 2: with every symbol appearing
// twice per column no scale-1 design of that shape exists.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odforge/admissible.hpp"
#include "odforge/binary.hpp"
#include "odforge/bounds.hpp"

namespace odforge {

struct Monomial {
  std::int32_t var = -1;  ///< -1 for a zero entry
  std::int8_t sign = 0;   ///< +1 / -1, 0 for zero entries
  bool conj = false;

  static constexpr Monomial zero() { return {}; }
  static Monomial of(int var, int sign, bool conj = false);

  constexpr bool is_zero() const { return var < 0; }
  Monomial negated() const;
  Monomial conjugated() const;

  friend constexpr bool operator==(const Monomial&, const Monomial&) = default;
};

enum class DesignKind { Rod, Cod };

std::string kind_name(DesignKind kind);

struct Provenance {
  std::string family;  ///< "rate1-rod", "maxrate-rod", "la", "dr", "tjc", or an intermediate tag
  int r = 0;           ///< dimension of the underlying triple
  std::string case_tag;
  int columns_dropped = 0;
  std::vector<std::string> chain;  ///< construction steps in order

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class DesignMatrix {
 public:
  DesignMatrix() = default;
  /// All entries start at zero. `variables` holds the label of each variable id.
  DesignMatrix(DesignKind kind, std::vector<BinaryVector> rows, std::vector<BinaryVector> cols,
               std::vector<BinaryVector> variables, int gram_scale = 1);

  DesignKind kind() const { return kind_; }
  std::size_t p() const { return rows_.size(); }
  std::size_t n() const { return cols_.size(); }
  std::size_t k() const { return variables_.size(); }
  DesignParams params() const;
  int gram_scale() const { return gram_scale_; }
  void set_gram_scale(int s) { gram_scale_ = s; }

  const std::vector<BinaryVector>& rows() const { return rows_; }
  const std::vector<BinaryVector>& cols() const { return cols_; }
  const std::vector<BinaryVector>& variables() const { return variables_; }

  const Monomial& at(std::size_t row, std::size_t col) const { return entries_[row * n() + col]; }
  /// Throws std::out_of_range / std::invalid_argument on bad positions or ids.
  void set(std::size_t row, std::size_t col, Monomial m);

  const Provenance& provenance() const { return provenance_; }
  Provenance& provenance() { return provenance_; }

  std::size_t zero_count() const;
  /// Nonzero entries of one column, in row order.
  std::vector<std::pair<std::size_t, Monomial>> column(std::size_t col) const;

  std::optional<std::size_t> row_index(const BinaryVector& label) const;
  std::optional<std::size_t> col_index(const BinaryVector& label) const;

  /// Copy keeping only the given columns, in the given order.
  DesignMatrix select_columns(const std::vector<std::size_t>& cols) const;

  /// "x3", "-z0*", "0".
  std::string entry_text(std::size_t row, std::size_t col) const;

  friend bool operator==(const DesignMatrix&, const DesignMatrix&) = default;

 private:
  DesignKind kind_ = DesignKind::Rod;
  std::vector<BinaryVector> rows_, cols_, variables_;
  std::vector<Monomial> entries_;
  int gram_scale_ = 1;
  Provenance provenance_;
};

/// Variable name for exports: x<i> for real designs, z<i> for complex ones.
std::string variable_name(DesignKind kind, int var);

/// G_u restricted to rows W and columns V: (w, v) holds (-1)^f(u,v) when
/// u = v + w. Single variable (id 0, label u).
DesignMatrix build_slice(const BinaryVector& u, const IndexSet& V, const IndexSet& W);

/// G = sum over u in U of x_u G_u, variable ids in canonical order of U.
/// Throws InternalError if two slices collide on one entry.
DesignMatrix assemble_rod(const AdmissibleTriple& t);

struct SymbolicResidual {
  std::size_t col_a = 0, col_b = 0;
  std::string term;          ///< e.g. "x1 x4", "z0* z2"
  std::int64_t excess = 0;   ///< actual coefficient minus expected
};

struct SymbolicReport {
  bool passed = true;
  int expected_scale = 1;
  /// Set when every diagonal is a uniform multiple of the full sum of squares.
  std::optional<int> observed_scale;
  std::size_t residual_count = 0;
  std::vector<SymbolicResidual> residuals;  ///< first few, in column-pair order
  std::string to_string() const;
};

struct VerifyOptions {
  unsigned threads = 0;          ///< 0 = pick from problem size
  std::size_t max_residuals = 16;
};

/// Exact D^* D over formal variables: off-diagonal terms must cancel and each
/// diagonal must be gram_scale * sum |x_i|^2 with every variable present.
SymbolicReport verify_symbolic(const DesignMatrix& d, const VerifyOptions& opts = {});

struct NumericReport {
  bool passed = true;
  double max_error = 0.0;  ///< worst |D^*D - s S I| entry over all trials
  double tolerance = 0.0;  ///< 1e-9 * the sum-of-squares scale of that trial
  std::string to_string() const;
};

/// Random substitution check; real values for RODs, complex for CODs.
NumericReport verify_numeric(const DesignMatrix& d, int trials, std::uint64_t seed);

}  // namespace odforge
