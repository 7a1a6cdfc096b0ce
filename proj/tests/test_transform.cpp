#include <doctest.h>

#include "odforge/error.hpp"
#include "odforge/transform.hpp"
#include "support.hpp"

using namespace odforge;
using Tag = BlockType::Tag;

namespace {

Block block(Monomial a, Monomial b, Monomial c, Monomial d) { return {{{a, b}, {c, d}}}; }

// H entry straight from the rule, with the literal f.
Monomial oracle_entry(const BinaryVector& w, const BinaryVector& v, const IndexSet& U0, const BinaryVector& e) {
  const int r = w.dim();
  const std::uint32_t u = w.bits() ^ v.bits();
  auto idx = U0.index_of(BinaryVector(u, r));
  if (!idx) return Monomial::zero();
  const int fu = odtest::literal_f(u, v.bits(), r);
  const int fuh = odtest::literal_f(u ^ e.bits(), v.bits(), r);
  return Monomial::of(static_cast<int>(*idx), fu ? -1 : 1, fuh != fu);
}

void check_against_oracle(const DesignMatrix& h, const IndexSet& U0, const BinaryVector& e) {
  for (std::size_t i = 0; i < h.p(); ++i) {
    for (std::size_t j = 0; j < h.n(); ++j) REQUIRE(h.at(i, j) == oracle_entry(h.rows()[i], h.cols()[j], U0, e));
  }
}

}  // namespace

TEST_CASE("block classification examples") {
  const auto x0 = Monomial::of(0, 1), x1 = Monomial::of(1, 1);
  CHECK(classify_block(block(x0, x1, x1.negated(), x0)) == BlockType{Tag::T1, 1});
  CHECK(classify_block(block(x0.negated(), x1, x1.negated(), x0.negated())) == BlockType{Tag::T2, -1});
  CHECK_THROWS_AS(classify_block(block(x0, x1, x1, x0)), ConstructionError);
  CHECK_THROWS_AS(classify_block(block(x0, x1, Monomial::zero(), x0)), ConstructionError);
  CHECK_THROWS_AS(classify_block(block(x0, x0, x0.negated(), x0)), ConstructionError);
}

TEST_CASE("classification round trips through expansion") {
  for (Tag tag : {Tag::T1, Tag::T2}) {
    for (int s : {1, -1}) {
      const BlockType t{tag, s};
      const Block b = expand_block(t, 4, 9);
      CHECK(classify_block(b) == t);
      CHECK(expand_block(classify_block(b), 4, 9) == b);
    }
  }
}

TEST_CASE("extended labels encode tau as the last component") {
  const ExtendedLabel x{BinaryVector(0b101u, 3), 1};
  const BinaryVector enc = x.encode();
  CHECK(enc.dim() == 4);
  CHECK(enc.component(4) == 1);
  CHECK(ExtendedLabel::decode(enc) == x);
}

TEST_CASE("r = 1 rate-1 design reduces to [z0]") {
  const AdmissibleTriple t = build_rate1_triple(1);
  const DesignMatrix g = assemble_rod(t);
  const DesignMatrix h = reduce_to_cod(g, t, build_splitting(t));
  REQUIRE(h.params() == DesignParams{1, 1, 1});
  CHECK(h.at(0, 0) == Monomial::of(0, 1, false));
  CHECK(verify_symbolic(h).passed);
}

TEST_CASE("reduction of the maximal-rate triples matches the closed-form rule") {
  for (int r = 2; r <= 9; ++r) {
    AdmissibleTriple t = build_maxrate_triple(r);
    if (t.pending_column_drop) t = drop_trailing_columns(t, t.pending_column_drop);
    const Splitting s = build_splitting(t);
    const DesignMatrix g = assemble_rod(t);
    const DesignMatrix h = reduce_to_cod(g, t, s);
    CHECK(h.params() == DesignParams{static_cast<std::int64_t>(s.W0.size()), static_cast<std::int64_t>(s.V0.size()),
                                     static_cast<std::int64_t>(s.U0.size())});
    check_against_oracle(h, s.U0, t.e);
    CHECK(verify_symbolic(h).passed);
  }
}

TEST_CASE("block type follows the f comparison: T2 when f(u+e, v) = f(u, v)") {
  AdmissibleTriple t = build_maxrate_triple(6);
  const Splitting s = build_splitting(t);
  const DesignMatrix g = assemble_rod(t);
  int seen[2] = {0, 0};
  for (const auto& w : s.W0) {
    for (const auto& v : s.V0) {
      const BinaryVector u = w + v;
      if (!s.U0.contains(u)) continue;
      const std::size_t i = *g.row_index(w), ih = *g.row_index(hat(w)), j = *g.col_index(v), jh = *g.col_index(hat(v));
      const BlockType bt = classify_block(block(g.at(i, j), g.at(i, jh), g.at(ih, j), g.at(ih, jh)));
      const bool same = f(hat(u), v) == f(u, v);
      CHECK((bt.tag == Tag::T2) == same);
      ++seen[same];
    }
  }
  CHECK(seen[0] > 0);
  CHECK(seen[1] > 0);
}

TEST_CASE("reduction rejects a foreign design or splitting") {
  const AdmissibleTriple t = build_maxrate_triple(5);
  const Splitting s = build_splitting(t);
  DesignMatrix g = assemble_rod(t);
  Splitting bad = s;
  std::swap(bad.W0, bad.W1);
  CHECK_THROWS_AS(reduce_to_cod(g, t, bad), ConstructionError);
  const auto [i, j] = odtest::nonzero_positions(g).front();
  g.set(i, j, g.at(i, j).negated());
  CHECK_THROWS_AS(reduce_to_cod(g, t, s), ConstructionError);
}

TEST_CASE("LA at n = 5 is [15, 5, 10] with rate 2/3") {
  const DesignMatrix h = make_cod(5, Family::LA);
  CHECK(h.params() == DesignParams{15, 5, 10});
  CHECK(h.params().rate() == Rational(2, 3));
  CHECK(verify_symbolic(h).passed);
}

TEST_CASE("induction embedding is a [2p, 2n, k] real design") {
  for (int r = 1; r <= 4; ++r) {
    const AdmissibleTriple t = build_rate1_triple(r);
    const DesignMatrix g = assemble_rod(t);
    const DesignMatrix m = induction_embedding(g, t);
    CHECK(m.p() == 2 * g.p());
    CHECK(m.n() == 2 * g.n());
    CHECK(m.k() == g.k());
    CHECK(verify_symbolic(m).passed);
  }
}

TEST_CASE("induction parameters for r = 1, 2, 3") {
  const DesignParams expected[] = {{2, 2, 1}, {4, 4, 2}, {8, 8, 4}};
  for (int r = 1; r <= 3; ++r) {
    const AdmissibleTriple t = build_rate1_triple(r);
    const DesignMatrix g = assemble_rod(t);
    const DesignMatrix sparse = induct_to_cod_sparse(g, t);
    CHECK(sparse.params() == expected[r - 1]);
    CHECK(sparse.gram_scale() == 1);
    CHECK(sparse.zero_count() * 2 == sparse.p() * sparse.n());
    CHECK(verify_symbolic(sparse).passed);
    check_against_oracle(sparse, t.U.subset([&](const BinaryVector& u) { return f(u, t.e) == 0; }), t.e);

    const DesignMatrix dense = induct_to_cod(g, t);
    CHECK(dense.params() == expected[r - 1]);
    CHECK(dense.gram_scale() == 2);
    CHECK(dense.zero_count() == 0);
    CHECK(verify_symbolic(dense).passed);
    CHECK(verify_numeric(dense, 2, 9).passed);
  }
}

TEST_CASE("induction needs hat-stable sets") {
  AdmissibleTriple t;
  t.r = t.requested_r = 1;
  t.e = basis_vector(1, 1);
  t.U = IndexSet(1, {BinaryVector(0u, 1)});
  t.V = IndexSet::all(1);
  t.W = IndexSet::all(1);
  const DesignMatrix g = assemble_rod(t);
  CHECK_THROWS_AS(induction_embedding(g, t), ConstructionError);
}

TEST_CASE("stacked doubling gives the TJC shapes") {
  const DesignParams expected[] = {{4, 2, 2}, {8, 4, 4}};
  for (int r = 1; r <= 2; ++r) {
    const DesignMatrix g = assemble_rod(build_rate1_triple(r));
    const DesignMatrix h = tjc_double(g);
    CHECK(h.params() == expected[r - 1]);
    CHECK(h.zero_count() == 0);
    CHECK(h.gram_scale() == 2);
    CHECK(verify_symbolic(h).passed);
    for (std::size_t i = 0; i < g.p(); ++i) {
      for (std::size_t j = 0; j < g.n(); ++j) CHECK(h.at(g.p() + i, j) == g.at(i, j).conjugated());
    }
  }
}

TEST_CASE("stripping conjugation breaks a complex design") {
  for (Family fam : {Family::LA, Family::DR, Family::TJC}) {
    DesignMatrix h = make_cod(4, fam);
    REQUIRE(verify_symbolic(h).passed);
    for (std::size_t i = 0; i < h.p(); ++i) {
      for (std::size_t j = 0; j < h.n(); ++j) {
        if (h.at(i, j).conj) h.set(i, j, h.at(i, j).conjugated());
      }
    }
    CHECK_FALSE(verify_symbolic(h).passed);
    CHECK_FALSE(verify_numeric(h, 3, 1).passed);
  }
}

TEST_CASE("column removal") {
  const DesignMatrix tjc4 = make_cod(4, Family::TJC);
  const DesignMatrix tjc3 = drop_columns(tjc4, 1);
  CHECK(tjc3.params() == DesignParams{8, 3, 4});
  CHECK(tjc3.provenance().columns_dropped == 1);
  CHECK(verify_symbolic(tjc3).passed);
  CHECK_THROWS_AS(drop_columns(tjc4, 0), ConstructionError);
  CHECK_THROWS_AS(drop_columns(tjc4, 3), ConstructionError);
  CHECK_THROWS_AS(drop_columns(drop_columns(make_cod(2, Family::DR), 1), 1), ConstructionError);

  AdmissibleTriple t = build_maxrate_triple(3);
  CHECK(t.r == 4);
  const DesignMatrix g8 = assemble_rod(t);
  CHECK(g8.params() == DesignParams{8, 8, 6});
  const DesignMatrix g6 = drop_columns(g8, 2);
  CHECK(g6.params() == DesignParams{8, 6, 6});
  CHECK(verify_symbolic(g6).passed);
}

TEST_CASE("pipeline examples") {
  CHECK(make_cod(12, Family::DR).params() == DesignParams{64, 12, 32});
  CHECK(make_cod(12, Family::LA).params() == DesignParams{792, 12, 462});
  CHECK_THROWS_AS(make_cod(9, Family::DR), UnsupportedError);
  CHECK_THROWS_AS(make_cod(17, Family::TJC), UnsupportedError);
  CHECK(make_cod(9, Family::LA).params() == DesignParams{210, 9, 126});
  CHECK_THROWS_AS(make_cod(1, Family::LA), UnsupportedError);
  CHECK_THROWS_AS(make_cod(4, Family::Rate1Rod), std::invalid_argument);

  const DesignMatrix r8 = make_rate1_rod(8);
  CHECK(r8.params() == DesignParams{16, 8, 16});
  CHECK(r8.zero_count() == 0);
  CHECK(make_rate1_rod(6).params() == DesignParams{8, 6, 8});
  CHECK(make_rate1_rod(5).params() == DesignParams{8, 5, 8});
}

TEST_CASE("provenance records the construction chain") {
  const DesignMatrix h = make_cod(7, Family::DR);
  const Provenance& pv = h.provenance();
  CHECK(pv.family == "dr");
  CHECK(pv.r == 3);
  CHECK(pv.columns_dropped == 1);
  REQUIRE(pv.chain.size() >= 4);
  CHECK(pv.chain.back() == "drop:1");
}
