#include <gtest/gtest.h>

#include "foldclust/dynkin.hpp"
#include "foldclust/folding.hpp"
#include "foldclust/random.hpp"
#include "oracles.hpp"

using namespace foldclust;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::ParseError;
}

oracle::Dense dense(const ExchangeMatrix& b) {
  oracle::Dense out(b.rows(), std::vector<long long>(b.cols()));
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) out[r][c] = b.at(r, c);
  return out;
}

CartanDatum type_a(const std::vector<std::string>& labels) {
  const std::size_t n = labels.size();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 2;
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = -1;
  }
  return CartanDatum(labels, m);
}

// Random acyclic skew-symmetrizable matrix: positive entries only above the
// diagonal, b_ij = s_ij d_i and b_ji = -s_ij d_j.
ExchangeMatrix random_acyclic(CounterRng& rng, std::size_t n) {
  std::vector<Int> d(n);
  for (auto& x : d) x = rng.between(1, 2);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Int s = rng.between(0, 1);
      m(i, j) = s * d[i];
      m(j, i) = -s * d[j];
    }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
  return ExchangeMatrix::square(labels, m);
}

}  // namespace

TEST(FoldExchange, D4ByZ3GivesG2) {
  const std::vector<std::string> v{"1", "1'", "1''", "2"};
  const auto d4 = ExchangeMatrix::square(v, IntMatrix::from_rows({{0, 0, 0, 1}, {0, 0, 0, 1}, {0, 0, 0, 1}, {-1, -1, -1, 0}}));
  const auto z3 = enumerate_group(std::vector<LabelMap>{{{"1", "1'"}, {"1'", "1''"}, {"1''", "1"}}}, v);
  const auto g2 = fold_exchange(d4, z3);
  EXPECT_EQ(g2.entries(), IntMatrix::from_rows({{0, 3}, {-1, 0}}));
  EXPECT_EQ(g2.row_labels(), (std::vector<std::string>{"{1,1',1''}", "2"}));
  EXPECT_EQ(g2.symmetrizer(), (std::vector<Int>{3, 1}));
}

TEST(FoldExchange, OrbitOrderFollowsFirstOccurrence) {
  const std::vector<std::string> v{"2", "1", "1'"};
  const auto b = ExchangeMatrix::square(v, IntMatrix::from_rows({{0, -1, -1}, {1, 0, 0}, {1, 0, 0}}));
  const auto z2 = enumerate_group(std::vector<LabelMap>{{{"1", "1'"}, {"1'", "1"}}}, v);
  const auto f = fold_exchange(b, z2);
  EXPECT_EQ(f.row_labels(), (std::vector<std::string>{"2", "{1,1'}"}));
  EXPECT_EQ(f.entries(), IntMatrix::from_rows({{0, -1}, {2, 0}}));
}

TEST(FoldExchange, FrozenRowsFoldSeparately) {
  const std::vector<std::string> rows{"a", "a'", "f", "f'"};
  const ExchangeMatrix b(rows, {"a", "a'"}, IntMatrix::from_rows({{0, 0}, {0, 0}, {1, 0}, {0, 1}}));
  const auto z2 = enumerate_group(std::vector<LabelMap>{{{"a", "a'"}, {"a'", "a"}, {"f", "f'"}, {"f'", "f"}}}, rows);
  const auto f = fold_exchange(b, z2);
  EXPECT_EQ(f.row_labels(), (std::vector<std::string>{"{a,a'}", "{f,f'}"}));
  EXPECT_EQ(f.col_labels(), (std::vector<std::string>{"{a,a'}"}));
  EXPECT_EQ(f.entries(), IntMatrix::from_rows({{0}, {1}}));
}

TEST(FoldExchange, Errors) {
  const std::vector<std::string> v{"1", "2", "3"};
  const auto a3 = ExchangeMatrix::square(v, IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}));
  const auto flip = enumerate_group(std::vector<LabelMap>{{{"1", "3"}, {"3", "1"}}}, v);
  EXPECT_EQ(code_of([&] { fold_exchange(a3, flip); }), ErrorCode::NotEquivariant);
  const auto swap = enumerate_group(std::vector<LabelMap>{{{"1", "2"}, {"2", "1"}}}, v);
  const auto pair = ExchangeMatrix::square({"1", "2", "3"}, IntMatrix::from_rows({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}}));
  EXPECT_EQ(code_of([&] { fold_exchange(pair, swap); }), ErrorCode::NotEquivariant);
  const auto inside = ExchangeMatrix::square({"1", "2", "3"}, IntMatrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}));
  const auto cyc = enumerate_group(std::vector<LabelMap>{{{"1", "2"}, {"2", "3"}, {"3", "1"}}}, v);
  EXPECT_EQ(code_of([&] { fold_exchange(inside, cyc); }), ErrorCode::NotAdmissible);
}

TEST(FoldExchange, AgreesWithDefinitionOnUnfoldings) {
  CounterRng rng(20240611);
  for (int trial = 0; trial < 60; ++trial) {
    const auto b = random_acyclic(rng, 2 + rng.below(3));
    const auto u = unfold_exchange(b);
    EXPECT_TRUE(validate_admissible(u.matrix, u.action).ok());
    EXPECT_TRUE(u.matrix.symmetrizer() == std::vector<Int>(u.matrix.cols(), 1));
    const auto orbit_pos = detail::orbits_in_order(u.matrix.row_labels(), u.action);
    EXPECT_EQ(dense(fold_exchange(u.matrix, u.action)), oracle::fold(dense(u.matrix), orbit_pos));
    EXPECT_EQ(fold_exchange(u.matrix, u.action).entries(), b.entries());
  }
}

TEST(FoldCartan, A5ByZ2IsC3) {
  const auto a5 = type_a({"a", "b", "c", "b'", "a'"});
  const auto z2 = enumerate_group(std::vector<LabelMap>{{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}}, a5.labels());
  const auto c = fold_cartan(a5, z2);
  EXPECT_EQ(c.labels(), (std::vector<std::string>{"{a,a'}", "{b,b'}", "c"}));
  EXPECT_EQ(c.entries(), IntMatrix::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}));
  EXPECT_EQ(recognize_dynkin(c)->name(), "C3");
}

TEST(FoldCartan, NonAdmissibleRejected) {
  const auto a3 = type_a({"1", "2", "3"});
  const auto odd = enumerate_group(std::vector<LabelMap>{{{"1", "2"}, {"2", "1"}}}, a3.labels());
  EXPECT_EQ(code_of([&] { fold_cartan(a3, odd); }), ErrorCode::NotEquivariant);
  const auto a2 = type_a({"1", "2"});
  const auto sw = enumerate_group(std::vector<LabelMap>{{{"1", "2"}, {"2", "1"}}}, a2.labels());
  EXPECT_EQ(code_of([&] { fold_cartan(a2, sw); }), ErrorCode::NotAdmissible);
}

TEST(UnfoldCartan, G2GivesD4Star) {
  const CartanDatum g2({"1", "2"}, IntMatrix::from_rows({{2, -1}, {-3, 2}}));
  const auto u = unfold_cartan(g2);
  EXPECT_EQ(u.cartan.labels(), (std::vector<std::string>{"1", "(2,0)", "(2,1)", "(2,2)"}));
  EXPECT_EQ(recognize_dynkin(u.cartan)->name(), "D4");
  EXPECT_EQ(u.action.order(), 3u);
  EXPECT_EQ(fold_cartan(u.cartan, u.action).entries(), g2.entries());
}

TEST(UnfoldCartan, RoundTripsEveryBundledTypeUpToRankFour) {
  for (auto [family, n] : bundled_finite_types(4)) {
    const auto c = canonical_cartan_datum(family, n);
    const auto u = unfold_cartan(c);
    EXPECT_TRUE(u.cartan.is_symmetric());
    EXPECT_TRUE(validate_admissible(u.cartan, u.action).ok());
    EXPECT_EQ(fold_cartan(u.cartan, u.action).entries(), c.entries()) << family << n;
  }
}

TEST(UnfoldExchange, RejectsCycles) {
  const auto cyc = ExchangeMatrix::square({"1", "2", "3"}, IntMatrix::from_rows({{0, 1, -1}, {-1, 0, 1}, {1, -1, 0}}));
  EXPECT_EQ(code_of([&] { unfold_exchange(cyc); }), ErrorCode::NotAcyclic);
}

TEST(FoldRoots, A5ByZ2GivesC3Roots) {
  const auto a5 = type_a({"a", "b", "c", "b'", "a'"});
  const auto z2 = enumerate_group(std::vector<LabelMap>{{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}}, a5.labels());
  const auto folded = fold_roots(a5, z2);
  const auto c3 = positive_roots(fold_cartan(a5, z2));
  EXPECT_EQ(folded.roots.size(), 9u);
  EXPECT_EQ(std::set<RootVector>(folded.roots.begin(), folded.roots.end()),
            std::set<RootVector>(c3.positive_roots.begin(), c3.positive_roots.end()));
}

TEST(FoldRoots, D4ByZ3GivesG2Roots) {
  const CartanDatum d4({"1", "1'", "1''", "2"},
                       IntMatrix::from_rows({{2, 0, 0, -1}, {0, 2, 0, -1}, {0, 0, 2, -1}, {-1, -1, -1, 2}}));
  const auto z3 = enumerate_group(std::vector<LabelMap>{{{"1", "1'"}, {"1'", "1''"}, {"1''", "1"}}}, d4.labels());
  const auto folded = fold_roots(d4, z3);
  const auto g2 = positive_roots(fold_cartan(d4, z3));
  EXPECT_EQ(folded.roots.size(), 6u);
  EXPECT_EQ(std::set<RootVector>(folded.roots.begin(), folded.roots.end()),
            std::set<RootVector>(g2.positive_roots.begin(), g2.positive_roots.end()));
}
