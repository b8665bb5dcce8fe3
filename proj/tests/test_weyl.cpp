#include <gtest/gtest.h>

#include "foldclust/weyl.hpp"
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

const CartanDatum kC3({"a", "b", "c"}, IntMatrix::from_rows({{2, -1, 0}, {-1, 2, -2}, {0, -1, 2}}));
const ReducedWord kWord{{"a", "b", "a", "c", "b", "a", "c", "b", "c"}};

long long roots(const std::vector<std::pair<char, int>>& types) {
  long long r = 0;
  for (auto [f, n] : types) r += oracle::type_data(f, n).roots;
  return r;
}

CartanDatum relabeled_a(std::vector<std::string> labels) {
  const auto base = canonical_cartan_datum('A', static_cast<int>(labels.size()));
  return CartanDatum(std::move(labels), base.entries());
}

}  // namespace

TEST(Weyl, LengthsAndLongestElement) {
  const auto rs = positive_roots(kC3);
  EXPECT_EQ(weyl_length(rs, weyl_element(kC3, kWord.letters)), 9u);
  EXPECT_EQ(weyl_length(rs, weyl_element(kC3, {"a", "a"})), 0u);
  EXPECT_EQ(weyl_element(kC3, {"a", "a"}), IntMatrix::identity(3));
  EXPECT_EQ(code_of([] { weyl_element(kC3, {"z"}); }), ErrorCode::InvalidWord);
}

TEST(Weyl, ConstructedWordHasParabolicPrefix) {
  const auto w = longest_word_with_parabolic_prefix(kC3, {"a", "b"});
  EXPECT_EQ(w.letters, kWord.letters);
  EXPECT_EQ(parabolic_root_count(kC3, {"a", "b"}), 3u);
  EXPECT_NO_THROW(validate_word(kC3, w, {"a", "b"}));
  for (auto [family, n] : bundled_finite_types(5)) {
    const auto c = canonical_cartan_datum(family, n);
    const std::vector<std::string> k{c.labels().front()};
    const auto word = longest_word_with_parabolic_prefix(c, k);
    EXPECT_EQ(static_cast<long long>(word.length()), oracle::type_data(family, n).roots);
    EXPECT_NO_THROW(validate_word(c, word, k));
  }
}

TEST(Weyl, ValidateWordRejectsBadWords) {
  EXPECT_EQ(code_of([] { validate_word(kC3, ReducedWord{{"a", "b", "c"}}, {}); }), ErrorCode::InvalidWord);
  // right length, not reduced
  EXPECT_EQ(code_of([] { validate_word(kC3, ReducedWord{{"a", "a", "a", "c", "b", "a", "c", "b", "c"}}, {}); }),
            ErrorCode::InvalidWord);
  // prefix letter outside K
  EXPECT_EQ(code_of([] { validate_word(kC3, kWord, {"b", "c"}); }), ErrorCode::InvalidWord);
}

TEST(Bik, IndexBookkeepingOfTheC3Example) {
  const auto idx = bik_index(kC3, kWord, {"a", "b"});
  EXPECT_EQ(idx.r, 9u);
  EXPECT_EQ(idx.r_k, 3u);
  EXPECT_EQ(idx.e, (std::vector<std::size_t>{1, 2, 3, 4, 5, 7}));
  EXPECT_EQ(idx.first.at("a"), 1u);
  EXPECT_EQ(idx.first.at("b"), 2u);
  EXPECT_EQ(idx.first.at("c"), 4u);
  const std::map<std::size_t, std::size_t> next{{1, 3}, {2, 5}, {3, 6}, {4, 7}, {5, 8}, {7, 9}};
  EXPECT_EQ(idx.next, next);
  EXPECT_EQ(idx.t.at("a"), "3");
  EXPECT_EQ(idx.t.at("b"), "2");
  EXPECT_EQ(idx.t.at("c"), "c");
}

TEST(Bik, C3ExampleMatrix) {
  const auto b = build_bik(kC3, kWord, {"a", "b"});
  EXPECT_EQ(b.row_labels(), (std::vector<std::string>{"4", "5", "7", "3", "2", "c"}));
  EXPECT_EQ(b.col_labels(), (std::vector<std::string>{"4", "5", "7"}));
  EXPECT_EQ(b.entries(),
            IntMatrix::from_rows({{0, -1, 1}, {2, 0, -2}, {-1, 1, 0}, {0, -1, 0}, {-2, 1, 0}, {1, 0, 0}}));
}

TEST(Bik, SmallA2Case) {
  const auto a2 = canonical_cartan_datum('A', 2);
  const auto b = build_bik(a2, ReducedWord{{"1", "2", "1"}}, {});
  // generator rows clash with position labels and get a prefix
  EXPECT_EQ(b.row_labels(), (std::vector<std::string>{"1", "t_1", "t_2"}));
  EXPECT_EQ(b.entries(), IntMatrix::from_rows({{0}, {1}, {-1}}));
}

TEST(Bik, ParabolicRowNamedLikeItsGenerator) {
  // K = {1}: the row t_1 is position 1, which shares its name with generator 1
  const auto a3 = canonical_cartan_datum('A', 3);
  const auto b = build_bik(a3, longest_word_with_parabolic_prefix(a3, {"1"}), {"1"});
  EXPECT_EQ(b.row_labels(), (std::vector<std::string>{"2", "3", "1", "t_2", "t_3"}));
  EXPECT_EQ(b.entries(), IntMatrix::from_rows({{0, -1}, {1, 0}, {-1, 1}, {1, 0}, {-1, 0}}));
}

TEST(Bik, FullRankWitness) {
  for (auto [family, n] : std::vector<std::pair<char, int>>{{'A', 3}, {'B', 3}, {'C', 3}, {'D', 4}, {'G', 2}, {'A', 4}}) {
    const auto c = canonical_cartan_datum(family, n);
    for (std::size_t cut = 0; cut < c.rank(); ++cut) {
      const std::vector<std::string> k(c.labels().begin(), c.labels().begin() + static_cast<long>(cut));
      const auto b = build_bik(c, longest_word_with_parabolic_prefix(c, k), k);
      EXPECT_TRUE(unit_triangular_rows(b).has_value()) << family << n << " cut " << cut;
      EXPECT_EQ(rational_rank(b.entries()), b.cols());
    }
  }
}

struct FlagRow {
  const char* name;
  CartanDatum cartan;
  std::vector<LabelMap> generators;
  std::vector<std::string> j;
  std::string type;
  std::vector<std::pair<char, int>> folded_type;
  std::vector<std::pair<char, int>> k_type;
};

class Classification : public ::testing::TestWithParam<int> {};

std::vector<FlagRow> flag_rows() {
  const auto a5 = relabeled_a({"a", "b", "c", "b'", "a'"});
  const std::vector<LabelMap> z2{{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}};
  const auto a3 = relabeled_a({"a", "b", "a'"});
  const std::vector<LabelMap> z2a3{{{"a", "a'"}, {"a'", "a"}}};
  const auto d4 = canonical_cartan_datum('D', 4);
  const std::vector<LabelMap> fork{{{"3", "4"}, {"4", "3"}}};
  return {
      {"A4_J1", canonical_cartan_datum('A', 4), {}, {"1"}, "A0", {{'A', 4}}, {{'A', 3}}},
      {"A4_J2", canonical_cartan_datum('A', 4), {}, {"2"}, "A2", {{'A', 4}}, {{'A', 1}, {'A', 2}}},
      {"A4_J14", canonical_cartan_datum('A', 4), {}, {"1", "4"}, "(A1)^3", {{'A', 4}}, {{'A', 2}}},
      {"A4_J23", canonical_cartan_datum('A', 4), {}, {"2", "3"}, "D4", {{'A', 4}}, {{'A', 1}, {'A', 1}}},
      {"A5_J3", canonical_cartan_datum('A', 5), {}, {"3"}, "D4", {{'A', 5}}, {{'A', 2}, {'A', 2}}},
      {"A5_J13", canonical_cartan_datum('A', 5), {}, {"1", "3"}, "E6", {{'A', 5}}, {{'A', 1}, {'A', 2}}},
      {"D4_fork", d4, {}, {"3", "4"}, "A5", {{'D', 4}}, {{'A', 2}}},
      {"D4_end", d4, {}, {"1"}, "(A1)^2", {{'D', 4}}, {{'A', 3}}},
      {"A3_Z2_all", a3, z2a3, {"a", "a'", "b"}, "B2", {{'B', 2}}, {}},
      {"A5_Z2_c", a5, z2, {"c"}, "B3", {{'C', 3}}, {{'A', 2}}},
      {"A5_Z2_ends", a5, z2, {"{a,a'}"}, "(A1)^2", {{'C', 3}}, {{'C', 2}}},
      {"D4_Z2_fork", d4, fork, {"3", "4"}, "C3", {{'B', 3}}, {{'A', 2}}},
      {"D4_Z2_end", d4, fork, {"1"}, "(A1)^2", {{'B', 3}}, {{'B', 2}}},
  };
}

TEST_P(Classification, TypeAndCounts) {
  const auto row = flag_rows()[static_cast<std::size_t>(GetParam())];
  const auto action = enumerate_group(row.generators, row.cartan.labels());
  const auto result = classify_flag_case(row.cartan, action, row.j);
  ASSERT_TRUE(result.cluster_type) << row.name;
  EXPECT_EQ(result.cluster_type->name(), row.type) << row.name;
  EXPECT_EQ(static_cast<long long>(result.variables), roots(row.folded_type) - roots(row.k_type)) << row.name;
  EXPECT_EQ(result.coefficients, result.folded.rank());
  EXPECT_EQ(result.bik.cols() + result.coefficients, result.variables);
}

INSTANTIATE_TEST_SUITE_P(Table, Classification, ::testing::Range(0, 13));

TEST(FlagCase, InfiniteAndInvalidCases) {
  const auto a5 = relabeled_a({"a", "b", "c", "b'", "a'"});
  const auto z2 = enumerate_group(std::vector<LabelMap>{{{"a", "a'"}, {"a'", "a"}, {"b", "b'"}, {"b'", "b"}}}, a5.labels());
  EXPECT_FALSE(classify_flag_case(a5, z2, {"b", "b'"}).cluster_type);
  EXPECT_EQ(code_of([&] { classify_flag_case(a5, z2, {"a"}); }), ErrorCode::NotEquivariant);
  EXPECT_EQ(code_of([&] { classify_flag_case(a5, z2, {}); }), ErrorCode::UnknownVertex);
}
