#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tdw/lattice.hpp"
#include "tdw/linalg.hpp"

namespace tdw {
namespace {

SparseMatrix M(std::vector<std::vector<Rational>> rows) { return SparseMatrix::dense(rows); }

TEST(ExactRank, Examples) {
  EXPECT_EQ(exact_rank(M({{1, 2}, {2, 4}})), 1u);
  EXPECT_EQ(exact_rank(M({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), 3u);
  const auto h = M({{1, make_rational(1, 2), make_rational(1, 3)},
                    {make_rational(1, 2), make_rational(1, 3), make_rational(1, 4)},
                    {make_rational(1, 3), make_rational(1, 4), make_rational(1, 5)}});
  EXPECT_EQ(exact_rank(h), 3u);
  EXPECT_EQ(exact_rank(SparseMatrix(0, 0)), 0u);
  EXPECT_EQ(exact_rank(SparseMatrix(4, 3)), 0u);
}

TEST(SparseMatrix, SetRowMergesDuplicates) {
  SparseMatrix m(1, 4);
  m.set_row(0, {{2, 1}, {0, 3}, {2, -1}, {1, 5}});
  ASSERT_EQ(m.row(0).size(), 2u);
  EXPECT_EQ(m.row(0)[0].first, 0u);
  EXPECT_EQ(m.row(0)[1].first, 1u);
  EXPECT_THROW(m.set_row(0, {{4, 1}}), InternalError);
}

TEST(ExactRank, ModularPrimesArePrime) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 5; ++i) {
    const auto p = random_large_prime(rng);
    EXPECT_TRUE(is_prime_u64(p));
    EXPECT_GE(p, 1ull << 61);
  }
  EXPECT_FALSE(is_prime_u64(1ull << 61));
  EXPECT_TRUE(is_prime_u64(2305843009213693951ull));  // 2^61 - 1
}

TEST(ExactRank, RankDeficientRandom) {
  // Rows built as rational combinations of fewer generators.
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> v(-50, 50);
  for (int t = 0; t < 30; ++t) {
    const int r = 1 + t % 5, cols = 8, rows = 10;
    std::vector<std::vector<Rational>> gens(r, std::vector<Rational>(cols));
    for (auto& g : gens)
      for (auto& x : g) x = make_rational(v(rng), 1 + std::abs(v(rng)));
    std::vector<std::vector<Rational>> m(rows, std::vector<Rational>(cols, 0));
    for (auto& row : m)
      for (const auto& g : gens) {
        const Rational c = make_rational(v(rng), 7);
        for (int j = 0; j < cols; ++j) row[j] += c * g[j];
      }
    EXPECT_LE(exact_rank(M(m)), static_cast<std::size_t>(r));
    EXPECT_EQ(fraction_free_rank(M(m)), exact_rank(M(m)));
  }
}

TEST(LatticeQuotient, CanonicalRepresentatives) {
  // Lattice spanned by (2, 1) and (0, 3) in Z^2: index 6.
  const LatticeQuotient L({{2, 1}, {0, 3}}, 2);
  EXPECT_EQ(L.rank(), 2u);
  EXPECT_EQ(L.reduce({2, 1}), (ExponentVector{0, 0}));
  EXPECT_EQ(L.reduce({5, 7}), L.reduce({5 - 2 * 4, 7 - 4 + 3}));
  std::set<ExponentVector> reps;
  for (int a = -6; a < 6; ++a)
    for (int b = -6; b < 6; ++b) reps.insert(L.reduce({a, b}));
  EXPECT_EQ(reps.size(), 6u);
  const LatticeQuotient line({{1, -1}}, 2);
  EXPECT_EQ(line.rank(), 1u);
  EXPECT_EQ(line.reduce({3, 0}), line.reduce({0, 3}));
  EXPECT_NE(line.reduce({3, 0}), line.reduce({0, 2}));
}

}  // namespace
}  // namespace tdw
