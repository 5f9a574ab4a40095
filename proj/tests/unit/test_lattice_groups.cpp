#include <gtest/gtest.h>

#include <random>

#include "hsets/error.hpp"
#include "hsets/group.hpp"
#include "hsets/lattice.hpp"

using namespace hsets;

TEST(LatticeSum, ReferenceExamples) {
  const std::vector<Window> box{Window(-5, 5), Window(-5, 5)};
  const auto a = lattice_hfold_sum({{0, 0}, {1, 1}}, 2, box);
  EXPECT_EQ(a.members, (std::vector<Point>{{0, 0}, {1, 1}, {2, 2}}));
  EXPECT_TRUE(a.complete);
  const auto b = lattice_hfold_sum({{0, 1}, {1, 0}}, 2, box);
  EXPECT_EQ(b.members, (std::vector<Point>{{0, 2}, {1, 1}, {2, 0}}));
}

TEST(LatticeSum, TruncatedInputWithNegativesIsFlagged) {
  const std::vector<Window> box{Window(-5, 5), Window(-5, 5)};
  EXPECT_FALSE(lattice_hfold_sum({{-1, 0}, {1, 1}}, 2, box, true).complete);
  EXPECT_TRUE(lattice_hfold_sum({{0, 0}, {1, 1}}, 2, box, true).complete);
}

TEST(LatticeCount, ReferenceExample) {
  EXPECT_EQ(nonnegative_representation_count(2, {1, 1}), Int(4));
  EXPECT_EQ(lattice_representation_count({{0, 0}, {1, 1}, {0, 1}, {1, 0}}, 2, {1, 1}), Int(4));
}

TEST(MinNorm, ReferenceExamples) {
  for (std::size_t k = 1; k <= 6; ++k) {
    std::vector<Point> e;
    for (std::size_t i = 0; i < k; ++i) {
      Point p(k, 0);
      p[i] = 1;
      e.push_back(p);
    }
    const auto r = min_norm_inequality(e);
    EXPECT_EQ(r.sum_norm_sq, Int(k));
    EXPECT_EQ(r.k_min_norm_sq, Int(k));
  }
  const auto a = min_norm_inequality({{3, 4}, {1, 0}});
  EXPECT_EQ(a.sum_norm_sq, Int(32));
  EXPECT_EQ(a.k_min_norm_sq, Int(2));
  const auto b = min_norm_inequality({{1, 1}, {1, 1}, {1, 1}});
  EXPECT_EQ(b.sum_norm_sq, Int(18));
  EXPECT_EQ(b.k_min_norm_sq, Int(6));
  EXPECT_THROW(min_norm_inequality({{0, 0}}), DomainError);
  EXPECT_THROW(min_norm_inequality({{-1, 2}}), DomainError);
}

TEST(LatticeTheorem, ReferenceExamples) {
  const NormTailFamily f({{0, 0}, {1, 1}}, Rational(2));
  const auto ok = verify_lattice_theorem(f, 2, 3, 3);
  EXPECT_TRUE(ok.passed());
  const auto low = verify_lattice_theorem(f, 2, 1, 3);
  EXPECT_FALSE(low.rows.back().undetermined.empty());
  EXPECT_TRUE(low.rows.back().contradictions.empty());
  const auto one = verify_lattice_theorem(f, 1, 3, 3);
  EXPECT_TRUE(one.rows.front().equal_on_ball);
}

TEST(LatticeTheorem, CertifyingIndexIsExact) {
  const NormTailFamily f({{0, 0}, {1, 1}}, Rational(2));
  // (2q - 2)^2 * 2 > 9 first holds at q = 3.
  EXPECT_EQ(f.certifying_q({3, 0}, 2), Int(3));
  EXPECT_FALSE(f.in_tail({1, 1}, 1));
  EXPECT_TRUE(f.in_tail({3, 0}, 1));  // 9 >= 8
}

TEST(Groups, ReferenceExamples) {
  const auto z6 = FiniteGroupTable::cyclic(6);
  EXPECT_EQ(group_hfold(z6, {1, 3}, 2), (std::vector<Element>{0, 2, 4}));
  std::vector<Element> all(6);
  for (Element i = 0; i < 6; ++i) all[i] = i;
  EXPECT_EQ(group_hfold(z6, all, 3), all);
  const auto g = FiniteGroupTable::direct_product(FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(3));
  const auto one_one = product_subset(FiniteGroupTable::cyclic(2), FiniteGroupTable::cyclic(3), {1}, {1});
  EXPECT_EQ(group_hfold(g, one_one, 6), (std::vector<Element>{g.identity()}));
}

TEST(Groups, NonabelianOrderRespected) {
  // S3 as permutations of {0,1,2}, composed right to left.
  std::vector<std::array<int, 3>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
  std::vector<std::vector<Element>> table(6, std::vector<Element>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      table[a][b] = static_cast<Element>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  const FiniteGroupTable s3(table, "S3");
  EXPECT_FALSE(s3.is_abelian());
  EXPECT_EQ(s3.mul(1, 2) == s3.mul(2, 1), false);
  EXPECT_EQ(group_hfold(s3, {1, 2}, 2).size(), 3u);  // {e, (1 2)(2 3), (2 3)(1 2)}
}

TEST(Groups, InvalidTablesRejected) {
  EXPECT_THROW(FiniteGroupTable({{0, 1}, {1, 1}}), InputError);
  EXPECT_THROW(FiniteGroupTable({{0, 2}, {1, 0}}), InputError);
}

// Random nonnegative nonzero tuples satisfy the squared min-norm inequality.
TEST(Property, MinNormInequality) {
  std::mt19937_64 rng(31);
  auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  for (int t = 0; t < 10000; ++t) {
    const auto k = static_cast<std::size_t>(pick(1, 8));
    const auto d = static_cast<std::size_t>(pick(1, 5));
    std::vector<Point> v;
    while (v.size() < k) {
      Point p(d);
      for (auto& c : p) c = pick(0, 9);
      if (norm_sq(p) != 0) v.push_back(p);
    }
    const auto r = min_norm_inequality(v);
    ASSERT_TRUE(r.holds);
    ASSERT_GE(r.sum_norm_sq, r.k_min_norm_sq);
  }
}

// (A x B)^h = A^h x B^h in direct products of cyclic groups.
TEST(Property, ProductSetsFactor) {
  std::mt19937_64 rng(37);
  auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  for (int t = 0; t < 100; ++t) {
    const auto m1 = static_cast<std::uint32_t>(pick(1, 6)), m2 = static_cast<std::uint32_t>(pick(1, 6));
    const auto g1 = FiniteGroupTable::cyclic(m1), g2 = FiniteGroupTable::cyclic(m2);
    const auto g = FiniteGroupTable::direct_product(g1, g2);
    std::vector<Element> a{static_cast<Element>(pick(0, m1 - 1))}, b{static_cast<Element>(pick(0, m2 - 1))};
    a.push_back(static_cast<Element>(pick(0, m1 - 1)));
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    const int h = static_cast<int>(pick(1, 5));
    ASSERT_EQ(group_hfold(g, product_subset(g1, g2, a, b), h),
              product_subset(g1, g2, group_hfold(g1, a, h), group_hfold(g2, b, h)));
  }
}
