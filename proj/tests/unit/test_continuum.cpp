#include <gtest/gtest.h>

#include <random>

#include "hsets/continuum.hpp"
#include "hsets/error.hpp"

using namespace hsets;

namespace {
Rational r(long long p, long long q = 1) { return Rational(p) / Rational(q); }
}  // namespace

TEST(RationalFamily, SetAtReferenceExample) {
  const auto f = RationalPerturbFamily::linear(4, 1, false, 3);
  const std::vector<Rational> want{4 - r(1, 2), 4 - r(1, 3), 4 + r(1, 3), 4 + r(1, 2)};
  EXPECT_EQ(rational_family_set(f, 2), want);
}

TEST(RationalFamily, GapCondition) {
  EXPECT_NO_THROW(RationalPerturbFamily::linear(4, 5, false, 10));
  EXPECT_THROW(RationalPerturbFamily::linear(1, 5, false, 10), ConfigError);
  EXPECT_THROW(RationalPerturbFamily({Int(4), Int(6)}, false, 10), ConfigError);
}

TEST(RationalTheorem, ReferenceExample) {
  const auto f = RationalPerturbFamily::linear(4, 8, false, 16);
  const auto rep = verify_rational_theorem(f, 2, 8, 0, 20);
  EXPECT_TRUE(rep.passed());
  for (long long b : {8, 12, 16, 20}) {
    EXPECT_TRUE(std::binary_search(rep.truncated.begin(), rep.truncated.end(), r(b))) << b;
  }
  EXPECT_LE(rep.max_distance, r(2, 8));
}

TEST(RationalTheorem, PrimedVariantContainsBaseSums) {
  const auto f = RationalPerturbFamily::linear(4, 8, true, 16);
  const auto rep = verify_rational_theorem(f, 2, 8, 0, 20);
  EXPECT_TRUE(rep.missing_base_sums.empty());
  EXPECT_TRUE(rep.passed());
}

TEST(RationalTheorem, Preconditions) {
  const auto f = RationalPerturbFamily::linear(4, 8, false, 16);
  EXPECT_THROW(verify_rational_theorem(f, 2, 3, 0, 20), ConfigError);   // 2h < Q fails
  EXPECT_THROW(verify_rational_theorem(f, 1, 8, 0, 20), ConfigError);   // h >= 2
  const auto small = RationalPerturbFamily::linear(4, 8, false, 10);
  EXPECT_THROW(verify_rational_theorem(small, 2, 8, 0, 20), ConfigError);  // r_max < 2Q
}

TEST(RationalTheorem, TruncationMonotone) {
  const auto f = RationalPerturbFamily::linear(4, 6, false, 24);
  const auto a = verify_rational_theorem(f, 2, 9, 0, 16);
  const auto b = verify_rational_theorem(f, 2, 10, 0, 16);
  EXPECT_TRUE(std::includes(a.truncated.begin(), a.truncated.end(), b.truncated.begin(), b.truncated.end()));
}

TEST(Intervals, MinkowskiReferenceExamples) {
  const IntervalUnion unit({{r(0), r(1)}});
  EXPECT_EQ(unit + unit, IntervalUnion({{r(0), r(2)}}));
  for (long long q = 1; q <= 6; ++q) {
    const IntervalUnion u({{4 - r(1, q), r(4)}, {r(4), 4 + r(1, q)}});
    EXPECT_EQ(minkowski_hfold(u, 2), IntervalUnion({{8 - r(2, q), 8 + r(2, q)}}));
    EXPECT_TRUE(minkowski_hfold(u, 2).contains(8));
    EXPECT_FALSE(u.contains(4));
  }
  EXPECT_TRUE(minkowski_hfold(IntervalUnion(), 3).empty());
}

TEST(Intervals, CanonicalForm) {
  const IntervalUnion u({{r(3), r(5)}, {r(0), r(2)}, {r(1), r(3)}});
  EXPECT_EQ(u.parts().size(), 2u);  // (0,3) and (3,5): touching open intervals stay apart
  EXPECT_FALSE(u.contains(3));
  EXPECT_TRUE(u.contains(r(5, 2)));
  EXPECT_EQ(to_string(IntervalUnion({{r(0), r(1, 2)}})), "(0, 1/2)");
}

TEST(Intervals, IntersectAndUnite) {
  const IntervalUnion a({{r(0), r(4)}});
  const IntervalUnion b({{r(2), r(6)}, {r(7), r(8)}});
  EXPECT_EQ(a.intersect(b), IntervalUnion({{r(2), r(4)}}));
  EXPECT_EQ(a.unite(b), IntervalUnion({{r(0), r(6)}, {r(7), r(8)}}));
}

TEST(OpenTheorem, ReferenceExamples) {
  const std::vector<Int> base{4, 8, 12, 16, 20, 24};
  const auto two = verify_open_theorem(base, 2, 10, 0, 20, false);
  EXPECT_TRUE(two.passed());
  for (const auto& part : two.truncated.parts()) EXPECT_LE((part.hi - part.lo) / 2, r(2, 10));
  for (long long c : {8, 12, 16}) EXPECT_TRUE(two.truncated.contains(c));

  const auto one = verify_open_theorem(base, 1, 10, 0, 20, false);
  EXPECT_TRUE(one.passed());
  for (const auto& b : base) EXPECT_FALSE(one.truncated.contains(Rational(b)));

  const auto primed = verify_open_theorem(base, 3, 5, 0, 30, true);
  EXPECT_TRUE(primed.missing_base_sums.empty());
}

// Minkowski sums associate and contain pointwise sums of members.
TEST(Property, MinkowskiAssociative) {
  std::mt19937_64 rng(29);
  auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  for (int t = 0; t < 100; ++t) {
    std::vector<OpenInterval> parts;
    for (int i = pick(1, 3); i > 0; --i) {
      const Rational lo = r(pick(-20, 20), pick(1, 5));
      parts.push_back({lo, lo + r(pick(1, 6), pick(1, 5))});
    }
    const IntervalUnion u(parts);
    ASSERT_EQ((u + u) + u, u + (u + u));
    for (std::size_t i = 0; i + 1 < u.parts().size(); ++i) ASSERT_LE(u.parts()[i].hi, u.parts()[i + 1].lo);
    const auto& p = u.parts().front();
    const Rational mid = (p.lo + p.hi) / 2;
    ASSERT_TRUE((u + u).contains(mid + mid));
  }
}
