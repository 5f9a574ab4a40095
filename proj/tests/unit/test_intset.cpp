#include <gtest/gtest.h>

#include <random>

#include "hsets/error.hpp"
#include "hsets/intset.hpp"
#include "hsets/periodic.hpp"

using namespace hsets;

namespace {

std::vector<Int> ints(std::initializer_list<long long> v) {
  std::vector<Int> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

// Random symbolic sets built from every variant, for property checks.
IntSet random_set(std::mt19937_64& rng, int depth = 2) {
  auto pick = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  const long long kind = pick(0, depth > 0 ? 9 : 6);
  switch (kind) {
    case 0:
      return IntSet::empty();
    case 1: {
      std::vector<Int> e;
      for (int i = pick(0, 5); i > 0; --i) e.emplace_back(pick(-20, 20));
      return IntSet::finite(e);
    }
    case 2: {
      std::vector<Int> e;
      for (int i = pick(0, 4); i > 0; --i) e.emplace_back(pick(-20, 20));
      return IntSet::cofinite(e);
    }
    case 3: {
      const long long m = pick(1, 9);
      std::vector<Int> r{Int(pick(0, m - 1))};
      if (pick(0, 1)) r.emplace_back(pick(0, m - 1));
      return IntSet::congruence(m, r);
    }
    case 4:
      return IntSet::tail(pick(-10, 10), pick(1, 12));
    case 5:
      return IntSet::half_tail(pick(-15, 15));
    case 6:
      return IntSet::lower_half_line(pick(-15, 15));
    case 7:
      return IntSet::unite({random_set(rng, depth - 1), random_set(rng, depth - 1)});
    case 8:
      return IntSet::intersect({random_set(rng, depth - 1), random_set(rng, depth - 1)});
    default:
      return IntSet::affine(pick(0, 1) ? 1 : -1, pick(-6, 6), random_set(rng, depth - 1));
  }
}

}  // namespace

TEST(Contains, ReferenceExamples) {
  EXPECT_TRUE(contains(IntSet::tail(0, 5), 5));
  EXPECT_FALSE(contains(IntSet::tail(0, 5), 4));
  EXPECT_TRUE(contains(IntSet::congruence(7, ints({0, 1, 3})), 10));
  EXPECT_TRUE(contains(IntSet::affine(-1, -4, IntSet::finite(ints({0, 1, 3}))), -7));
  EXPECT_TRUE(contains(IntSet::half_tail(3), 3));
  EXPECT_FALSE(contains(IntSet::half_tail(3), 2));
  EXPECT_FALSE(contains(IntSet::cofinite(ints({2})), 2));
}

TEST(Contains, SignedPowersOfTwo) {
  const auto p = IntSet::signed_powers_of_two();
  for (long long x : {0, 1, -1, 2, -64, 1024}) EXPECT_TRUE(contains(p, x)) << x;
  for (long long x : {3, -3, 6, 12, 1023}) EXPECT_FALSE(contains(p, x)) << x;
}

TEST(Materialize, ReferenceExamples) {
  EXPECT_EQ(materialize(IntSet::tail(0, 5), Window(-7, 7)), ints({-7, -6, -5, 5, 6, 7}));
  EXPECT_EQ(materialize(IntSet::cofinite(ints({2})), Window(0, 4)), ints({0, 1, 3, 4}));
  EXPECT_EQ(materialize(IntSet::unite({IntSet::congruence(7, ints({0, 1, 3})), IntSet::tail(0, 100)}), Window(0, 10)),
            ints({0, 1, 3, 7, 8, 10}));
}

TEST(Materialize, WindowCap) {
  Limits limits;
  limits.max_window = 100;
  EXPECT_THROW(materialize(IntSet::all(), Window(0, 1000), limits), SizeCapError);
}

TEST(Window, RejectsInvertedBounds) { EXPECT_THROW(Window(3, 2), InputError); }

TEST(Constructors, Validate) {
  EXPECT_THROW(IntSet::congruence(0, ints({0})), DomainError);
  EXPECT_EQ(IntSet::congruence(4, ints({4, -3})), IntSet::congruence(4, ints({0, 1})));
  EXPECT_THROW(IntSet::congruence(4, {}), DomainError);
  EXPECT_THROW(IntSet::tail(0, 0), DomainError);
  EXPECT_THROW(IntSet::affine(2, 0, IntSet::all()), DomainError);
}

TEST(Normalize, ReferenceExamples) {
  const auto X = IntSet::congruence(5, ints({1, 2}));
  EXPECT_EQ(normalize(IntSet::affine(1, 0, X)), normalize(X));
  EXPECT_EQ(normalize(IntSet::unite({IntSet::finite(ints({1})), IntSet::finite(ints({2}))})),
            IntSet::finite(ints({1, 2})));
  for (long long q = 1; q <= 6; ++q) {
    EXPECT_EQ(normalize(IntSet::affine(-1, 0, IntSet::tail(0, q))), IntSet::tail(0, q));
  }
}

TEST(Normalize, Rendering) {
  EXPECT_EQ(to_string(IntSet::finite(ints({3, 0, 1}))), "{0,1,3}");
  EXPECT_EQ(to_string(IntSet::cofinite(ints({0}))), "Z\\{0}");
  EXPECT_EQ(to_string(IntSet::congruence(7, ints({0, 1, 3}))), "7Z+{0,1,3}");
  EXPECT_EQ(to_string(IntSet::tail(0, 5)), "|x-0|>=5");
  EXPECT_EQ(to_string(IntSet::half_tail(2)), "x>=2");
}

TEST(IntersectTruncated, ReferenceExamples) {
  std::vector<IntSet> tails{IntSet::tail(0, 1), IntSet::tail(0, 2), IntSet::tail(0, 3)};
  EXPECT_EQ(normalize(intersect_truncated(tails)), IntSet::tail(0, 3));

  const auto F = IntSet::congruence(2, ints({0}));
  std::vector<IntSet> sets;
  for (int q = 1; q <= 6; ++q) sets.push_back(IntSet::unite({F, IntSet::tail(0, q)}));
  EXPECT_EQ(equivalent(intersect_truncated(sets), IntSet::unite({F, IntSet::tail(0, 6)})), true);

  std::vector<IntSet> chain{IntSet::congruence(7, ints({0, 1, 3})), IntSet::congruence(14, ints({0, 1, 3}))};
  const auto got = intersect_truncated(chain);
  EXPECT_EQ(materialize(got, Window(-50, 50)), materialize(IntSet::congruence(14, ints({0, 1, 3})), Window(-50, 50)));
  EXPECT_EQ(equivalent(got, IntSet::congruence(14, ints({0, 1, 3}))), true);
}

TEST(ProvableBounds, Basic) {
  EXPECT_EQ(provable_min(IntSet::half_tail(4)), Int(4));
  EXPECT_FALSE(provable_max(IntSet::half_tail(4)).has_value());
  EXPECT_EQ(provable_max(IntSet::finite(ints({-3, 9}))), Int(9));
  EXPECT_TRUE(provably_nonnegative(IntSet::unite({IntSet::finite(ints({0, 2})), IntSet::half_tail(5)})));
  EXPECT_FALSE(provably_nonnegative(IntSet::tail(0, 2)));
}

TEST(Compare, CanonicalVariantOrder) {
  const std::vector<IntSet> ordered{IntSet::empty(), IntSet::finite(ints({1})), IntSet::congruence(3, ints({1})),
                                    IntSet::tail(0, 2), IntSet::half_tail(1), IntSet::cofinite(ints({1}))};
  for (std::size_t i = 0; i + 1 < ordered.size(); ++i) EXPECT_LT(compare(ordered[i], ordered[i + 1]), 0) << i;
}

// Property: normalization preserves membership on random windows, and is idempotent.
TEST(Property, NormalizePreservesMembership) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 400; ++t) {
    const auto s = random_set(rng);
    const auto n = normalize(s);
    const Window w(-60, 60);
    ASSERT_EQ(materialize(s, w), materialize(n, w)) << to_string(s) << " vs " << to_string(n);
    ASSERT_EQ(normalize(n), n) << to_string(n);
  }
}

// Property: materialize agrees pointwise with contains, and union/intersection are pointwise.
TEST(Property, MaterializeMatchesContains) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto a = random_set(rng), b = random_set(rng);
    const auto u = IntSet::unite({a, b});
    const auto i = IntSet::intersect({a, b});
    const Window w(-40, 40);
    const auto mu = materialize(u, w), mi = materialize(i, w);
    for (long long x = -40; x <= 40; ++x) {
      const bool ia = contains(a, x), ib = contains(b, x);
      ASSERT_EQ(std::binary_search(mu.begin(), mu.end(), Int(x)), ia || ib);
      ASSERT_EQ(std::binary_search(mi.begin(), mi.end(), Int(x)), ia && ib);
      ASSERT_EQ(contains(u, x), ia || ib);
    }
  }
}

// Property: the periodic engine decides equality of eventually periodic sets.
TEST(Property, EquivalentAgreesWithWindows) {
  std::mt19937_64 rng(13);
  int decided = 0;
  for (int t = 0; t < 300; ++t) {
    const auto a = random_set(rng, 1);
    const auto b = IntSet::unite({a, IntSet::empty()});
    const auto r = equivalent(a, b);
    if (r) {
      ++decided;
      EXPECT_TRUE(*r);
    }
    const auto c = random_set(rng, 1);
    if (const auto e = equivalent(a, c); e && *e) {
      EXPECT_EQ(materialize(a, Window(-200, 200)), materialize(c, Window(-200, 200)));
    }
  }
  EXPECT_GT(decided, 250);
}

// Intersecting F u B_q over q gives F u (intersection of B_q) when F is finite.
TEST(Property, SimpleLemmaRewrite) {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> f;
    for (int i = std::uniform_int_distribution<int>(0, 5)(rng); i > 0; --i)
      f.emplace_back(std::uniform_int_distribution<int>(-15, 15)(rng));
    const auto F = IntSet::finite(f);
    const int Q = std::uniform_int_distribution<int>(1, 10)(rng);
    std::vector<IntSet> sets;
    for (int q = 1; q <= Q; ++q) sets.push_back(IntSet::unite({F, IntSet::tail(0, q)}));
    EXPECT_EQ(materialize(intersect_truncated(sets), Window(-30, 30)),
              materialize(IntSet::unite({F, IntSet::tail(0, Q)}), Window(-30, 30)));
  }
}

// A strictly decreasing truncation loses at least one window point per step.
TEST(Property, StrictDecreaseGivesCoInfiniteIntersection) {
  const Int W = 30;
  for (int Q = 1; Q <= 25; ++Q) {
    std::vector<IntSet> sets;
    for (int q = 1; q <= Q; ++q) sets.push_back(IntSet::tail(0, q));
    const auto kept = materialize(intersect_truncated(sets), Window(-W, W));
    EXPECT_GE(Int(2 * W + 1) - Int(kept.size()), Int(Q));
  }
}
