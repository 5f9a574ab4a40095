#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "hsets/convolution.hpp"
#include "hsets/error.hpp"
#include "hsets/periodic.hpp"
#include "hsets/sumset.hpp"

using namespace hsets;

namespace {

std::vector<Int> ints(std::initializer_list<long long> v) {
  std::vector<Int> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<Int> range(long long lo, long long hi) {
  std::vector<Int> out;
  for (long long x = lo; x <= hi; ++x) out.emplace_back(x);
  return out;
}

std::map<Int, Int> tuple_counts(const std::vector<Int>& a, int h) {
  std::map<Int, Int> acc{{Int(0), Int(1)}};
  for (int i = 0; i < h; ++i) {
    std::map<Int, Int> next;
    for (const auto& [s, c] : acc)
      for (const auto& y : a) next[s + y] += c;
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

TEST(SymbolicSum, ReferenceExamples) {
  const auto tail = closed_hfold_sum(IntSet::tail(0, 5), 2);
  ASSERT_TRUE(tail);
  EXPECT_EQ(equivalent(*tail, IntSet::all()), true);

  const auto cong = closed_hfold_sum(IntSet::congruence(7, ints({0, 1, 3})), 2);
  ASSERT_TRUE(cong);
  EXPECT_EQ(equivalent(*cong, IntSet::congruence(7, ints({0, 1, 2, 3, 4, 6}))), true);

  const auto fin = symbolic_hfold_sum(IntSet::finite(ints({0, 1, 3})), 2);
  ASSERT_TRUE(fin.is_closed());
  EXPECT_EQ(fin.closed(), IntSet::finite(ints({0, 1, 2, 3, 4, 6})));
}

TEST(SymbolicSum, IdentityAtHOne) {
  const auto s = IntSet::tail(3, 4);
  EXPECT_EQ(*closed_hfold_sum(s, 1), normalize(s));
}

TEST(SymbolicSum, CofinitePlusFinite) {
  const auto s = IntSet::unite({IntSet::cofinite(ints({0, 1})), IntSet::finite(ints({0}))});
  EXPECT_EQ(equivalent(*closed_hfold_sum(IntSet::cofinite(ints({5})), 2), IntSet::all()), true);
  EXPECT_EQ(equivalent(*closed_hfold_sum(s, 3), IntSet::all()), true);
}

TEST(SymbolicSum, FallbackNeedsWindow) {
  // The signed powers of two are not eventually periodic.
  EXPECT_THROW(symbolic_hfold_sum(IntSet::signed_powers_of_two(), 2), ConfigError);
  SumsetOptions opts;
  opts.fallback_window = Window(-10, 10);
  opts.fallback_radius = 64;
  const auto r = symbolic_hfold_sum(IntSet::signed_powers_of_two(), 2, opts);
  EXPECT_FALSE(r.is_closed());
  EXPECT_TRUE(r.windowed().has(3));
}

TEST(WindowedSum, ReferenceExamples) {
  const auto n = windowed_hfold_sum(IntSet::half_tail(1), 3, Window(0, 10), 10).windowed();
  EXPECT_EQ(n.members, range(3, 10));
  EXPECT_TRUE(n.complete);

  const auto t = windowed_hfold_sum(IntSet::tail(0, 5), 2, Window(-3, 3), 20).windowed();
  EXPECT_EQ(t.members, range(-3, 3));
  EXPECT_FALSE(t.complete);
  EXPECT_EQ(t.membership(1).kind(), Membership3::Kind::In);

  const auto f = windowed_hfold_sum(IntSet::finite(ints({0, 1})), 4, Window(0, 10), 10).windowed();
  EXPECT_EQ(f.members, range(0, 4));
  EXPECT_TRUE(f.complete);
}

TEST(WindowedSum, AbsentPointsAreOutUpToWhenIncomplete) {
  const auto s = windowed_hfold_sum(IntSet::tail(0, 30), 2, Window(-5, 5), 10).windowed();
  EXPECT_TRUE(s.members.empty());
  EXPECT_FALSE(s.complete);
  const auto m = s.membership(0);
  EXPECT_EQ(m.kind(), Membership3::Kind::OutUpTo);
  EXPECT_EQ(m.generation_radius(), Int(10));
}

TEST(WindowedSum, RadiusBelowWindowRejected) {
  EXPECT_THROW(windowed_hfold_sum(IntSet::all(), 2, Window(-10, 10), 5), ConfigError);
}

TEST(WindowedSum, SymbolicConfirmUpgradesCompleteness) {
  SumsetOptions opts;
  opts.symbolic_confirm = true;
  const auto s = windowed_hfold_sum(IntSet::tail(0, 5), 2, Window(-3, 3), 20, opts).windowed();
  EXPECT_TRUE(s.complete);
}

TEST(RepCount, ReferenceExamples) {
  EXPECT_EQ(representation_count(IntSet::finite(ints({2, 5})), 1, 5, RepMode::Additive, 10).value, Int(1));
  const auto mult = representation_count(IntSet::cofinite(ints({0})), 2, 6, RepMode::Multiplicative, 10);
  EXPECT_FALSE(mult.infinite);
  EXPECT_EQ(mult.value, Int(8));
  EXPECT_TRUE(representation_count(IntSet::all(), 2, 0, RepMode::Additive, 10).infinite);
  EXPECT_EQ(representation_count(IntSet::all(), 2, 0, RepMode::Additive, 10).to_string(), "infinite");
}

TEST(RepCount, MultiplicativeDomainErrors) {
  EXPECT_THROW(representation_count(IntSet::cofinite(ints({0})), 2, 0, RepMode::Multiplicative, 10), DomainError);
  EXPECT_THROW(representation_count(IntSet::all(), 2, 6, RepMode::Multiplicative, 10), DomainError);
}

TEST(RepCount, NonnegativeSetsAreExact) {
  // r_{N_0,h}(x) = C(x+h-1, h-1).
  const auto c = representation_count(IntSet::half_tail(0), 3, 10, RepMode::Additive, 10);
  EXPECT_FALSE(c.lower_bound);
  EXPECT_EQ(c.value, Int(66));
}

TEST(RepCount, SignedPowersOfTwoInfiniteRule) {
  const auto p = IntSet::signed_powers_of_two();
  EXPECT_TRUE(representation_count(p, 3, 8, RepMode::Additive, 100).infinite);  // naf weight 1 <= 1
  EXPECT_FALSE(representation_count(p, 2, 8, RepMode::Additive, 100).infinite);
}

TEST(RepCount, PositiveIffMember) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> a;
    for (int i = 0; i < 5; ++i) a.emplace_back(std::uniform_int_distribution<int>(0, 12)(rng));
    const auto A = IntSet::finite(a);
    const int h = std::uniform_int_distribution<int>(1, 3)(rng);
    const auto sums = materialize(*closed_hfold_sum(A, h), Window(0, 40));
    for (long long x = 0; x <= 40; ++x) {
      const bool member = std::binary_search(sums.begin(), sums.end(), Int(x));
      ASSERT_EQ(representation_count(A, h, x, RepMode::Additive, 40).value >= 1, member);
    }
  }
}

TEST(Product, ReferenceExamples) {
  EXPECT_EQ(hfold_product(IntSet::half_tail(1), 2, Window(1, 12)).members_in(Window(1, 12)), range(1, 12));
  EXPECT_EQ(hfold_product(IntSet::half_tail(2), 2, Window(1, 12)).members_in(Window(1, 12)), ints({4, 6, 8, 9, 10, 12}));
  EXPECT_EQ(hfold_product(IntSet::finite(ints({-2, 3})), 2, Window(-10, 10)).members_in(Window(-10, 10)),
            ints({-6, 4, 9}));
  EXPECT_THROW(hfold_product(IntSet::half_tail(0), 2, Window(1, 5)), DomainError);
}

TEST(NafWeight, Values) {
  EXPECT_EQ(naf_weight(0), 0);
  EXPECT_EQ(naf_weight(1), 1);
  EXPECT_EQ(naf_weight(7), 2);   // 8 - 1
  EXPECT_EQ(naf_weight(11), 3);  // 16 - 4 - 1
  EXPECT_EQ(naf_weight(-11), 3);
}

TEST(Basis, ExactOrderOfFourZPlusOne) {
  // 3A = 4Z u (4Z+1) u (4Z+2) u {3}: the class 3 mod 4 needs three ones.
  const auto A = IntSet::unite({IntSet::congruence(4, ints({0})), IntSet::finite(ints({1}))});
  const auto r = basis_order(A, 5, Window(-30, 30), 40);
  ASSERT_TRUE(r.exact_order);
  EXPECT_EQ(*r.exact_order, 4);
  EXPECT_EQ(r.verdicts[2].kind, BasisVerdict::Kind::Missing);
  EXPECT_EQ(r.verdicts[3].kind, BasisVerdict::Kind::Full);
  const auto B = IntSet::unite({IntSet::congruence(3, ints({0})), IntSet::finite(ints({1}))});
  EXPECT_EQ(basis_order(B, 5, Window(-30, 30), 40).exact_order, 3);
}

TEST(Basis, CofiniteIsBasisOfOrderTwo) {
  const auto r = basis_order(IntSet::cofinite(ints({5})), 3, Window(-20, 20), 30);
  EXPECT_EQ(r.verdicts[1].kind, BasisVerdict::Kind::Full);
  EXPECT_EQ(r.exact_order, 2);
}

TEST(Basis, PowersOfTwoNeedTheNafRule) {
  const auto p = IntSet::signed_powers_of_two();
  const auto plain = basis_order(p, 2, Window(-20, 20), 64);
  EXPECT_EQ(plain.verdicts[1].kind, BasisVerdict::Kind::Undetermined);
  BasisOptions opts;
  opts.power_of_two_rule = true;
  const auto ruled = basis_order(p, 2, Window(-20, 20), 64, opts);
  ASSERT_EQ(ruled.verdicts[1].kind, BasisVerdict::Kind::Missing);
  ASSERT_TRUE(ruled.verdicts[1].witness);
  EXPECT_EQ(abs(*ruled.verdicts[1].witness), Int(11));
}

TEST(Convolution, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> a;
    for (int i = 0; i < 6; ++i) a.emplace_back(std::uniform_int_distribution<int>(-100, 100)(rng));
    sort_unique(a);
    const int h = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto got = hfold_clipped(OffsetBitset::from_members(a), h, -150, 150).members();
    std::vector<Int> want;
    for (const auto& [s, c] : tuple_counts(a, h))
      if (s >= -150 && s <= 150) want.push_back(s);
    ASSERT_EQ(got, want);
  }
}

TEST(Convolution, CountTuples) {
  EXPECT_EQ(count_tuples(ints({0, 1, 3}), 2, 4), Int(2));
  EXPECT_EQ(count_tuples(ints({0, 1}), 3, 1), Int(3));
}

// Oracle equivalence on random finite sets.
TEST(Property, OracleEquivalence) {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 200; ++t) {
    std::vector<Int> a;
    const int n = std::uniform_int_distribution<int>(1, 8)(rng);
    for (int i = 0; i < n; ++i) a.emplace_back(std::uniform_int_distribution<int>(-12, 12)(rng));
    sort_unique(a);
    const auto A = IntSet::finite(a);
    for (int h = 1; h <= 4; ++h) {
      const auto counts = tuple_counts(a, h);
      std::vector<Int> truth;
      for (const auto& [s, c] : counts) truth.push_back(s);
      ASSERT_EQ(materialize(*closed_hfold_sum(A, h), Window(-60, 60)), truth);
      const auto w = windowed_hfold_sum(A, h, Window(-60, 60), 60).windowed();
      ASSERT_TRUE(w.complete);
      ASSERT_EQ(w.members, truth);
      for (const auto& [s, c] : counts) ASSERT_EQ(representation_count(A, h, s, RepMode::Additive, 60).value, c);
    }
  }
}

// Monotonicity: A subset of B gives hA subset of hB.
TEST(Property, SumsetMonotone) {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 100; ++t) {
    std::vector<Int> b;
    for (int i = 0; i < 8; ++i) b.emplace_back(std::uniform_int_distribution<int>(-10, 10)(rng));
    sort_unique(b);
    std::vector<Int> a;
    for (const auto& x : b)
      if (std::uniform_int_distribution<int>(0, 1)(rng)) a.push_back(x);
    const int h = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto ha = materialize(*closed_hfold_sum(IntSet::finite(a), h), Window(-40, 40));
    const auto hb = materialize(*closed_hfold_sum(IntSet::finite(b), h), Window(-40, 40));
    ASSERT_TRUE(std::includes(hb.begin(), hb.end(), ha.begin(), ha.end()));
  }
}

// Inclusion hA in the intersection of the hA_q, on tail truncations.
TEST(Property, LimitSumInsideTruncatedSums) {
  const auto core = IntSet::finite(ints({0, 2, 7}));
  for (int h = 1; h <= 3; ++h) {
    const auto hA = materialize(*closed_hfold_sum(core, h), Window(-30, 30));
    std::vector<Int> meet = range(-30, 30);
    for (int q = 1; q <= 12; ++q) {
      const auto s = materialize(*closed_hfold_sum(IntSet::unite({core, IntSet::tail(0, q)}), h), Window(-30, 30));
      std::vector<Int> next;
      std::set_intersection(meet.begin(), meet.end(), s.begin(), s.end(), std::back_inserter(next));
      meet = next;
    }
    EXPECT_TRUE(std::includes(meet.begin(), meet.end(), hA.begin(), hA.end()));
  }
}

// Decreasing families in N_0: a tuple found at q = Q works for every q <= Q.
TEST(Property, WitnessTuplesStabilize) {
  const auto core = ints({0, 3, 4});
  const int Q = 15;
  for (long long x = 0; x <= 14; ++x) {
    Int prev = -1;
    for (int q = Q; q >= 1; --q) {
      const auto A = IntSet::unite({IntSet::finite(core), IntSet::half_tail(q)});
      const auto c = representation_count(A, 2, x, RepMode::Additive, 20);
      ASSERT_FALSE(c.lower_bound);
      if (prev >= 0) ASSERT_GE(c.value, prev);
      prev = c.value;
    }
  }
}
