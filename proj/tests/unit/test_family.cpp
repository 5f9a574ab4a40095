#include <gtest/gtest.h>

#include "hsets/error.hpp"
#include "hsets/family.hpp"
#include "hsets/periodic.hpp"
#include "hsets/sumset.hpp"

using namespace hsets;

namespace {

std::vector<Int> ints(std::initializer_list<long long> v) {
  std::vector<Int> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<Family> sample_families() {
  return {
      Family::tail(IntSet::empty()),
      Family::tail(IntSet::congruence(2, ints({0}))),
      Family::tail(IntSet::finite(ints({0, 1, 3}))),
      Family::half_tail(IntSet::finite(ints({0, 2}))),
      Family::congruence_chain(ints({0, 1, 3}), 7, 2),
      Family::congruence_chain(ints({0, 2}), ints({5, 15, 45})),
      Family::coset_tail(2, 1),
      Family::coset_tail(3, 2),
      Family::enumeration(ints({0, 1})),
      Family::affine(-1, 3, Family::tail(IntSet::finite(ints({1, 4})))),
  };
}

}  // namespace

TEST(Construct, CongruenceChainValidation) {
  EXPECT_NO_THROW(Family::congruence_chain(ints({0, 1, 3}), 7, 2));
  try {
    (void)Family::congruence_chain(ints({0, 1, 3}), 5, 2);
    FAIL() << "accepted m_1 = 5";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("m_1 > 2m* violated"), std::string::npos);
  }
  EXPECT_THROW(Family::congruence_chain(ints({0, 1}), ints({5, 12})), ConfigError);  // 5 does not divide 12
  EXPECT_THROW(Family::coset_tail(2, 4), ConfigError);                            // base inside 2Z
}

TEST(SetAt, ReferenceExamples) {
  EXPECT_EQ(normalize(Family::tail(IntSet::empty()).set_at(3)), IntSet::tail(0, 3));
  const auto coset = Family::coset_tail(2, 1).set_at(4);
  const Window w(-30, 30);
  for (long long x = -30; x <= 30; ++x) {
    const bool expected = x % 2 == 0 || (x >= 9 && x % 2 != 0);
    EXPECT_EQ(contains(coset, x), expected) << x;
  }
  EXPECT_EQ(equivalent(Family::congruence_chain(ints({0, 1, 3}), 7, 2).set_at(2), IntSet::congruence(14, ints({0, 1, 3}))),
            true);
  EXPECT_THROW(Family::explicit_sets({IntSet::all()}).set_at(2), InputError);
}

TEST(Enumeration, OrderIsByAbsoluteValueNegativeFirst) {
  EXPECT_EQ(enumerate_complement(ints({0, 1}), 5), ints({-1, -2, 2, -3, 3}));
}

TEST(Monotonicity, ReferenceExamples) {
  const auto tail = classify_monotonicity(Family::tail(IntSet::empty()), 10, Window(-20, 20));
  EXPECT_TRUE(tail.decreasing);
  EXPECT_TRUE(tail.strictly);
  ASSERT_TRUE(tail.strict_witness.front());
  EXPECT_EQ(abs(tail.strict_witness.front()->front()), Int(1));

  const auto X = IntSet::congruence(3, ints({1}));
  const auto constant = classify_monotonicity(Family::explicit_sets({X, X, X}), 3, Window(-20, 20));
  EXPECT_TRUE(constant.decreasing);
  EXPECT_FALSE(constant.asymptotically_strict_within_range);

  const auto absorbed = classify_monotonicity(Family::tail(IntSet::cofinite(ints({0}))), 8, Window(-20, 20));
  EXPECT_TRUE(absorbed.decreasing);
  EXPECT_FALSE(absorbed.strictly);
  EXPECT_TRUE(absorbed.constant_from.has_value());
}

TEST(Monotonicity, ViolationDetected) {
  const auto up = Family::explicit_sets({IntSet::finite(ints({1})), IntSet::finite(ints({1, 2}))});
  const auto r = classify_monotonicity(up, 2, Window(-5, 5));
  EXPECT_FALSE(r.decreasing);
  ASSERT_TRUE(r.violation);
  EXPECT_EQ(r.violation->second, Point{Int(2)});
}

TEST(Certificate, ReferenceExamples) {
  const auto z = tail_certificate(Family::tail(IntSet::empty()), 2);
  ASSERT_TRUE(z);
  EXPECT_EQ(equivalent(z->closed_form.factors.front(), IntSet::all()), true);
  const auto chain = tail_certificate(Family::congruence_chain(ints({0, 1, 3}), 7, 2), 2);
  ASSERT_TRUE(chain);
  EXPECT_EQ(chain->closed_form.factors.front(), IntSet::finite(ints({0, 1, 2, 3, 4, 6})));
  const auto en = tail_certificate(Family::enumeration(ints({0})), 3);
  ASSERT_TRUE(en);
  EXPECT_EQ(equivalent(en->closed_form.factors.front(), IntSet::all()), true);
}

TEST(Certificate, ProductAndAffine) {
  const auto p = Family::product({Family::tail(IntSet::empty()), Family::congruence_chain(ints({0, 1, 3}), 7, 2)});
  const auto c = tail_certificate(p, 2);
  ASSERT_TRUE(c);
  EXPECT_EQ(c->closed_form.dimension(), 2u);
  EXPECT_TRUE(c->closed_form.contains({Int(-100), Int(6)}));
  EXPECT_FALSE(c->closed_form.contains({Int(0), Int(5)}));
  const auto a = tail_certificate(Family::affine(-1, -4, Family::congruence_chain(ints({0, 1, 3}), 7, 2)), 2);
  ASSERT_TRUE(a);
  // -{0,1,2,3,4,6} - 8
  EXPECT_EQ(materialize(a->closed_form.factors.front(), Window(-20, 0)), ints({-14, -12, -11, -10, -9, -8}));
}

// Every family decreases on the window.
TEST(Property, FamiliesDecrease) {
  for (const auto& f : sample_families()) {
    const auto r = classify_monotonicity(f, 8, Window(-40, 40));
    EXPECT_TRUE(r.decreasing) << f.describe();
  }
}

// The truncated intersection of a tail family reaches its core once Q passes the window radius.
TEST(Property, TruncationsConvergeToCore) {
  for (const auto& core : {IntSet::empty(), IntSet::finite(ints({-3, 0, 8})), IntSet::congruence(5, ints({2}))}) {
    const auto f = Family::tail(core);
    std::vector<IntSet> sets;
    for (int q = 1; q <= 21; ++q) sets.push_back(f.set_at(q));
    EXPECT_EQ(materialize(intersect_truncated(sets), Window(-20, 20)), materialize(core, Window(-20, 20)));
    EXPECT_EQ(materialize(f.limit(), Window(-20, 20)), materialize(core, Window(-20, 20)));
  }
}

// Certificates are consistent with truncations: cert on w is inside every windowed hA_q.
TEST(Property, CertificatesAgreeWithTruncations) {
  const Window w(-15, 15);
  for (const auto& f : sample_families()) {
    for (int h = 2; h <= 3; ++h) {
      const auto cert = tail_certificate(f, h);
      if (!cert) continue;
      const auto want = materialize(cert->closed_form.factors.front(), w);
      for (int q = 1; q <= 3; ++q) {
        const auto hq = closed_hfold_sum(f.set_at(q), h);
        ASSERT_TRUE(hq) << f.describe();
        const auto got = materialize(*hq, w);
        EXPECT_TRUE(std::includes(got.begin(), got.end(), want.begin(), want.end()))
            << f.describe() << " h=" << h << " q=" << q;
      }
    }
  }
}
