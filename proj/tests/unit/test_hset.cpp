#include <gtest/gtest.h>

#include "hsets/error.hpp"
#include "hsets/hset.hpp"
#include "hsets/periodic.hpp"
#include "hsets/sumset.hpp"

using namespace hsets;

namespace {

std::vector<Int> ints(std::initializer_list<long long> v) {
  std::vector<Int> out;
  for (auto x : v) out.emplace_back(x);
  return out;
}

std::vector<HStatus> expect_h(int h_max, std::initializer_list<int> members) {
  std::vector<HStatus> out;
  for (int h = 1; h <= h_max; ++h) {
    const bool in = std::find(members.begin(), members.end(), h) != members.end();
    out.push_back(in ? HStatus::CertifiedIn : HStatus::CertifiedOut);
  }
  return out;
}

IntSet order_four() { return IntSet::unite({IntSet::congruence(4, ints({0})), IntSet::finite(ints({1}))}); }
IntSet order_three() { return IntSet::unite({IntSet::congruence(3, ints({0})), IntSet::finite(ints({1}))}); }

}  // namespace

TEST(ComputeH, EmptyTailFamily) {
  const auto r = compute_H(Family::tail(IntSet::empty()), 5);
  EXPECT_EQ(r.statuses(), expect_h(5, {1}));
  for (int h = 2; h <= 5; ++h) {
    ASSERT_TRUE(r.verdicts[h - 1].witness);
    EXPECT_EQ(*r.verdicts[h - 1].witness, Point{Int(0)});
  }
}

TEST(ComputeH, EmptyHalfTailFamily) {
  const auto r = compute_H(Family::half_tail(IntSet::empty()), 5);
  EXPECT_EQ(r.statuses(), expect_h(5, {1, 2, 3, 4, 5}));
}

TEST(ComputeH, CongruenceChainAllIn) {
  const auto r = compute_H(Family::congruence_chain(ints({0, 1, 3}), 7, 2), 4);
  EXPECT_EQ(r.statuses(), expect_h(4, {1, 2, 3, 4}));
}

TEST(ComputeH, ExactOrderShape) {
  // The core 4Z u {1} has exact order 4, so H = {1} u {h >= 4}.
  EXPECT_EQ(compute_H(Family::tail(order_four()), 6).statuses(), expect_h(6, {1, 4, 5, 6}));
  EXPECT_EQ(compute_H(Family::tail(order_three()), 6).statuses(), expect_h(6, {1, 3, 4, 5, 6}));
}

TEST(ComputeH, CosetAndEnumerationWitnesses) {
  const auto coset = compute_H(Family::coset_tail(2, 1), 3);
  EXPECT_EQ(coset.statuses(), expect_h(3, {1}));
  EXPECT_EQ(*coset.verdicts[1].witness, Point{Int(-1)});
  const auto en = compute_H(Family::enumeration(ints({0, 1})), 3);
  EXPECT_EQ(en.statuses(), expect_h(3, {1}));
}

TEST(ComputeH, ExplicitFamilyWithoutCertificateIsEmpirical) {
  // Constant family: every truncation equals the limit, but no certificate exists.
  const auto X = IntSet::finite(ints({0, 5}));
  const auto r = compute_H(Family::explicit_sets({X, X, X}), 3);
  for (const auto& v : r.verdicts) EXPECT_NE(v.status, HStatus::CertifiedOut);
  EXPECT_EQ(r.verdicts.front().status, HStatus::CertifiedIn);
}

TEST(ComputeH, RejectsBadArguments) {
  EXPECT_THROW(compute_H(Family::tail(IntSet::empty()), 0), DomainError);
  HConfig c;
  c.Q = 0;
  EXPECT_THROW(compute_H(Family::tail(IntSet::empty()), 2, c), ConfigError);
}

TEST(TransferAffine, ReferenceExamples) {
  const auto base = compute_H(Family::tail(IntSet::empty()), 4);
  EXPECT_EQ(transfer_affine(base, -1, 0).statuses(), base.statuses());

  const auto chain = compute_H(Family::congruence_chain(ints({0, 1, 3}), 7, 2), 4);
  const auto moved = transfer_affine(chain, -1, -4);
  const auto direct = compute_H(Family::affine(-1, -4, Family::congruence_chain(ints({0, 1, 3}), 7, 2)), 4);
  EXPECT_EQ(moved.statuses(), direct.statuses());

  const auto same = transfer_affine(base, 1, 0);
  for (std::size_t i = 0; i < same.verdicts.size(); ++i) EXPECT_EQ(same.verdicts[i].witness, base.verdicts[i].witness);
}

TEST(TransferAffine, WitnessMapping) {
  const auto base = compute_H(Family::tail(IntSet::finite(ints({0, 1, 3}))), 3);
  const auto moved = transfer_affine(base, -1, 2);
  for (int h = 2; h <= 3; ++h) {
    const Int x = base.verdicts[h - 1].witness->front();
    EXPECT_EQ(moved.verdicts[h - 1].witness->front(), -x + 2 * h);
  }
}

TEST(TransferProduct, ReferenceExamples) {
  const auto tail = compute_H(Family::tail(IntSet::empty()), 4);
  const auto chain = compute_H(Family::congruence_chain(ints({0, 1, 3}), 7, 2), 4);
  EXPECT_EQ(transfer_product(tail, chain).members(), std::vector<int>{1});
  EXPECT_EQ(transfer_product(chain, chain).members(), (std::vector<int>{1, 2, 3, 4}));

  const auto a = compute_H(Family::tail(order_three()), 5);
  const auto b = compute_H(Family::tail(order_four()), 5);
  const auto conj = transfer_product(a, b);
  EXPECT_EQ(conj.members(), (std::vector<int>{1, 4, 5}));
  const auto direct = compute_H(Family::product({Family::tail(order_three()), Family::tail(order_four())}), 5);
  EXPECT_EQ(direct.statuses(), conj.statuses());
}

TEST(TransferProduct, MismatchedRangesRejected) {
  const auto a = compute_H(Family::tail(IntSet::empty()), 3);
  const auto b = compute_H(Family::tail(IntSet::empty()), 4);
  EXPECT_THROW(transfer_product(a, b), InputError);
}

TEST(Pullback, ReferenceExamples) {
  const auto six = pullback_check(6, {ints({1, 3})}, 2, Window(-60, 60));
  EXPECT_TRUE(six.passed());
  EXPECT_EQ(equivalent(*closed_hfold_sum(IntSet::congruence(6, ints({1, 3})), 2), IntSet::congruence(6, ints({0, 2, 4}))),
            true);
  EXPECT_TRUE(pullback_check(2, {ints({0})}, 5, Window(-20, 20)).passed());
  const auto five = pullback_check(5, {ints({1})}, 5, Window(-50, 50));
  EXPECT_TRUE(five.passed());
  EXPECT_EQ(equivalent(*closed_hfold_sum(IntSet::congruence(5, ints({1})), 5), IntSet::congruence(5, ints({0}))), true);
}

TEST(Serialization, StatusNamesRoundTrip) {
  for (auto s : {HStatus::CertifiedIn, HStatus::CertifiedOut, HStatus::EmpiricalEqual, HStatus::Undetermined}) {
    EXPECT_EQ(parse_status(to_string(s)), s);
  }
  EXPECT_THROW(parse_status("Maybe"), InputError);
}

// 1 is in H for every family, and CertifiedOut witnesses re-verify.
TEST(Property, OneInHAndSoundWitnesses) {
  const std::vector<Family> families{
      Family::tail(IntSet::empty()),         Family::tail(order_four()),
      Family::half_tail(IntSet::finite(ints({0, 3}))), Family::congruence_chain(ints({0, 1, 3}), 7, 2),
      Family::coset_tail(3, 1),              Family::enumeration(ints({0})),
      Family::affine(-1, 5, Family::tail(IntSet::finite(ints({2})))),
  };
  for (const auto& f : families) {
    const auto r = compute_H(f, 4);
    EXPECT_EQ(r.verdicts.front().status, HStatus::CertifiedIn) << f.describe();
    for (const auto& v : r.verdicts) {
      if (v.status != HStatus::CertifiedOut) continue;
      const auto cert = tail_certificate(f, v.h);
      ASSERT_TRUE(cert);
      EXPECT_TRUE(cert->closed_form.contains(*v.witness)) << f.describe();
      const auto hA = closed_hfold_sum(f.limit(), v.h);
      ASSERT_TRUE(hA);
      EXPECT_FALSE(contains(*hA, v.witness->front())) << f.describe();
    }
  }
}

// Downward consistency: more truncation never adds points.
TEST(Property, TruncationDownwardConsistent) {
  const auto f = Family::tail(IntSet::finite(ints({0, 1, 3})));
  const Window w(-25, 25);
  for (int h = 2; h <= 3; ++h) {
    std::vector<Int> prev;
    bool first = true;
    std::vector<Int> meet;
    for (int q = 1; q <= 12; ++q) {
      const auto s = materialize(*closed_hfold_sum(f.set_at(q), h), w);
      if (first) {
        meet = s;
        first = false;
      } else {
        std::vector<Int> next;
        std::set_intersection(meet.begin(), meet.end(), s.begin(), s.end(), std::back_inserter(next));
        meet = next;
      }
      if (!prev.empty()) EXPECT_TRUE(std::includes(prev.begin(), prev.end(), meet.begin(), meet.end()));
      prev = meet;
    }
  }
}
