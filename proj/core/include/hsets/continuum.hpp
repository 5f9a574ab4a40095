#pragma once

#include <string>
#include <vector>

#include "hsets/bigint.hpp"

namespace hsets {

/// Points b_n + 1/r (q <= |r| <= r_max) around integer base points b_n,
/// optionally together with the b_n themselves.
class RationalPerturbFamily {
 public:
  /// Requires b_1 > 1 and b_{n+1} > b_n + 2; r_max >= 1.
  RationalPerturbFamily(std::vector<Int> base, bool include_base, Int r_max);
  /// b_n = step * n for n = 1..n_max.
  static RationalPerturbFamily linear(const Int& step, const Int& n_max, bool include_base, Int r_max);

  const std::vector<Int>& base() const { return base_; }
  bool include_base() const { return include_base_; }
  const Int& r_max() const { return r_max_; }

  /// {1/r : q <= |r| <= r_max}, plus 0 when the base points are included. Sorted.
  std::vector<Rational> perturbations(const Int& q) const;

 private:
  std::vector<Int> base_;
  bool include_base_;
  Int r_max_;
};

/// A_q under the materialization bounds, sorted.
std::vector<Rational> rational_family_set(const RationalPerturbFamily& family, const Int& q);

/// Sorted distinct h-fold sums of a finite set of rationals.
std::vector<Rational> rational_hfold(const std::vector<Rational>& points, int h);

struct RationalTheoremReport {
  int h = 2;
  Int Q;
  /// T(Q) = intersection of hA_q over q <= Q, inside the value window.
  std::vector<Rational> truncated;
  /// hB* inside the value window.
  std::vector<Rational> base_sums;
  std::vector<Rational> missing_base_sums;  // hB* points absent from T(Q)
  std::vector<Rational> too_far;            // T(Q) points farther than h/Q from hB*
  Rational max_distance = 0;
  std::size_t off_base = 0;  // |T(Q) \ hB*|

  bool passed() const { return missing_base_sums.empty() && too_far.empty(); }
};

/// Requires h >= 2, 2h < Q and r_max >= 2Q (for the zero-sum 1/q - 1/(2q) - 1/(2q)).
RationalTheoremReport verify_rational_theorem(const RationalPerturbFamily& family, int h, const Int& Q,
                                              const Rational& lo, const Rational& hi);

struct OpenInterval {
  Rational lo;
  Rational hi;
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

/// Finite union of open intervals with rational endpoints, kept sorted and
/// pairwise disjoint. Intervals that only touch stay separate, since the
/// shared endpoint is not a member.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<OpenInterval> parts);

  const std::vector<OpenInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& x) const;

  IntervalUnion unite(const IntervalUnion& other) const;
  IntervalUnion intersect(const IntervalUnion& other) const;
  /// Minkowski sum: (a, b) + (c, d) = (a + c, b + d), distributed over the unions.
  IntervalUnion operator+(const IntervalUnion& other) const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<OpenInterval> parts_;
};

std::string to_string(const IntervalUnion& u);

IntervalUnion minkowski_hfold(const IntervalUnion& u, int h);

/// A_q = union over n of (b_n - 1/q, b_n) u (b_n, b_n + 1/q); with `primed`,
/// the full intervals (b_n - 1/q, b_n + 1/q).
IntervalUnion open_family_set(const std::vector<Int>& base, const Int& q, bool primed);

struct OpenTheoremReport {
  int h = 2;
  Int Q;
  bool primed = false;
  IntervalUnion truncated;  // intersection over q <= Q of hA_q, inside the window
  std::vector<Int> base_sums;
  std::vector<Int> missing_base_sums;    // required points of hB* not in the intersection
  std::vector<Int> unexpected_base_sums;  // h = 1 unprimed: base points that must be absent
  std::vector<OpenInterval> stray;        // components not within h/Q of a single hB* point
  std::vector<OpenInterval> off_center;   // unclipped components whose midpoint is not in hB*

  bool passed() const {
    return missing_base_sums.empty() && unexpected_base_sums.empty() && stray.empty() && off_center.empty();
  }
};

OpenTheoremReport verify_open_theorem(const std::vector<Int>& base, int h, const Int& Q, const Rational& lo,
                                      const Rational& hi, bool primed);

}  // namespace hsets
