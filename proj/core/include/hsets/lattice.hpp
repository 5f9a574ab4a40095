#pragma once

#include <optional>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/family.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// Squared Euclidean norm, exact.
Int norm_sq(const Point& x);

struct LatticeSum {
  std::vector<Point> members;  // sorted lexicographically
  bool complete = true;
};

/// All sums of h points of a finite set that fall inside the box (one
/// window per coordinate). With `truncated_input`, the points are a finite
/// cut of a larger set and the result is complete only for nonnegative points.
LatticeSum lattice_hfold_sum(const std::vector<Point>& points, int h, const std::vector<Window>& box,
                             bool truncated_input = false, const Limits& limits = {});

/// Ordered h-tuples of `points` summing to x.
Int lattice_representation_count(const std::vector<Point>& points, int h, const Point& x);

/// r_{N_0^d, h}(x): product over coordinates of C(x_j + h - 1, h - 1).
Int nonnegative_representation_count(int h, const Point& x);

struct MinNormCheck {
  Int sum_norm_sq;    // |x_1 + ... + x_k|^2
  Int k_min_norm_sq;  // k * min |x_i|^2
  bool holds = false;
};

/// Throws DomainError for a zero vector, a negative coordinate or mixed dimensions.
MinNormCheck min_norm_inequality(const std::vector<Point>& vectors);

/// A_q = A u {x in N_0^d : |x|^2 >= (2q)^2 m*^2}.
class NormTailFamily {
 public:
  NormTailFamily(std::vector<Point> core, Rational m_star_sq);

  const std::vector<Point>& core() const { return core_; }
  const Rational& m_star_sq() const { return m_star_sq_; }
  std::size_t dimension() const { return core_.front().size(); }
  bool in_tail(const Point& x, const Int& q) const;
  bool contains(const Point& x, const Int& q) const;
  /// Least q with 2q > h and (2q - h)^2 m*^2 > |x|^2: from that index on no
  /// representation of x in hA_q can use a tail point.
  Int certifying_q(const Point& x, int h) const;

 private:
  std::vector<Point> core_;
  Rational m_star_sq_;
};

struct LatticeRow {
  int h = 1;
  std::size_t ball_points = 0;
  std::size_t hA_points = 0;
  std::size_t truncated_points = 0;
  bool equal_on_ball = false;
  /// Points of the truncated intersection outside hA whose certifying index exceeds Q.
  std::vector<Point> undetermined;
  /// Points of the truncated intersection outside hA although certified (would refute the claim).
  std::vector<Point> contradictions;
  Int max_certifying_q = 0;
  bool certified = false;
};

struct LatticeReport {
  Int Q;
  Int radius;
  std::vector<LatticeRow> rows;
  bool passed() const;
};

/// Compares hA with the intersection of hA_q over q <= Q on the ball
/// {x in N_0^d : |x| <= radius}, for h = 1..h_max.
LatticeReport verify_lattice_theorem(const NormTailFamily& family, int h_max, const Int& Q, const Int& radius,
                                     const Limits& limits = {});

/// Points of N_0^d with |x| <= radius, lexicographic.
std::vector<Point> nonnegative_ball(std::size_t d, const Int& radius);

}  // namespace hsets
