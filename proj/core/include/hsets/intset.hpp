#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hsets/bigint.hpp"

namespace hsets {

/// Resource caps shared by every engine in the library.
struct Limits {
  /// Largest number of integers a single window may span.
  Int max_window{Int(1) << 22};
  /// Largest modulus the periodic engine will lift to.
  Int max_modulus{Int(1) << 20};
  /// Largest total residue count stored by a periodic set.
  std::size_t max_residues{std::size_t(1) << 20};
  /// Largest number of progression pairs combined in one symbolic sum step.
  std::size_t max_terms{std::size_t(1) << 16};
  /// Largest excluded interval that normalize expands into an explicit list.
  Int max_explicit_run{Int(1) << 12};
};

/// Closed integer interval [lo, hi].
struct Window {
  Int lo;
  Int hi;

  Window(Int lo_, Int hi_);
  static Window symmetric(const Int& radius) { return Window(-radius, radius); }

  Int size() const { return hi - lo + 1; }
  Int radius() const;  // max(|lo|, |hi|)
  bool contains(const Int& x) const { return lo <= x && x <= hi; }
  /// Same center-free doubling used for two-window agreement checks: [2lo, 2hi].
  Window doubled() const { return Window(lo * 2, hi * 2); }

  friend bool operator==(const Window&, const Window&) = default;
};

std::string to_string(const Window& w);

/// Three-valued membership: exact verdicts and bounded-search absences.
class Membership3 {
 public:
  enum class Kind { In, Out, OutUpTo };

  static Membership3 in() { return Membership3(Kind::In, 0); }
  static Membership3 out() { return Membership3(Kind::Out, 0); }
  static Membership3 out_up_to(Int generation_radius) {
    return Membership3(Kind::OutUpTo, std::move(generation_radius));
  }

  Kind kind() const { return kind_; }
  const Int& generation_radius() const { return radius_; }
  bool is_in() const { return kind_ == Kind::In; }

  friend bool operator==(const Membership3&, const Membership3&) = default;

 private:
  Membership3(Kind k, Int r) : kind_(k), radius_(std::move(r)) {}
  Kind kind_;
  Int radius_;
};

/// Immutable symbolic description of a (possibly infinite) subset of Z.
///
/// Leaves are finite and cofinite lists, unions of residue classes, two-sided
/// and one-sided tails and the signed powers of two; Union, Intersection and
/// Affine (unit * inner + shift, unit = +-1) combine them. Values share their
/// nodes, so copies are cheap and safe across threads.
class IntSet {
 public:
  // Declaration order is the canonical ordering of variants.
  enum class Kind {
    Empty,
    Finite,
    Congruence,
    Tail,
    HalfTail,
    Cofinite,
    Union,
    Intersection,
    Affine,
    SignedPowersOfTwo,
  };

  IntSet();

  static IntSet empty();
  static IntSet finite(std::vector<Int> elements);
  static IntSet cofinite(std::vector<Int> excluded);
  static IntSet all() { return cofinite({}); }
  static IntSet congruence(Int modulus, std::vector<Int> residues);
  /// {r : |r - center| >= radius}, radius >= 1.
  static IntSet tail(Int center, Int radius);
  /// {r : r >= threshold}.
  static IntSet half_tail(Int threshold);
  /// {r : r <= bound}, encoded as Affine(-1, bound, HalfTail(0)).
  static IntSet lower_half_line(Int bound);
  static IntSet unite(std::vector<IntSet> parts);
  static IntSet intersect(std::vector<IntSet> parts);
  static IntSet affine(int unit, Int shift, IntSet inner);
  /// {0} together with every +-2^i, i >= 0.
  static IntSet signed_powers_of_two();

  Kind kind() const;

  /// Finite elements, Cofinite exclusions or Congruence residues.
  const std::vector<Int>& values() const;
  const Int& modulus() const;    // Congruence
  const Int& center() const;     // Tail
  const Int& radius() const;     // Tail
  const Int& threshold() const;  // HalfTail
  int unit() const;              // Affine
  const Int& shift() const;      // Affine
  const IntSet& inner() const;   // Affine
  const std::vector<IntSet>& parts() const;  // Union, Intersection

  bool contains(const Int& x) const;

  friend bool operator==(const IntSet& a, const IntSet& b);
  friend bool operator!=(const IntSet& a, const IntSet& b) { return !(a == b); }

  struct Node;  // opaque; defined in the implementation file

 private:
  explicit IntSet(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

/// Total structural order used to sort Union and Intersection parts.
int compare(const IntSet& a, const IntSet& b);

std::string to_string(const IntSet& set);

bool contains(const IntSet& set, const Int& x);

/// Exactly {x in set : lo <= x <= hi}, sorted.
std::vector<Int> materialize(const IntSet& set, const Window& w, const Limits& limits = {});

/// Rewrites into canonical form: Affine pushed to the leaves, unions and
/// intersections flattened, sorted and merged. Idempotent and exact.
IntSet normalize(const IntSet& set, const Limits& limits = {});

/// Exact symbolic intersection of a nonempty list, normalized.
IntSet intersect_truncated(std::span<const IntSet> sets, const Limits& limits = {});

/// Structural lower/upper bounds; nullopt means the bound could not be shown
/// (either the set is unbounded in that direction or it is empty).
std::optional<Int> provable_min(const IntSet& set);
std::optional<Int> provable_max(const IntSet& set);
/// True when every element is >= 0 by structure (the empty set qualifies).
bool provably_nonnegative(const IntSet& set);

}  // namespace hsets
