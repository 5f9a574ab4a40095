#pragma once

#include <optional>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// {x : x = residue (mod modulus), first <= x <= last}; an absent bound is infinite.
struct Progression {
  std::optional<Int> first;
  std::optional<Int> last;
  Int residue;
  Int modulus;

  bool unbounded_below() const { return !first.has_value(); }
  bool unbounded_above() const { return !last.has_value(); }
};

/// Sum of two progressions over a common modulus: again a progression,
/// running from first+first to last+last.
Progression operator+(const Progression& a, const Progression& b);

/// Exact normal form of an eventually periodic subset of Z.
///
/// The line is cut at increasing breakpoints c_1 < ... < c_k into k+1
/// regions [c_i, c_{i+1}) (the outer two unbounded); inside each region the
/// set is a union of residue classes modulo one common modulus. Every
/// IntSet built without SignedPowersOfTwo compiles to this form, which makes
/// equality, inclusion and h-fold sums decidable.
class PeriodicSet {
 public:
  PeriodicSet();  // empty set

  static PeriodicSet empty() { return PeriodicSet(); }
  static PeriodicSet all();
  static PeriodicSet from_progressions(const std::vector<Progression>& aps, const Int& modulus,
                                       const Limits& limits = {});

  /// nullopt when the set is not eventually periodic; throws SizeCapError
  /// when the caps are exceeded.
  static std::optional<PeriodicSet> compile(const IntSet& set, const Limits& limits = {});
  /// Like compile, but also maps cap violations to nullopt.
  static std::optional<PeriodicSet> try_compile(const IntSet& set, const Limits& limits = {});

  const Int& modulus() const { return modulus_; }
  const std::vector<Int>& cuts() const { return cuts_; }
  const std::vector<std::vector<Int>>& residues() const { return residues_; }

  bool contains(const Int& x) const;
  bool is_empty() const;
  bool is_all() const;
  std::optional<Int> min() const;
  std::optional<Int> max() const;

  PeriodicSet complement() const;
  PeriodicSet affine(int unit, const Int& shift) const;
  PeriodicSet unite(const PeriodicSet& other, const Limits& limits = {}) const;
  PeriodicSet intersect(const PeriodicSet& other, const Limits& limits = {}) const;
  PeriodicSet minus(const PeriodicSet& other, const Limits& limits = {}) const;
  PeriodicSet sum(const PeriodicSet& other, const Limits& limits = {}) const;
  PeriodicSet hfold(int h, const Limits& limits = {}) const;

  bool equals(const PeriodicSet& other, const Limits& limits = {}) const;
  bool subset_of(const PeriodicSet& other, const Limits& limits = {}) const;

  /// Member of least absolute value, ties negative-first.
  std::optional<Int> nearest_member() const;
  std::vector<Int> materialize(const Window& w, const Limits& limits = {}) const;
  std::vector<Progression> progressions() const;

  /// Renders back to a normalized IntSet with the same members.
  IntSet to_intset(const Limits& limits = {}) const;

 private:
  PeriodicSet(Int modulus, std::vector<Int> cuts, std::vector<std::vector<Int>> residues);
  void canonicalize(const Limits& limits);
  std::vector<std::vector<Int>> refine(const Int& target_modulus,
                                       const std::vector<Int>& target_cuts) const;
  template <class Op>
  PeriodicSet combine(const PeriodicSet& other, const Limits& limits, Op op) const;
  PeriodicSet lifted(const Int& target_modulus, const Limits& limits) const;

  Int modulus_{1};
  std::vector<Int> cuts_;
  std::vector<std::vector<Int>> residues_;
};

/// Exact set equality for periodic-compilable sets; nullopt otherwise.
std::optional<bool> equivalent(const IntSet& a, const IntSet& b, const Limits& limits = {});

}  // namespace hsets
