#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/intset.hpp"

namespace hsets {

using Point = std::vector<Int>;

/// Cartesian product of subsets of Z; one factor means a plain subset of Z.
struct ProductSet {
  std::vector<IntSet> factors;

  std::size_t dimension() const { return factors.size(); }
  bool contains(const Point& p) const;
  /// True when some factor is provably empty.
  bool is_empty(const Limits& limits = {}) const;
  std::string to_string() const;
};

/// An indexed decreasing family q -> A_q of subsets of Z (or of Z^n for
/// products), with the parameters of its construction.
class Family {
 public:
  enum class Kind { Tail, HalfTail, CongruenceChain, CosetTail, Enumeration, Affine, Product, Explicit };

  /// A_q = core u {|r| >= q}.
  static Family tail(IntSet core);
  /// A_q = core u {r >= q}.
  static Family half_tail(IntSet core);
  /// A_q = union of a (mod m_q), a in core, with m_q = m1 * ratio^(q-1).
  static Family congruence_chain(std::vector<Int> core, Int m1, Int ratio);
  /// Same with explicit moduli m_1 | m_2 | ...; q is limited to moduli.size().
  static Family congruence_chain(std::vector<Int> core, std::vector<Int> moduli);
  /// A_q = dZ u {x + d*r : r >= q}.
  static Family coset_tail(Int step, Int base);
  /// A_q = core u {a_r : r >= q}, with a_1, a_2, ... listing Z \ core by |a|, negatives first.
  static Family enumeration(std::vector<Int> core);
  /// A_q = unit * inner_q + shift.
  static Family affine(int unit, Int shift, Family inner);
  /// A_q = product of the factors' sets.
  static Family product(std::vector<Family> factors);
  /// A_q = sets[q-1] for q = 1..sets.size().
  static Family explicit_sets(std::vector<IntSet> sets);

  Kind kind() const;
  std::size_t dimension() const;
  /// Largest valid index, or nullopt for families defined for every q.
  std::optional<Int> max_index() const;

  IntSet set_at(const Int& q) const;  // dimension 1
  ProductSet product_at(const Int& q) const;
  /// The exact intersection of all A_q.
  IntSet limit() const;  // dimension 1
  ProductSet product_limit() const;

  // Parameters (valid for the matching kind).
  const IntSet& core() const;                // Tail, HalfTail
  const std::vector<Int>& core_points() const;  // CongruenceChain, Enumeration
  Int modulus_at(const Int& q) const;        // CongruenceChain
  const Int& step() const;                   // CosetTail
  const Int& base() const;                   // CosetTail
  int unit() const;                          // Affine
  const Int& shift() const;                  // Affine
  const Family& inner() const;               // Affine
  const std::vector<Family>& factors() const;  // Product
  const std::vector<IntSet>& sets() const;   // Explicit
  const std::optional<Int>& ratio() const;   // CongruenceChain
  const std::vector<Int>& moduli() const;    // CongruenceChain (explicit list)

  std::string describe() const;

  struct Data;

 private:
  explicit Family(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

/// The closed form of the intersection over all q of hA_q, taken from the
/// construction's proof.
struct TailCertificate {
  int h = 2;
  ProductSet closed_form;
  std::string provenance;
};

std::optional<TailCertificate> tail_certificate(const Family& family, int h,
                                                const Limits& limits = {});

struct MonotonicityReport {
  bool decreasing = true;
  /// Point of A_q \ A_{q+1} inside the window, one entry per q < Q.
  std::vector<std::optional<Point>> strict_witness;
  /// Point of A_{q+1} \ A_q if the family fails to decrease.
  std::optional<std::pair<Int, Point>> violation;
  bool strictly = false;
  /// The last tested step is strict, i.e. no trailing constant run.
  bool asymptotically_strict_within_range = false;
  std::optional<Int> constant_from;
};

MonotonicityReport classify_monotonicity(const Family& family, const Int& Q, const Window& w,
                                         const Limits& limits = {});

/// The q-th element of the enumeration of Z \ core used by Family::enumeration.
std::vector<Int> enumerate_complement(const std::vector<Int>& core, std::size_t count);

/// Members of a product set inside the cube w^n, in lexicographic order.
std::vector<Point> materialize(const ProductSet& set, const Window& w, const Limits& limits = {});

std::string to_string(const Point& p);

}  // namespace hsets
