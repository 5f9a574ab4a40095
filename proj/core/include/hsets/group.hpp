#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hsets {

using Element = std::uint32_t;

/// A finite group given by its full multiplication table.
///
/// Elements are 0..order-1. The constructor checks closure, the identity,
/// inverses and associativity (exhaustively up to order 64, on a fixed
/// sample of triples above that).
class FiniteGroupTable {
 public:
  FiniteGroupTable(std::vector<std::vector<Element>> table, std::string name = "table");

  /// Z/mZ with addition; element k is the residue k.
  static FiniteGroupTable cyclic(std::uint32_t m);
  /// G1 x G2; the pair (a, b) is element a * |G2| + b.
  static FiniteGroupTable direct_product(const FiniteGroupTable& g1, const FiniteGroupTable& g2);

  std::uint32_t order() const { return static_cast<std::uint32_t>(table_.size()); }
  Element identity() const { return identity_; }
  Element inverse(Element a) const { return inverses_.at(a); }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  bool is_abelian() const;
  const std::string& name() const { return name_; }
  const std::vector<std::vector<Element>>& table() const { return table_; }

 private:
  std::vector<std::vector<Element>> table_;
  Element identity_ = 0;
  std::vector<Element> inverses_;
  std::string name_;
};

/// A^h = {a_1 a_2 ... a_h}, respecting the order of factors. Sorted.
std::vector<Element> group_hfold(const FiniteGroupTable& g, const std::vector<Element>& subset, int h);

/// {(a, b) : a in A, b in B} as elements of direct_product(g1, g2).
std::vector<Element> product_subset(const FiniteGroupTable& g1, const FiniteGroupTable& g2,
                                    const std::vector<Element>& a, const std::vector<Element>& b);

}  // namespace hsets
