#pragma once

#include <cstdint>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// Finite set of integers stored as a bit array over [offset, offset + size).
class OffsetBitset {
 public:
  OffsetBitset() = default;
  OffsetBitset(std::int64_t offset, std::size_t size);

  static OffsetBitset from_members(const std::vector<Int>& members);

  std::int64_t offset() const { return offset_; }
  std::size_t size() const { return size_; }
  std::int64_t last() const { return offset_ + static_cast<std::int64_t>(size_) - 1; }

  bool test(std::int64_t x) const;
  void set(std::int64_t x);
  bool none() const;
  std::size_t count() const;
  std::vector<Int> members() const;

  /// Same members, restricted to [lo, hi].
  OffsetBitset clipped(std::int64_t lo, std::int64_t hi) const;

  /// Sumset {a + b}, keeping only sums inside [lo, hi].
  friend OffsetBitset sum_clipped(const OffsetBitset& a, const OffsetBitset& b, std::int64_t lo,
                                  std::int64_t hi);

 private:
  void or_shifted(const OffsetBitset& src, std::int64_t shift);
  std::int64_t offset_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// All sums of h elements of `base` that land in [lo, hi]; h-fold via
/// repeated doubling. Partial sums that cannot reach the target range with
/// the remaining summands are discarded.
OffsetBitset hfold_clipped(const OffsetBitset& base, int h, std::int64_t lo, std::int64_t hi);

/// Number of ordered h-tuples of `elements` (sorted, distinct) summing to x.
Int count_tuples(const std::vector<Int>& elements, int h, const Int& x);

}  // namespace hsets
