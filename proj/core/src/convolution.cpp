#include "hsets/convolution.hpp"

#include <algorithm>
#include <bit>

#include "hsets/error.hpp"

namespace hsets {

OffsetBitset::OffsetBitset(std::int64_t offset, std::size_t size)
    : offset_(offset), size_(size), words_((size + 63) / 64, 0) {}

OffsetBitset OffsetBitset::from_members(const std::vector<Int>& members) {
  if (members.empty()) return OffsetBitset();
  const auto [lo_it, hi_it] = std::minmax_element(members.begin(), members.end());
  const std::int64_t lo = to_i64(*lo_it);
  const std::int64_t hi = to_i64(*hi_it);
  OffsetBitset out(lo, static_cast<std::size_t>(hi - lo + 1));
  for (const auto& m : members) out.set(to_i64(m));
  return out;
}

bool OffsetBitset::test(std::int64_t x) const {
  if (x < offset_ || x > last()) return false;
  const auto i = static_cast<std::size_t>(x - offset_);
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void OffsetBitset::set(std::int64_t x) {
  const auto i = static_cast<std::size_t>(x - offset_);
  words_[i / 64] |= std::uint64_t(1) << (i % 64);
}

bool OffsetBitset::none() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t OffsetBitset::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Int> OffsetBitset::members() const {
  std::vector<Int> out;
  for (std::size_t wi = 0; wi < words_.size(); ++wi) {
    for (std::uint64_t w = words_[wi]; w != 0; w &= w - 1) {
      out.emplace_back(offset_ + static_cast<std::int64_t>(wi * 64 + std::countr_zero(w)));
    }
  }
  return out;
}

OffsetBitset OffsetBitset::clipped(std::int64_t lo, std::int64_t hi) const {
  lo = std::max(lo, offset_);
  hi = std::min(hi, last());
  if (size_ == 0 || lo > hi) return OffsetBitset();
  OffsetBitset out(lo, static_cast<std::size_t>(hi - lo + 1));
  out.or_shifted(*this, 0);
  return out;
}

// ORs src, translated by `shift`, into *this wherever the bits overlap.
void OffsetBitset::or_shifted(const OffsetBitset& src, std::int64_t shift) {
  const std::int64_t from = std::max(src.offset_ + shift, offset_);
  const std::int64_t to = std::min(src.last() + shift, last());
  if (from > to) return;
  auto src_pos = static_cast<std::size_t>(from - shift - src.offset_);
  auto dst_pos = static_cast<std::size_t>(from - offset_);
  auto remaining = static_cast<std::size_t>(to - from + 1);
  // Bit-by-bit until the destination is word aligned, then whole words.
  while (remaining > 0 && dst_pos % 64 != 0) {
    if ((src.words_[src_pos / 64] >> (src_pos % 64)) & 1U) {
      words_[dst_pos / 64] |= std::uint64_t(1) << (dst_pos % 64);
    }
    ++src_pos, ++dst_pos, --remaining;
  }
  const std::size_t sw = src.words_.size();
  while (remaining >= 64) {
    const std::size_t q = src_pos / 64;
    const std::size_t r = src_pos % 64;
    std::uint64_t w = src.words_[q] >> r;
    if (r != 0 && q + 1 < sw) w |= src.words_[q + 1] << (64 - r);
    words_[dst_pos / 64] |= w;
    src_pos += 64, dst_pos += 64, remaining -= 64;
  }
  while (remaining > 0) {
    if ((src.words_[src_pos / 64] >> (src_pos % 64)) & 1U) {
      words_[dst_pos / 64] |= std::uint64_t(1) << (dst_pos % 64);
    }
    ++src_pos, ++dst_pos, --remaining;
  }
}

OffsetBitset sum_clipped(const OffsetBitset& a, const OffsetBitset& b, std::int64_t lo,
                         std::int64_t hi) {
  if (a.size_ == 0 || b.size_ == 0) return OffsetBitset();
  lo = std::max(lo, a.offset_ + b.offset_);
  hi = std::min(hi, a.last() + b.last());
  if (lo > hi) return OffsetBitset();
  OffsetBitset out(lo, static_cast<std::size_t>(hi - lo + 1));
  // Iterate over the sparser operand, shifting the denser one.
  const bool a_small = a.count() <= b.count();
  const OffsetBitset& small = a_small ? a : b;
  const OffsetBitset& large = a_small ? b : a;
  for (std::size_t wi = 0; wi < small.words_.size(); ++wi) {
    for (std::uint64_t w = small.words_[wi]; w != 0; w &= w - 1) {
      const std::int64_t x = small.offset_ + static_cast<std::int64_t>(wi * 64 + std::countr_zero(w));
      out.or_shifted(large, x);
    }
  }
  return out;
}

OffsetBitset hfold_clipped(const OffsetBitset& base, int h, std::int64_t lo, std::int64_t hi) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (base.size() == 0) return OffsetBitset();
  const std::int64_t bmin = base.offset();
  const std::int64_t bmax = base.last();
  // A k-fold partial sum s is useful only if s + (h-k)*[bmin, bmax] meets [lo, hi].
  auto keep = [&](int k) {
    const std::int64_t r = h - k;
    return std::pair{lo - r * bmax, hi - r * bmin};
  };
  OffsetBitset acc;
  int acc_k = 0;
  OffsetBitset pow = base;
  int pow_k = 1;
  for (int k = h;;) {
    if (k & 1) {
      if (acc_k == 0) {
        acc = pow;
      } else {
        auto [l, u] = keep(acc_k + pow_k);
        acc = sum_clipped(acc, pow, l, u);
      }
      acc_k += pow_k;
    }
    k >>= 1;
    if (k == 0) break;
    // pow is only ever combined into acc together with other summands, so
    // it may be clipped to the range allowed for acc_k + 2*pow_k summands.
    auto [l, u] = keep(acc_k + 2 * pow_k);
    l -= static_cast<std::int64_t>(acc_k) * bmax;
    u -= static_cast<std::int64_t>(acc_k) * bmin;
    pow = sum_clipped(pow, pow, l, u);
    pow_k *= 2;
  }
  return acc.clipped(lo, hi);
}

Int count_tuples(const std::vector<Int>& elements, int h, const Int& x) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (elements.empty()) return 0;
  const Int& emin = elements.front();
  const Int& emax = elements.back();
  // dp over partial sums s in [s_lo, s_lo + size), pruned by reachability of x.
  std::vector<Int> dp;
  Int s_lo = 0;
  dp.push_back(1);  // zero summands: sum 0
  for (int k = 1; k <= h; ++k) {
    const Int r = h - k;
    const Int lo = std::max<Int>(s_lo + emin, x - r * emax);
    const Int hi = std::min<Int>(s_lo + Int(dp.size() - 1) + emax, x - r * emin);
    if (lo > hi) return 0;
    const Int width = hi - lo + 1;
    if (width > Int(1) << 24) throw SizeCapError("representation count range too large");
    std::vector<Int> next(static_cast<std::size_t>(width), 0);
    for (std::size_t i = 0; i < dp.size(); ++i) {
      if (dp[i] == 0) continue;
      const Int s = s_lo + Int(i);
      for (const auto& e : elements) {
        const Int t = s + e;
        if (t < lo) continue;
        if (t > hi) break;
        next[static_cast<std::size_t>(t - lo)] += dp[i];
      }
    }
    dp = std::move(next);
    s_lo = lo;
  }
  const Int idx = x - s_lo;
  if (idx < 0 || idx >= Int(dp.size())) return 0;
  return dp[static_cast<std::size_t>(idx)];
}

}  // namespace hsets
