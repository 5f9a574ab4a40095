#include "hsets/periodic.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "hsets/error.hpp"

namespace hsets {

namespace {

using Bound = std::optional<Int>;

std::vector<Int> set_union(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Int> set_intersection(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Int> set_difference(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Int> complement_residues(const std::vector<Int>& a, const Int& m) {
  std::vector<Int> out;
  auto it = a.begin();
  for (Int r = 0; r < m; ++r) {
    if (it != a.end() && *it == r) {
      ++it;
    } else {
      out.push_back(r);
    }
  }
  return out;
}

std::vector<Int> lift(const std::vector<Int>& residues, const Int& from, const Int& to) {
  if (from == to) return residues;
  std::vector<Int> out;
  out.reserve(residues.size() * static_cast<std::size_t>(to / from));
  for (Int block = 0; block < to; block += from) {
    for (const auto& r : residues) out.push_back(block + r);
  }
  sort_unique(out);
  return out;
}

// Does some integer of [start, end) have residue r modulo m?
bool realized(const Int& r, const Int& m, const Bound& start, const Bound& end) {
  if (!start || !end || *end - *start >= m) return true;
  return *start + floor_mod(r - *start, m) < *end;
}

std::vector<Int> restrict_to_region(const std::vector<Int>& residues, const Int& m,
                                    const Bound& start, const Bound& end) {
  if (!start || !end || *end - *start >= m) return residues;
  std::vector<Int> out;
  for (const auto& r : residues) {
    if (realized(r, m, start, end)) out.push_back(r);
  }
  return out;
}

Int minimal_period(const Int& m, const std::vector<Int>& residues) {
  if (residues.empty() || Int(residues.size()) == m) return 1;
  Int period = m;
  const Int& r0 = residues.front();
  for (const auto& r : residues) {
    const Int t = floor_mod(r - r0, m);
    if (t == 0 || m % gcd(period, t) != 0) continue;
    if (period % t == 0 && t != period) {
      // fall through to the closure test
    }
    bool closed = true;
    for (const auto& x : residues) {
      if (!std::binary_search(residues.begin(), residues.end(), floor_mod(x + t, m))) {
        closed = false;
        break;
      }
    }
    if (closed) period = gcd(period, t);
  }
  return period;
}

void check_modulus(const Int& m, const Limits& limits) {
  if (m > limits.max_modulus) {
    throw SizeCapError("periodic modulus " + m.str() + " exceeds cap " + limits.max_modulus.str());
  }
}

void check_residues(const std::vector<std::vector<Int>>& residues, const Limits& limits) {
  std::size_t total = 0;
  for (const auto& r : residues) total += r.size();
  if (total > limits.max_residues) {
    throw SizeCapError("periodic residue count " + std::to_string(total) + " exceeds cap");
  }
}

}  // namespace

Progression operator+(const Progression& a, const Progression& b) {
  if (a.modulus != b.modulus) throw DomainError("progression moduli differ");
  Progression s;
  s.modulus = a.modulus;
  s.residue = floor_mod(a.residue + b.residue, a.modulus);
  if (a.first && b.first) s.first = *a.first + *b.first;
  if (a.last && b.last) s.last = *a.last + *b.last;
  return s;
}

PeriodicSet::PeriodicSet() : modulus_(1), residues_{{}} {}

PeriodicSet::PeriodicSet(Int modulus, std::vector<Int> cuts, std::vector<std::vector<Int>> residues)
    : modulus_(std::move(modulus)), cuts_(std::move(cuts)), residues_(std::move(residues)) {}

PeriodicSet PeriodicSet::all() { return PeriodicSet(1, {}, {{Int(0)}}); }

void PeriodicSet::canonicalize(const Limits& limits) {
  auto start_of = [this](std::size_t i) { return i == 0 ? Bound{} : Bound(cuts_[i - 1]); };
  auto end_of = [this](std::size_t i) { return i == cuts_.size() ? Bound{} : Bound(cuts_[i]); };
  for (int round = 0; round < 64; ++round) {
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      residues_[i] = restrict_to_region(residues_[i], modulus_, start_of(i), end_of(i));
    }
    // Greedy left-to-right merge of neighbours that agree where both are realized.
    std::vector<Int> cuts;
    std::vector<std::vector<Int>> res;
    Bound cur_start;
    std::vector<Int> cur = residues_.front();
    for (std::size_t i = 1; i < residues_.size(); ++i) {
      const Int& cut = cuts_[i - 1];
      const Bound next_end = end_of(i);
      const auto& next = residues_[i];
      bool ok = true;
      for (const auto& r : next) {
        if (realized(r, modulus_, cur_start, cut) &&
            !std::binary_search(cur.begin(), cur.end(), r)) {
          ok = false;
          break;
        }
      }
      for (std::size_t k = 0; ok && k < cur.size(); ++k) {
        if (realized(cur[k], modulus_, cut, next_end) &&
            !std::binary_search(next.begin(), next.end(), cur[k])) {
          ok = false;
        }
      }
      if (ok) {
        cur = restrict_to_region(set_union(cur, next), modulus_, cur_start, next_end);
      } else {
        cuts.push_back(cut);
        res.push_back(std::move(cur));
        cur_start = cut;
        cur = next;
      }
    }
    res.push_back(std::move(cur));
    cuts_ = std::move(cuts);
    residues_ = std::move(res);

    // Try a smaller common period; short regions only need to agree on the
    // residues they realize.
    Int d = 1;
    for (std::size_t i = 0; i < residues_.size(); ++i) {
      const Bound s = start_of(i);
      const Bound e = end_of(i);
      if (s && e && *e - *s < modulus_) continue;
      d = lcm(d, minimal_period(modulus_, residues_[i]));
    }
    if (d == modulus_) break;
    bool representable = true;
    std::vector<std::vector<Int>> reduced(residues_.size());
    for (std::size_t i = 0; i < residues_.size() && representable; ++i) {
      std::vector<Int> small;
      for (const auto& r : residues_[i]) small.push_back(floor_mod(r, d));
      sort_unique(small);
      const auto back = restrict_to_region(lift(small, d, modulus_), modulus_, start_of(i), end_of(i));
      if (back != residues_[i]) representable = false;
      reduced[i] = std::move(small);
    }
    if (!representable) break;
    modulus_ = d;
    residues_ = std::move(reduced);
  }
  check_residues(residues_, limits);
}

std::vector<std::vector<Int>> PeriodicSet::refine(const Int& target_modulus,
                                                  const std::vector<Int>& target_cuts) const {
  std::vector<std::vector<Int>> out;
  out.reserve(target_cuts.size() + 1);
  std::size_t region = 0;
  for (std::size_t j = 0; j <= target_cuts.size(); ++j) {
    if (j > 0) {
      const Int& start = target_cuts[j - 1];
      while (region < cuts_.size() && cuts_[region] <= start) ++region;
    }
    out.push_back(lift(residues_[region], modulus_, target_modulus));
  }
  return out;
}

template <class Op>
PeriodicSet PeriodicSet::combine(const PeriodicSet& other, const Limits& limits, Op op) const {
  const Int m = lcm(modulus_, other.modulus_);
  check_modulus(m, limits);
  std::vector<Int> cuts = cuts_;
  cuts.insert(cuts.end(), other.cuts_.begin(), other.cuts_.end());
  sort_unique(cuts);
  const auto a = refine(m, cuts);
  const auto b = other.refine(m, cuts);
  std::vector<std::vector<Int>> res(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) res[i] = op(a[i], b[i], m);
  check_residues(res, limits);
  PeriodicSet out(m, std::move(cuts), std::move(res));
  out.canonicalize(limits);
  return out;
}

PeriodicSet PeriodicSet::lifted(const Int& target_modulus, const Limits& limits) const {
  check_modulus(target_modulus, limits);
  std::vector<std::vector<Int>> res;
  for (const auto& r : residues_) res.push_back(lift(r, modulus_, target_modulus));
  check_residues(res, limits);
  return PeriodicSet(target_modulus, cuts_, std::move(res));
}

PeriodicSet PeriodicSet::unite(const PeriodicSet& other, const Limits& limits) const {
  return combine(other, limits,
                 [](const auto& a, const auto& b, const Int&) { return set_union(a, b); });
}

PeriodicSet PeriodicSet::intersect(const PeriodicSet& other, const Limits& limits) const {
  return combine(other, limits,
                 [](const auto& a, const auto& b, const Int&) { return set_intersection(a, b); });
}

PeriodicSet PeriodicSet::minus(const PeriodicSet& other, const Limits& limits) const {
  return combine(other, limits,
                 [](const auto& a, const auto& b, const Int&) { return set_difference(a, b); });
}

PeriodicSet PeriodicSet::complement() const {
  std::vector<std::vector<Int>> res;
  for (const auto& r : residues_) res.push_back(complement_residues(r, modulus_));
  PeriodicSet out(modulus_, cuts_, std::move(res));
  out.canonicalize(Limits{});
  return out;
}

PeriodicSet PeriodicSet::affine(int unit, const Int& shift) const {
  if (unit != 1 && unit != -1) throw DomainError("affine unit must be +1 or -1");
  std::vector<Int> cuts;
  std::vector<std::vector<Int>> res;
  auto map_residues = [&](const std::vector<Int>& rs) {
    std::vector<Int> out;
    for (const auto& r : rs) out.push_back(floor_mod(r * unit + shift, modulus_));
    sort_unique(out);
    return out;
  };
  if (unit == 1) {
    for (const auto& c : cuts_) cuts.push_back(c + shift);
    for (const auto& r : residues_) res.push_back(map_residues(r));
  } else {
    // [s, e) maps to (shift - e, shift - s] = [shift - e + 1, shift - s + 1).
    for (auto it = cuts_.rbegin(); it != cuts_.rend(); ++it) cuts.push_back(shift - *it + 1);
    for (auto it = residues_.rbegin(); it != residues_.rend(); ++it) res.push_back(map_residues(*it));
  }
  PeriodicSet out(modulus_, std::move(cuts), std::move(res));
  out.canonicalize(Limits{});
  return out;
}

bool PeriodicSet::contains(const Int& x) const {
  const auto region = static_cast<std::size_t>(
      std::upper_bound(cuts_.begin(), cuts_.end(), x) - cuts_.begin());
  const auto& rs = residues_[region];
  return std::binary_search(rs.begin(), rs.end(), floor_mod(x, modulus_));
}

bool PeriodicSet::is_empty() const {
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const Bound s = i == 0 ? Bound{} : Bound(cuts_[i - 1]);
    const Bound e = i == cuts_.size() ? Bound{} : Bound(cuts_[i]);
    for (const auto& r : residues_[i]) {
      if (realized(r, modulus_, s, e)) return false;
    }
  }
  return true;
}

bool PeriodicSet::is_all() const { return complement().is_empty(); }

std::vector<Progression> PeriodicSet::progressions() const {
  std::vector<Progression> out;
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const Bound s = i == 0 ? Bound{} : Bound(cuts_[i - 1]);
    const Bound e = i == cuts_.size() ? Bound{} : Bound(cuts_[i]);
    for (const auto& r : residues_[i]) {
      Progression p;
      p.modulus = modulus_;
      p.residue = r;
      if (s) p.first = *s + floor_mod(r - *s, modulus_);
      if (e) p.last = (*e - 1) - floor_mod(*e - 1 - r, modulus_);
      if (p.first && p.last && *p.first > *p.last) continue;
      out.push_back(std::move(p));
    }
  }
  return out;
}

std::optional<Int> PeriodicSet::min() const {
  std::optional<Int> best;
  for (const auto& p : progressions()) {
    if (!p.first) return std::nullopt;
    if (!best || *p.first < *best) best = p.first;
  }
  return best;
}

std::optional<Int> PeriodicSet::max() const {
  std::optional<Int> best;
  for (const auto& p : progressions()) {
    if (!p.last) return std::nullopt;
    if (!best || *p.last > *best) best = p.last;
  }
  return best;
}

PeriodicSet PeriodicSet::from_progressions(const std::vector<Progression>& aps, const Int& modulus,
                                           const Limits& limits) {
  check_modulus(modulus, limits);
  std::vector<Int> cuts;
  for (const auto& p : aps) {
    if (p.first && p.last && *p.first > *p.last) continue;
    if (p.first) cuts.push_back(*p.first);
    if (p.last) cuts.push_back(*p.last + 1);
  }
  sort_unique(cuts);
  // Sweep: per cut, the residues that start and stop there.
  std::vector<std::vector<Int>> starts(cuts.size()), stops(cuts.size());
  std::map<Int, long> active;
  auto index_of = [&](const Int& c) {
    return static_cast<std::size_t>(std::lower_bound(cuts.begin(), cuts.end(), c) - cuts.begin());
  };
  for (const auto& p : aps) {
    if (p.modulus != modulus) throw DomainError("progression modulus mismatch");
    if (p.first && p.last && *p.first > *p.last) continue;
    if (p.first) {
      starts[index_of(*p.first)].push_back(p.residue);
    } else {
      ++active[p.residue];
    }
    if (p.last) stops[index_of(*p.last + 1)].push_back(p.residue);
  }
  std::vector<std::vector<Int>> res;
  res.reserve(cuts.size() + 1);
  auto snapshot = [&] {
    std::vector<Int> rs;
    for (const auto& [r, count] : active) {
      if (count > 0) rs.push_back(r);
    }
    return rs;
  };
  res.push_back(snapshot());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    for (const auto& r : starts[i]) ++active[r];
    for (const auto& r : stops[i]) {
      if (--active[r] == 0) active.erase(r);
    }
    res.push_back(snapshot());
  }
  check_residues(res, limits);
  PeriodicSet out(modulus, std::move(cuts), std::move(res));
  out.canonicalize(limits);
  return out;
}

PeriodicSet PeriodicSet::sum(const PeriodicSet& other, const Limits& limits) const {
  const Int m = lcm(modulus_, other.modulus_);
  check_modulus(m, limits);
  const auto a = lifted(m, limits).progressions();
  const auto b = other.lifted(m, limits).progressions();
  if (a.empty() || b.empty()) return PeriodicSet::empty();
  if (a.size() * b.size() > limits.max_terms) {
    throw SizeCapError("symbolic sum needs " + std::to_string(a.size() * b.size()) +
                       " progression pairs (cap " + std::to_string(limits.max_terms) + ")");
  }
  std::vector<Progression> sums;
  sums.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) sums.push_back(x + y);
  }
  return from_progressions(sums, m, limits);
}

PeriodicSet PeriodicSet::hfold(int h, const Limits& limits) const {
  if (h < 1) throw DomainError("h must be >= 1");
  // Binary powering; sums are associative and commutative.
  PeriodicSet base = *this;
  std::optional<PeriodicSet> acc;
  for (int k = h; k > 0; k >>= 1) {
    if (k & 1) acc = acc ? acc->sum(base, limits) : base;
    if (k > 1) base = base.sum(base, limits);
  }
  return *acc;
}

bool PeriodicSet::equals(const PeriodicSet& other, const Limits& limits) const {
  return minus(other, limits).is_empty() && other.minus(*this, limits).is_empty();
}

bool PeriodicSet::subset_of(const PeriodicSet& other, const Limits& limits) const {
  return minus(other, limits).is_empty();
}

std::optional<Int> PeriodicSet::nearest_member() const {
  std::optional<Int> best;
  auto offer = [&](const Int& x) {
    if (!best || closer_to_zero(x, *best)) best = x;
  };
  for (const auto& p : progressions()) {
    const Int below = -floor_mod(-p.residue, p.modulus);  // largest <= 0 in class
    const Int above = floor_mod(p.residue, p.modulus);    // smallest >= 0 in class
    auto inside = [&](const Int& x) {
      return (!p.first || *p.first <= x) && (!p.last || x <= *p.last);
    };
    if (inside(below)) offer(below);
    if (inside(above)) offer(above);
    if (p.first) offer(*p.first);
    if (p.last) offer(*p.last);
  }
  return best;
}

std::vector<Int> PeriodicSet::materialize(const Window& w, const Limits& limits) const {
  if (w.size() > limits.max_window) throw SizeCapError("window exceeds cap: " + to_string(w));
  std::vector<Int> out;
  for (const auto& p : progressions()) {
    Int lo = w.lo;
    Int hi = w.hi;
    if (p.first) lo = std::max(lo, *p.first);
    if (p.last) hi = std::min(hi, *p.last);
    if (lo > hi) continue;
    for (Int x = lo + floor_mod(p.residue - lo, p.modulus); x <= hi; x += p.modulus) {
      out.push_back(x);
    }
  }
  sort_unique(out);
  return out;
}

std::optional<PeriodicSet> PeriodicSet::compile(const IntSet& set, const Limits& limits) {
  using K = IntSet::Kind;
  switch (set.kind()) {
    case K::Empty:
      return PeriodicSet::empty();
    case K::Finite: {
      std::vector<Int> cuts;
      std::vector<std::vector<Int>> res{{}};
      const auto& v = set.values();
      for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
        cuts.push_back(v[i]);
        cuts.push_back(v[j] + 1);
        res.push_back({Int(0)});
        res.push_back({});
        i = j + 1;
      }
      PeriodicSet out(1, std::move(cuts), std::move(res));
      out.canonicalize(limits);
      return out;
    }
    case K::Cofinite: {
      auto fin = compile(IntSet::finite(set.values()), limits);
      return fin->complement();
    }
    case K::Congruence: {
      check_modulus(set.modulus(), limits);
      PeriodicSet out(set.modulus(), {}, {set.values()});
      check_residues(out.residues_, limits);
      out.canonicalize(limits);
      return out;
    }
    case K::Tail: {
      PeriodicSet out(1, {set.center() - set.radius() + 1, set.center() + set.radius()},
                      {{Int(0)}, {}, {Int(0)}});
      out.canonicalize(limits);
      return out;
    }
    case K::HalfTail:
      return PeriodicSet(1, {set.threshold()}, {{}, {Int(0)}});
    case K::Union:
    case K::Intersection: {
      std::optional<PeriodicSet> acc;
      for (const auto& p : set.parts()) {
        auto c = compile(p, limits);
        if (!c) return std::nullopt;
        if (!acc) {
          acc = std::move(c);
        } else {
          acc = set.kind() == K::Union ? acc->unite(*c, limits) : acc->intersect(*c, limits);
        }
      }
      return acc;
    }
    case K::Affine: {
      auto inner = compile(set.inner(), limits);
      if (!inner) return std::nullopt;
      return inner->affine(set.unit(), set.shift());
    }
    case K::SignedPowersOfTwo:
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<PeriodicSet> PeriodicSet::try_compile(const IntSet& set, const Limits& limits) {
  try {
    return compile(set, limits);
  } catch (const SizeCapError&) {
    return std::nullopt;
  }
}

IntSet PeriodicSet::to_intset(const Limits& limits) const {
  const Int& m = modulus_;
  auto residue_set = [&](const std::vector<Int>& rs) -> IntSet {
    if (rs.empty()) return IntSet::empty();
    if (Int(rs.size()) == m) return IntSet::all();
    return IntSet::congruence(m, rs);
  };
  if (cuts_.empty()) return normalize(residue_set(residues_.front()), limits);

  const Int span = cuts_.back() - cuts_.front();
  if (residues_.front() == residues_.back() && span <= limits.max_explicit_run) {
    // Common background pattern with finitely many exceptions in the middle.
    const auto& bg = residues_.front();
    std::vector<Int> added, removed;
    for (Int x = cuts_.front(); x < cuts_.back(); ++x) {
      const bool in_bg = std::binary_search(bg.begin(), bg.end(), floor_mod(x, m));
      const bool in_set = contains(x);
      if (in_set && !in_bg) added.push_back(x);
      if (!in_set && in_bg) removed.push_back(x);
    }
    IntSet base = residue_set(bg);
    if (!removed.empty()) base = IntSet::intersect({base, IntSet::cofinite(removed)});
    if (!added.empty()) base = IntSet::unite({base, IntSet::finite(added)});
    return normalize(base, limits);
  }

  std::vector<IntSet> pieces;
  for (std::size_t i = 0; i < residues_.size(); ++i) {
    const auto& rs = residues_[i];
    if (rs.empty()) continue;
    const Bound s = i == 0 ? Bound{} : Bound(cuts_[i - 1]);
    const Bound e = i == cuts_.size() ? Bound{} : Bound(cuts_[i]);
    if (s && e && *e - *s <= limits.max_explicit_run) {
      std::vector<Int> members;
      for (Int x = *s; x < *e; ++x) {
        if (std::binary_search(rs.begin(), rs.end(), floor_mod(x, m))) members.push_back(x);
      }
      if (!members.empty()) pieces.push_back(IntSet::finite(std::move(members)));
      continue;
    }
    std::vector<IntSet> factors;
    if (Int(rs.size()) != m) factors.push_back(IntSet::congruence(m, rs));
    if (s) factors.push_back(IntSet::half_tail(*s));
    if (e) factors.push_back(IntSet::lower_half_line(*e - 1));
    if (factors.empty()) return IntSet::all();
    pieces.push_back(factors.size() == 1 ? factors.front() : IntSet::intersect(std::move(factors)));
  }
  if (pieces.empty()) return IntSet::empty();
  return normalize(pieces.size() == 1 ? pieces.front() : IntSet::unite(std::move(pieces)), limits);
}

std::optional<bool> equivalent(const IntSet& a, const IntSet& b, const Limits& limits) {
  auto pa = PeriodicSet::try_compile(a, limits);
  auto pb = PeriodicSet::try_compile(b, limits);
  if (!pa || !pb) return std::nullopt;
  try {
    return pa->equals(*pb, limits);
  } catch (const SizeCapError&) {
    return std::nullopt;
  }
}

}  // namespace hsets
