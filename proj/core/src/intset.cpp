#include "hsets/intset.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <sstream>

#include "hsets/error.hpp"

namespace hsets {

// ---------------------------------------------------------------------------
// Window / Membership3

Window::Window(Int lo_, Int hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo > hi) throw InputError("window lower bound exceeds upper bound: " + to_string(*this));
}

Int Window::radius() const { return std::max(abs(lo), abs(hi)); }

std::string to_string(const Window& w) { return "[" + w.lo.str() + "," + w.hi.str() + "]"; }

// ---------------------------------------------------------------------------
// Node storage

struct IntSet::Node {
  Kind kind = Kind::Empty;
  std::vector<Int> values;
  Int a;  // modulus | center | threshold | shift
  Int b;  // radius
  int unit = 1;
  std::vector<IntSet> parts;
};

namespace {

std::shared_ptr<const IntSet::Node> empty_node() {
  static const auto node = std::make_shared<const IntSet::Node>();
  return node;
}

const std::vector<Int>& no_values() {
  static const std::vector<Int> v;
  return v;
}

}  // namespace

IntSet::IntSet() : node_(empty_node()) {}
IntSet::IntSet(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

IntSet IntSet::empty() { return IntSet(); }

IntSet IntSet::finite(std::vector<Int> elements) {
  sort_unique(elements);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Finite;
  n->values = std::move(elements);
  return IntSet(std::move(n));
}

IntSet IntSet::cofinite(std::vector<Int> excluded) {
  sort_unique(excluded);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cofinite;
  n->values = std::move(excluded);
  return IntSet(std::move(n));
}

IntSet IntSet::congruence(Int modulus, std::vector<Int> residues) {
  if (modulus < 1) throw DomainError("congruence modulus must be >= 1, got " + modulus.str());
  if (residues.empty()) throw DomainError("congruence residue list must be nonempty");
  for (auto& r : residues) r = floor_mod(r, modulus);
  sort_unique(residues);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Congruence;
  n->a = std::move(modulus);
  n->values = std::move(residues);
  return IntSet(std::move(n));
}

IntSet IntSet::tail(Int center, Int radius) {
  if (radius < 1) throw DomainError("tail radius must be >= 1, got " + radius.str());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Tail;
  n->a = std::move(center);
  n->b = std::move(radius);
  return IntSet(std::move(n));
}

IntSet IntSet::half_tail(Int threshold) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::HalfTail;
  n->a = std::move(threshold);
  return IntSet(std::move(n));
}

IntSet IntSet::lower_half_line(Int bound) { return affine(-1, std::move(bound), half_tail(0)); }

IntSet IntSet::unite(std::vector<IntSet> parts) {
  if (parts.empty()) throw DomainError("union needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Union;
  n->parts = std::move(parts);
  return IntSet(std::move(n));
}

IntSet IntSet::intersect(std::vector<IntSet> parts) {
  if (parts.empty()) throw DomainError("intersection needs at least one part");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Intersection;
  n->parts = std::move(parts);
  return IntSet(std::move(n));
}

IntSet IntSet::affine(int unit, Int shift, IntSet inner) {
  if (unit != 1 && unit != -1) throw DomainError("affine unit must be +1 or -1");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Affine;
  n->unit = unit;
  n->a = std::move(shift);
  n->parts.push_back(std::move(inner));
  return IntSet(std::move(n));
}

IntSet IntSet::signed_powers_of_two() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::SignedPowersOfTwo;
  return IntSet(std::move(n));
}

IntSet::Kind IntSet::kind() const { return node_->kind; }

const std::vector<Int>& IntSet::values() const {
  switch (node_->kind) {
    case Kind::Finite:
    case Kind::Cofinite:
    case Kind::Congruence:
      return node_->values;
    default:
      return no_values();
  }
}

const Int& IntSet::modulus() const { return node_->a; }
const Int& IntSet::center() const { return node_->a; }
const Int& IntSet::radius() const { return node_->b; }
const Int& IntSet::threshold() const { return node_->a; }
int IntSet::unit() const { return node_->unit; }
const Int& IntSet::shift() const { return node_->a; }
const IntSet& IntSet::inner() const { return node_->parts.front(); }
const std::vector<IntSet>& IntSet::parts() const { return node_->parts; }

namespace {

bool is_power_of_two(const Int& v) {
  if (v <= 0) return false;
  return (v & (v - 1)) == 0;
}

}  // namespace

bool IntSet::contains(const Int& x) const {
  const Node& n = *node_;
  switch (n.kind) {
    case Kind::Empty:
      return false;
    case Kind::Finite:
      return std::binary_search(n.values.begin(), n.values.end(), x);
    case Kind::Cofinite:
      return !std::binary_search(n.values.begin(), n.values.end(), x);
    case Kind::Congruence:
      return std::binary_search(n.values.begin(), n.values.end(), floor_mod(x, n.a));
    case Kind::Tail:
      return abs(x - n.a) >= n.b;
    case Kind::HalfTail:
      return x >= n.a;
    case Kind::Union:
      return std::any_of(n.parts.begin(), n.parts.end(),
                         [&](const IntSet& p) { return p.contains(x); });
    case Kind::Intersection:
      return std::all_of(n.parts.begin(), n.parts.end(),
                         [&](const IntSet& p) { return p.contains(x); });
    case Kind::Affine:
      // y = unit * x' + shift  =>  x' = unit * (y - shift)
      return n.parts.front().contains((x - n.a) * n.unit);
    case Kind::SignedPowersOfTwo:
      return x == 0 || is_power_of_two(abs(x));
  }
  return false;
}

bool contains(const IntSet& set, const Int& x) { return set.contains(x); }

// ---------------------------------------------------------------------------
// Structural comparison

namespace {

int cmp_int(const Int& a, const Int& b) { return a < b ? -1 : (b < a ? 1 : 0); }

int cmp_ints(const std::vector<Int>& a, const std::vector<Int>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = cmp_int(a[i], b[i])) return c;
  }
  return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
}

}  // namespace

int compare(const IntSet& x, const IntSet& y) {
  if (x.kind() != y.kind()) return x.kind() < y.kind() ? -1 : 1;
  using K = IntSet::Kind;
  switch (x.kind()) {
    case K::Empty:
    case K::SignedPowersOfTwo:
      return 0;
    case K::Finite:
    case K::Cofinite:
      return cmp_ints(x.values(), y.values());
    case K::Congruence:
      if (int c = cmp_int(x.modulus(), y.modulus())) return c;
      return cmp_ints(x.values(), y.values());
    case K::Tail:
      if (int c = cmp_int(x.center(), y.center())) return c;
      return cmp_int(x.radius(), y.radius());
    case K::HalfTail:
      return cmp_int(x.threshold(), y.threshold());
    case K::Union:
    case K::Intersection: {
      const auto& a = x.parts();
      const auto& b = y.parts();
      const std::size_t n = std::min(a.size(), b.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (int c = compare(a[i], b[i])) return c;
      }
      return a.size() < b.size() ? -1 : (a.size() > b.size() ? 1 : 0);
    }
    case K::Affine:
      if (x.unit() != y.unit()) return x.unit() < y.unit() ? -1 : 1;
      if (int c = cmp_int(x.shift(), y.shift())) return c;
      return compare(x.inner(), y.inner());
  }
  return 0;
}

bool operator==(const IntSet& a, const IntSet& b) {
  return a.node_ == b.node_ || compare(a, b) == 0;
}

namespace {

std::string join(const std::vector<Int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += v[i].str();
  }
  return out;
}

}  // namespace

std::string to_string(const IntSet& set) {
  using K = IntSet::Kind;
  switch (set.kind()) {
    case K::Empty:
      return "{}";
    case K::Finite:
      return "{" + join(set.values()) + "}";
    case K::Cofinite:
      return set.values().empty() ? "Z" : "Z\\{" + join(set.values()) + "}";
    case K::Congruence:
      return set.modulus().str() + "Z+{" + join(set.values()) + "}";
    case K::Tail:
      return "|x-" + set.center().str() + "|>=" + set.radius().str();
    case K::HalfTail:
      return "x>=" + set.threshold().str();
    case K::Union:
    case K::Intersection: {
      const char* op = set.kind() == K::Union ? " u " : " n ";
      std::string out = "(";
      for (std::size_t i = 0; i < set.parts().size(); ++i) {
        if (i) out += op;
        out += to_string(set.parts()[i]);
      }
      return out + ")";
    }
    case K::Affine:
      return std::string(set.unit() < 0 ? "-" : "") + "(" + to_string(set.inner()) + ")" +
             (set.shift() < 0 ? "" : "+") + set.shift().str();
    case K::SignedPowersOfTwo:
      return "{0,+-2^i}";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Bounds

namespace {

// Lower bound of a set: Empty (no elements), Unbounded, or a finite value.
struct LowBound {
  enum class Tag { EmptySet, Unbounded, Value } tag;
  Int value;
};

LowBound low_of(const IntSet& s);
LowBound high_of(const IntSet& s);

LowBound low_of(const IntSet& s) {
  using K = IntSet::Kind;
  using T = LowBound::Tag;
  switch (s.kind()) {
    case K::Empty:
      return {T::EmptySet, 0};
    case K::Finite:
      return s.values().empty() ? LowBound{T::EmptySet, 0} : LowBound{T::Value, s.values().front()};
    case K::HalfTail:
      return {T::Value, s.threshold()};
    case K::Cofinite:
    case K::Congruence:
    case K::Tail:
    case K::SignedPowersOfTwo:
      return {T::Unbounded, 0};
    case K::Union: {
      LowBound best{T::EmptySet, 0};
      for (const auto& p : s.parts()) {
        const LowBound b = low_of(p);
        if (b.tag == T::Unbounded) return b;
        if (b.tag == T::Value && (best.tag == T::EmptySet || b.value < best.value)) best = b;
      }
      return best;
    }
    case K::Intersection: {
      LowBound best{T::Unbounded, 0};
      for (const auto& p : s.parts()) {
        const LowBound b = low_of(p);
        if (b.tag == T::EmptySet) return b;
        if (b.tag == T::Value && (best.tag == T::Unbounded || b.value > best.value)) best = b;
      }
      return best;
    }
    case K::Affine: {
      const LowBound b = s.unit() > 0 ? low_of(s.inner()) : high_of(s.inner());
      if (b.tag != T::Value) return b;
      return {T::Value, Int(b.value * s.unit() + s.shift())};
    }
  }
  return {T::Unbounded, 0};
}

LowBound high_of(const IntSet& s) {
  using K = IntSet::Kind;
  using T = LowBound::Tag;
  switch (s.kind()) {
    case K::Empty:
      return {T::EmptySet, 0};
    case K::Finite:
      return s.values().empty() ? LowBound{T::EmptySet, 0} : LowBound{T::Value, s.values().back()};
    case K::HalfTail:
    case K::Cofinite:
    case K::Congruence:
    case K::Tail:
    case K::SignedPowersOfTwo:
      return {T::Unbounded, 0};
    case K::Union: {
      LowBound best{T::EmptySet, 0};
      for (const auto& p : s.parts()) {
        const LowBound b = high_of(p);
        if (b.tag == T::Unbounded) return b;
        if (b.tag == T::Value && (best.tag == T::EmptySet || b.value > best.value)) best = b;
      }
      return best;
    }
    case K::Intersection: {
      LowBound best{T::Unbounded, 0};
      for (const auto& p : s.parts()) {
        const LowBound b = high_of(p);
        if (b.tag == T::EmptySet) return b;
        if (b.tag == T::Value && (best.tag == T::Unbounded || b.value < best.value)) best = b;
      }
      return best;
    }
    case K::Affine: {
      const LowBound b = s.unit() > 0 ? high_of(s.inner()) : low_of(s.inner());
      if (b.tag != T::Value) return b;
      return {T::Value, Int(b.value * s.unit() + s.shift())};
    }
  }
  return {T::Unbounded, 0};
}

}  // namespace

std::optional<Int> provable_min(const IntSet& set) {
  const LowBound b = low_of(set);
  if (b.tag == LowBound::Tag::Value) return b.value;
  return std::nullopt;
}

std::optional<Int> provable_max(const IntSet& set) {
  const LowBound b = high_of(set);
  if (b.tag == LowBound::Tag::Value) return b.value;
  return std::nullopt;
}

bool provably_nonnegative(const IntSet& set) {
  const LowBound b = low_of(set);
  return b.tag == LowBound::Tag::EmptySet || (b.tag == LowBound::Tag::Value && b.value >= 0);
}

// ---------------------------------------------------------------------------
// Materialization

namespace {

void materialize_into(const IntSet& s, const Int& lo, const Int& hi, std::vector<Int>& out) {
  using K = IntSet::Kind;
  if (lo > hi) return;
  switch (s.kind()) {
    case K::Empty:
      return;
    case K::Finite: {
      const auto& v = s.values();
      auto it = std::lower_bound(v.begin(), v.end(), lo);
      for (; it != v.end() && *it <= hi; ++it) out.push_back(*it);
      return;
    }
    case K::Cofinite: {
      const auto& v = s.values();
      auto it = std::lower_bound(v.begin(), v.end(), lo);
      for (Int x = lo; x <= hi; ++x) {
        while (it != v.end() && *it < x) ++it;
        if (it != v.end() && *it == x) continue;
        out.push_back(x);
      }
      return;
    }
    case K::Congruence: {
      const Int& m = s.modulus();
      const Int base = lo - floor_mod(lo, m);
      for (Int block = base; block <= hi; block += m) {
        for (const auto& r : s.values()) {
          const Int x = block + r;
          if (x >= lo && x <= hi) out.push_back(x);
        }
      }
      return;
    }
    case K::Tail: {
      const Int left_hi = std::min(hi, Int(s.center() - s.radius()));
      for (Int x = lo; x <= left_hi; ++x) out.push_back(x);
      const Int right_lo = std::max(lo, Int(s.center() + s.radius()));
      for (Int x = right_lo; x <= hi; ++x) out.push_back(x);
      return;
    }
    case K::HalfTail: {
      for (Int x = std::max(lo, s.threshold()); x <= hi; ++x) out.push_back(x);
      return;
    }
    case K::Union: {
      std::vector<Int> merged;
      for (const auto& p : s.parts()) {
        std::vector<Int> part;
        materialize_into(p, lo, hi, part);
        std::vector<Int> next;
        next.reserve(merged.size() + part.size());
        std::set_union(merged.begin(), merged.end(), part.begin(), part.end(),
                       std::back_inserter(next));
        merged.swap(next);
      }
      out.insert(out.end(), merged.begin(), merged.end());
      return;
    }
    case K::Intersection: {
      std::vector<Int> first;
      materialize_into(s.parts().front(), lo, hi, first);
      for (const auto& x : first) {
        bool keep = true;
        for (std::size_t i = 1; i < s.parts().size() && keep; ++i) keep = s.parts()[i].contains(x);
        if (keep) out.push_back(x);
      }
      return;
    }
    case K::Affine: {
      std::vector<Int> inner;
      if (s.unit() > 0) {
        materialize_into(s.inner(), lo - s.shift(), hi - s.shift(), inner);
        for (const auto& y : inner) out.push_back(y + s.shift());
      } else {
        materialize_into(s.inner(), s.shift() - hi, s.shift() - lo, inner);
        for (auto it = inner.rbegin(); it != inner.rend(); ++it) out.push_back(s.shift() - *it);
      }
      return;
    }
    case K::SignedPowersOfTwo: {
      std::vector<Int> v;
      if (lo <= 0 && 0 <= hi) v.push_back(0);
      const Int reach = std::max(abs(lo), abs(hi));
      for (Int p = 1; p <= reach; p *= 2) {
        if (p >= lo && p <= hi) v.push_back(p);
        if (-p >= lo && -p <= hi) v.push_back(-p);
      }
      sort_unique(v);
      out.insert(out.end(), v.begin(), v.end());
      return;
    }
  }
}

}  // namespace

std::vector<Int> materialize(const IntSet& set, const Window& w, const Limits& limits) {
  if (w.size() > limits.max_window) {
    throw SizeCapError("window " + to_string(w) + " exceeds cap of " + limits.max_window.str() +
                       " points");
  }
  std::vector<Int> out;
  materialize_into(set, w.lo, w.hi, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

bool is_all(const IntSet& s) {
  return s.kind() == IntSet::Kind::Cofinite && s.values().empty();
}

bool is_lower_half_line(const IntSet& s) {
  return s.kind() == IntSet::Kind::Affine && s.unit() == -1 &&
         s.inner().kind() == IntSet::Kind::HalfTail && s.inner().threshold() == 0;
}

// Minimal period of a residue set modulo m.
Int minimal_period(const Int& m, const std::vector<Int>& residues) {
  Int period = m;
  const Int& r0 = residues.front();
  for (const auto& r : residues) {
    const Int t = floor_mod(r - r0, m);
    if (t == 0) continue;
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

// Canonical cofinite leaf: a contiguous odd-length exclusion becomes a Tail.
IntSet canonical_cofinite(std::vector<Int> excluded) {
  sort_unique(excluded);
  if (excluded.empty()) return IntSet::all();
  const Int count = excluded.back() - excluded.front() + 1;
  if (count == Int(excluded.size()) && (count % 2) == 1) {
    const Int center = (excluded.front() + excluded.back()) / 2;
    return IntSet::tail(center, (count + 1) / 2);
  }
  return IntSet::cofinite(std::move(excluded));
}

IntSet canonical_congruence(const Int& m, std::vector<Int> residues, const Limits& limits) {
  (void)limits;
  sort_unique(residues);
  if (residues.empty()) return IntSet::empty();
  const Int d = minimal_period(m, residues);
  if (d != m) {
    std::vector<Int> reduced;
    for (const auto& r : residues) {
      if (r < d) reduced.push_back(r);
    }
    residues = std::move(reduced);
  }
  if (d == 1 || Int(residues.size()) == d) return IntSet::all();
  return IntSet::congruence(d, std::move(residues));
}

std::vector<Int> lift_residues(const Int& m, const std::vector<Int>& residues, const Int& target) {
  std::vector<Int> out;
  for (Int block = 0; block < target; block += m) {
    for (const auto& r : residues) out.push_back(block + r);
  }
  sort_unique(out);
  return out;
}

std::vector<Int> range_list(const Int& lo, const Int& hi) {
  std::vector<Int> v;
  for (Int x = lo; x <= hi; ++x) v.push_back(x);
  return v;
}

// Excluded region of a cofinite-type leaf. Either an explicit list, or the
// closed run [lo, hi] of integers (possibly empty when lo > hi).
struct Exclusion {
  bool is_run = false;
  Int lo, hi;
  std::vector<Int> list;

  Int run_size() const { return lo > hi ? Int(0) : Int(hi - lo + 1); }
};

Exclusion exclusion_of(const IntSet& s) {
  Exclusion e;
  if (s.kind() == IntSet::Kind::Tail) {
    e.is_run = true;
    e.lo = s.center() - s.radius() + 1;
    e.hi = s.center() + s.radius() - 1;
  } else {
    e.list = s.values();
  }
  return e;
}

IntSet leaf_from_exclusion(const Exclusion& e, const Limits& limits) {
  if (!e.is_run) return canonical_cofinite(e.list);
  if (e.lo > e.hi) return IntSet::all();
  const Int n = e.run_size();
  if (n % 2 == 1) return IntSet::tail((e.lo + e.hi) / 2, (n + 1) / 2);
  if (n <= limits.max_explicit_run) return IntSet::cofinite(range_list(e.lo, e.hi));
  // Even-length huge run: an odd tail plus one more excluded point on the right.
  return IntSet::intersect({IntSet::tail((e.lo + e.hi - 1) / 2, n / 2), IntSet::cofinite({e.hi})});
}

IntSet apply_affine(int unit, const Int& shift, const IntSet& s, const Limits& limits);
IntSet union_rewrite(std::vector<IntSet> parts, const Limits& limits);
IntSet intersection_rewrite(std::vector<IntSet> parts, const Limits& limits);

IntSet normalize_leaf(const IntSet& s, const Limits& limits) {
  using K = IntSet::Kind;
  switch (s.kind()) {
    case K::Finite:
      return s.values().empty() ? IntSet::empty() : s;
    case K::Cofinite:
      return canonical_cofinite(s.values());
    case K::Congruence:
      return canonical_congruence(s.modulus(), s.values(), limits);
    default:
      return s;
  }
}

IntSet apply_affine(int unit, const Int& shift, const IntSet& s, const Limits& limits) {
  using K = IntSet::Kind;
  if (unit == 1 && shift == 0) return s;
  auto map = [&](const Int& x) { return Int(x * unit + shift); };
  switch (s.kind()) {
    case K::Empty:
      return s;
    case K::Finite:
    case K::Cofinite: {
      std::vector<Int> v;
      v.reserve(s.values().size());
      for (const auto& x : s.values()) v.push_back(map(x));
      return normalize_leaf(s.kind() == K::Finite ? IntSet::finite(std::move(v))
                                                  : IntSet::cofinite(std::move(v)),
                            limits);
    }
    case K::Congruence: {
      std::vector<Int> v;
      for (const auto& r : s.values()) v.push_back(map(r));
      return canonical_congruence(s.modulus(), std::move(v), limits);
    }
    case K::Tail:
      return IntSet::tail(map(s.center()), s.radius());
    case K::HalfTail:
      if (unit == 1) return IntSet::half_tail(s.threshold() + shift);
      return IntSet::lower_half_line(shift - s.threshold());
    case K::SignedPowersOfTwo:
      return shift == 0 ? s : IntSet::affine(1, shift, s);
    case K::Affine: {
      // unit * (u' y + t') + shift
      const int u = unit * s.unit();
      const Int t = s.shift() * unit + shift;
      if (s.inner().kind() == K::HalfTail || s.inner().kind() == K::SignedPowersOfTwo) {
        return apply_affine(u, t, s.inner(), limits);
      }
      return apply_affine(u, t, s.inner(), limits);
    }
    case K::Union:
    case K::Intersection: {
      std::vector<IntSet> mapped;
      for (const auto& p : s.parts()) mapped.push_back(apply_affine(unit, shift, p, limits));
      return s.kind() == K::Union ? union_rewrite(std::move(mapped), limits)
                                  : intersection_rewrite(std::move(mapped), limits);
    }
  }
  return s;
}

void sort_parts(std::vector<IntSet>& parts) {
  std::sort(parts.begin(), parts.end(),
            [](const IntSet& a, const IntSet& b) { return compare(a, b) < 0; });
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
}

IntSet union_rewrite(std::vector<IntSet> input, const Limits& limits) {
  using K = IntSet::Kind;
  std::vector<IntSet> flat;
  std::function<void(const IntSet&)> flatten = [&](const IntSet& p) {
    if (p.kind() == K::Union) {
      for (const auto& q : p.parts()) flatten(q);
    } else if (p.kind() != K::Empty) {
      flat.push_back(p);
    }
  };
  for (const auto& p : input) flatten(p);
  if (flat.empty()) return IntSet::empty();

  std::vector<Int> finite;
  std::vector<IntSet> congruences;
  std::vector<Exclusion> exclusions;
  std::optional<Int> half;   // union of HalfTails: x >= *half
  std::optional<Int> lower;  // union of lower half lines: x <= *lower
  std::vector<IntSet> others;

  for (const auto& p : flat) {
    switch (p.kind()) {
      case K::Finite:
        finite.insert(finite.end(), p.values().begin(), p.values().end());
        break;
      case K::Congruence:
        congruences.push_back(p);
        break;
      case K::Cofinite:
      case K::Tail:
        exclusions.push_back(exclusion_of(p));
        break;
      case K::HalfTail:
        half = half ? std::min(*half, p.threshold()) : p.threshold();
        break;
      default:
        if (is_lower_half_line(p)) {
          lower = lower ? std::max(*lower, p.shift()) : p.shift();
        } else {
          others.push_back(p);
        }
    }
  }
  sort_unique(finite);

  // Residue classes fold into one congruence when the lcm stays in range.
  if (congruences.size() > 1) {
    Int m = 1;
    for (const auto& c : congruences) m = lcm(m, c.modulus());
    if (m <= limits.max_modulus) {
      std::vector<Int> residues;
      for (const auto& c : congruences) {
        auto lifted = lift_residues(c.modulus(), c.values(), m);
        residues.insert(residues.end(), lifted.begin(), lifted.end());
      }
      congruences = {canonical_congruence(m, std::move(residues), limits)};
    }
  }
  for (auto& c : congruences) {
    if (is_all(c)) return IntSet::all();
  }

  // Two half lines are cofinite: Z minus [lower+1, half-1].
  if (half && lower) {
    Exclusion e;
    e.is_run = true;
    e.lo = *lower + 1;
    e.hi = *half - 1;
    exclusions.push_back(e);
    half.reset();
    lower.reset();
  }

  if (!exclusions.empty()) {
    // Union of cofinite sets excludes the intersection of the exclusions.
    Exclusion acc = exclusions.front();
    for (std::size_t i = 1; i < exclusions.size(); ++i) {
      const Exclusion& e = exclusions[i];
      if (acc.is_run && e.is_run) {
        acc.lo = std::max(acc.lo, e.lo);
        acc.hi = std::min(acc.hi, e.hi);
      } else if (acc.is_run) {
        std::vector<Int> kept;
        for (const auto& x : e.list) {
          if (x >= acc.lo && x <= acc.hi) kept.push_back(x);
        }
        acc = Exclusion{};
        acc.list = std::move(kept);
      } else {
        std::vector<Int> kept;
        for (const auto& x : acc.list) {
          if (e.is_run ? (x >= e.lo && x <= e.hi)
                       : std::binary_search(e.list.begin(), e.list.end(), x)) {
            kept.push_back(x);
          }
        }
        acc.list = std::move(kept);
      }
    }
    // Half lines trim a run from one side; it stays a run.
    if (half) {
      if (acc.is_run) {
        acc.hi = std::min(acc.hi, Int(*half - 1));
      } else {
        std::erase_if(acc.list, [&](const Int& x) { return x >= *half; });
      }
      half.reset();
    }
    if (lower) {
      if (acc.is_run) {
        acc.lo = std::max(acc.lo, Int(*lower + 1));
      } else {
        std::erase_if(acc.list, [&](const Int& x) { return x <= *lower; });
      }
      lower.reset();
    }
    if (acc.is_run && !finite.empty() && acc.run_size() <= limits.max_explicit_run) {
      acc.list = acc.lo > acc.hi ? std::vector<Int>{} : range_list(acc.lo, acc.hi);
      acc.is_run = false;
    }
    if (!acc.is_run) {
      // Explicit exclusion lists absorb every other part.
      std::vector<Int> kept;
      for (const auto& x : acc.list) {
        bool covered = std::binary_search(finite.begin(), finite.end(), x);
        for (const auto& c : congruences) covered = covered || c.contains(x);
        for (const auto& o : others) covered = covered || o.contains(x);
        if (!covered) kept.push_back(x);
      }
      return canonical_cofinite(std::move(kept));
    }
    if (acc.lo > acc.hi) return IntSet::all();
    std::erase_if(finite, [&](const Int& x) { return x < acc.lo || x > acc.hi; });
    others.push_back(leaf_from_exclusion(acc, limits));
  }
  if (half) others.push_back(IntSet::half_tail(*half));
  if (lower) others.push_back(IntSet::lower_half_line(*lower));

  std::vector<IntSet> parts;
  for (auto& c : congruences) parts.push_back(c);
  for (auto& o : others) parts.push_back(o);
  // Drop finite elements already covered by another part.
  std::erase_if(finite, [&](const Int& x) {
    return std::any_of(parts.begin(), parts.end(), [&](const IntSet& p) { return p.contains(x); });
  });
  if (!finite.empty()) parts.push_back(IntSet::finite(std::move(finite)));
  sort_parts(parts);
  if (parts.empty()) return IntSet::empty();
  if (parts.size() == 1) return parts.front();
  return IntSet::unite(std::move(parts));
}

IntSet intersection_rewrite(std::vector<IntSet> input, const Limits& limits) {
  using K = IntSet::Kind;
  std::vector<IntSet> flat;
  std::function<void(const IntSet&)> flatten = [&](const IntSet& p) {
    if (p.kind() == K::Intersection) {
      for (const auto& q : p.parts()) flatten(q);
    } else if (!is_all(p)) {
      flat.push_back(p);
    }
  };
  for (const auto& p : input) flatten(p);
  for (const auto& p : flat) {
    if (p.kind() == K::Empty) return IntSet::empty();
  }
  if (flat.empty()) return IntSet::all();
  sort_parts(flat);
  if (flat.size() == 1) return flat.front();

  // A finite part decides everything by filtering.
  for (const auto& p : flat) {
    if (p.kind() != K::Finite) continue;
    std::vector<Int> kept;
    for (const auto& x : p.values()) {
      if (std::all_of(flat.begin(), flat.end(), [&](const IntSet& q) { return q.contains(x); })) {
        kept.push_back(x);
      }
    }
    return kept.empty() ? IntSet::empty() : IntSet::finite(std::move(kept));
  }

  // Common parts of unions factor out: (C u X_1) n (C u X_2) = C u (X_1 n X_2).
  {
    auto as_parts = [](const IntSet& p) {
      return p.kind() == K::Union ? p.parts() : std::vector<IntSet>{p};
    };
    std::vector<IntSet> common = as_parts(flat.front());
    for (std::size_t i = 1; i < flat.size(); ++i) {
      const auto other = as_parts(flat[i]);
      std::erase_if(common, [&](const IntSet& c) {
        return std::find(other.begin(), other.end(), c) == other.end();
      });
    }
    if (!common.empty()) {
      std::vector<IntSet> rests;
      bool some_rest_empty = false;
      for (const auto& p : flat) {
        auto rest = as_parts(p);
        std::erase_if(rest, [&](const IntSet& c) {
          return std::find(common.begin(), common.end(), c) != common.end();
        });
        if (rest.empty()) {
          some_rest_empty = true;
          break;
        }
        rests.push_back(rest.size() == 1 ? rest.front() : IntSet::unite(std::move(rest)));
      }
      std::vector<IntSet> parts = common;
      if (!some_rest_empty) parts.push_back(intersection_rewrite(std::move(rests), limits));
      return union_rewrite(std::move(parts), limits);
    }
  }

  std::vector<IntSet> congruences;
  std::vector<Exclusion> exclusions;
  std::optional<Int> half;
  std::optional<Int> lower;
  std::vector<IntSet> others;
  for (const auto& p : flat) {
    switch (p.kind()) {
      case K::Congruence:
        congruences.push_back(p);
        break;
      case K::Cofinite:
      case K::Tail:
        exclusions.push_back(exclusion_of(p));
        break;
      case K::HalfTail:
        half = half ? std::max(*half, p.threshold()) : p.threshold();
        break;
      default:
        if (is_lower_half_line(p)) {
          lower = lower ? std::min(*lower, p.shift()) : p.shift();
        } else {
          others.push_back(p);
        }
    }
  }

  if (congruences.size() > 1) {
    Int m = 1;
    for (const auto& c : congruences) m = lcm(m, c.modulus());
    if (m <= limits.max_modulus) {
      std::vector<Int> acc = lift_residues(congruences.front().modulus(),
                                           congruences.front().values(), m);
      for (std::size_t i = 1; i < congruences.size(); ++i) {
        const auto lifted = lift_residues(congruences[i].modulus(), congruences[i].values(), m);
        std::vector<Int> next;
        std::set_intersection(acc.begin(), acc.end(), lifted.begin(), lifted.end(),
                              std::back_inserter(next));
        acc.swap(next);
      }
      if (acc.empty()) return IntSet::empty();
      congruences = {canonical_congruence(m, std::move(acc), limits)};
    }
  }

  if (half && lower) {
    if (*lower < *half) return IntSet::empty();
    if (*lower - *half + 1 <= limits.max_explicit_run) {
      std::vector<IntSet> rest = congruences;
      rest.insert(rest.end(), others.begin(), others.end());
      for (const auto& e : exclusions) rest.push_back(leaf_from_exclusion(e, limits));
      rest.push_back(IntSet::finite(range_list(*half, *lower)));
      return intersection_rewrite(std::move(rest), limits);
    }
  }

  std::vector<IntSet> parts;
  if (!exclusions.empty()) {
    // Intersection of cofinite sets excludes the union of the exclusions.
    std::vector<Exclusion> runs;
    std::vector<Int> list;
    for (auto e : exclusions) {
      if (e.is_run && e.run_size() <= limits.max_explicit_run) {
        e.list = e.lo > e.hi ? std::vector<Int>{} : range_list(e.lo, e.hi);
        e.is_run = false;
      }
      if (e.is_run) {
        runs.push_back(e);
      } else {
        list.insert(list.end(), e.list.begin(), e.list.end());
      }
    }
    std::sort(runs.begin(), runs.end(), [](const Exclusion& a, const Exclusion& b) {
      return a.lo < b.lo;
    });
    std::vector<Exclusion> merged;
    for (const auto& r : runs) {
      if (!merged.empty() && r.lo <= merged.back().hi + 1) {
        merged.back().hi = std::max(merged.back().hi, r.hi);
      } else {
        merged.push_back(r);
      }
    }
    sort_unique(list);
    std::erase_if(list, [&](const Int& x) {
      return std::any_of(merged.begin(), merged.end(),
                         [&](const Exclusion& r) { return x >= r.lo && x <= r.hi; });
    });
    // A list point adjacent to a run extends it.
    for (auto& r : merged) {
      bool grew = true;
      while (grew) {
        grew = false;
        auto it = std::lower_bound(list.begin(), list.end(), r.hi + 1);
        if (it != list.end() && *it == r.hi + 1) {
          r.hi += 1;
          list.erase(it);
          grew = true;
        }
        it = std::lower_bound(list.begin(), list.end(), r.lo - 1);
        if (it != list.end() && *it == r.lo - 1) {
          r.lo -= 1;
          list.erase(it);
          grew = true;
        }
      }
    }
    // Exclusions below a HalfTail threshold (or above a lower bound) are moot.
    auto moot = [&](const Int& lo, const Int& hi) {
      return (half && hi < *half) || (lower && lo > *lower);
    };
    std::erase_if(list, [&](const Int& x) { return moot(x, x); });
    std::erase_if(merged, [&](const Exclusion& r) { return moot(r.lo, r.hi); });
    if (!list.empty()) parts.push_back(canonical_cofinite(std::move(list)));
    for (const auto& r : merged) parts.push_back(leaf_from_exclusion(r, limits));
  }
  for (auto& c : congruences) parts.push_back(c);
  if (half) parts.push_back(IntSet::half_tail(*half));
  if (lower) parts.push_back(IntSet::lower_half_line(*lower));
  for (auto& o : others) parts.push_back(o);
  std::erase_if(parts, is_all);
  sort_parts(parts);
  if (parts.empty()) return IntSet::all();
  if (parts.size() == 1) return parts.front();
  return IntSet::intersect(std::move(parts));
}

IntSet normalize_rec(const IntSet& s, const Limits& limits) {
  using K = IntSet::Kind;
  switch (s.kind()) {
    case K::Union: {
      std::vector<IntSet> parts;
      for (const auto& p : s.parts()) parts.push_back(normalize_rec(p, limits));
      return union_rewrite(std::move(parts), limits);
    }
    case K::Intersection: {
      std::vector<IntSet> parts;
      for (const auto& p : s.parts()) parts.push_back(normalize_rec(p, limits));
      return intersection_rewrite(std::move(parts), limits);
    }
    case K::Affine:
      return apply_affine(s.unit(), s.shift(), normalize_rec(s.inner(), limits), limits);
    default:
      return normalize_leaf(s, limits);
  }
}

}  // namespace

IntSet normalize(const IntSet& set, const Limits& limits) {
  // Rewrites can expose new merges (an affine image of a union, a factored
  // intersection), so iterate to the fixed point; every pass is exact.
  IntSet current = normalize_rec(set, limits);
  for (int pass = 0; pass < 8; ++pass) {
    IntSet next = normalize_rec(current, limits);
    if (next == current) return current;
    current = std::move(next);
  }
  return current;
}

IntSet intersect_truncated(std::span<const IntSet> sets, const Limits& limits) {
  if (sets.empty()) throw DomainError("intersect_truncated needs a nonempty list");
  return normalize(IntSet::intersect(std::vector<IntSet>(sets.begin(), sets.end())), limits);
}

}  // namespace hsets
