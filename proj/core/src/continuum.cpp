#include "hsets/continuum.hpp"

#include <algorithm>
#include <set>

#include "hsets/error.hpp"

namespace hsets {

RationalPerturbFamily::RationalPerturbFamily(std::vector<Int> base, bool include_base, Int r_max)
    : base_(std::move(base)), include_base_(include_base), r_max_(std::move(r_max)) {
  if (base_.empty()) throw ConfigError("rational family needs at least one base point");
  if (base_.front() <= 1) throw ConfigError("b_1 > 1 violated: b_1 = " + base_.front().str());
  for (std::size_t i = 0; i + 1 < base_.size(); ++i) {
    if (base_[i + 1] <= base_[i] + 2) {
      throw ConfigError("b_(n+1) > b_n + 2 violated at n = " + std::to_string(i + 1) + ": " + base_[i].str() +
                        ", " + base_[i + 1].str());
    }
  }
  if (r_max_ < 1) throw ConfigError("r_max must be >= 1");
}

RationalPerturbFamily RationalPerturbFamily::linear(const Int& step, const Int& n_max, bool include_base,
                                                    Int r_max) {
  std::vector<Int> base;
  for (Int n = 1; n <= n_max; ++n) base.push_back(step * n);
  return RationalPerturbFamily(std::move(base), include_base, std::move(r_max));
}

std::vector<Rational> RationalPerturbFamily::perturbations(const Int& q) const {
  if (q < 1) throw InputError("q must be >= 1");
  std::vector<Rational> out;
  for (Int r = q; r <= r_max_; ++r) {
    out.emplace_back(Int(1), r);
    out.emplace_back(Int(-1), r);
  }
  if (include_base_) out.emplace_back(0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> rational_family_set(const RationalPerturbFamily& family, const Int& q) {
  const auto eps = family.perturbations(q);
  std::vector<Rational> out;
  for (const auto& b : family.base()) {
    for (const auto& e : eps) out.push_back(Rational(b) + e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Rational> rational_hfold(const std::vector<Rational>& points, int h) {
  if (h < 1) throw DomainError("h must be >= 1");
  std::set<Rational> acc(points.begin(), points.end());
  for (int k = 2; k <= h; ++k) {
    std::set<Rational> next;
    for (const auto& s : acc)
      for (const auto& p : points) next.insert(s + p);
    acc = std::move(next);
  }
  return {acc.begin(), acc.end()};
}

namespace {

// Sorted h-fold sums of integer base points inside [lo, hi].
std::vector<Int> base_sums_in(const std::vector<Int>& base, int h, const Rational& lo, const Rational& hi) {
  std::set<Int> acc(base.begin(), base.end());
  for (int k = 2; k <= h; ++k) {
    std::set<Int> next;
    for (const auto& s : acc)
      for (const auto& b : base) {
        // Base points are positive, so sums beyond hi never come back.
        if (Rational(s + b) <= hi) next.insert(s + b);
      }
    acc = std::move(next);
  }
  std::vector<Int> out;
  for (const auto& s : acc) {
    if (Rational(s) >= lo && Rational(s) <= hi) out.push_back(s);
  }
  return out;
}

}  // namespace

RationalTheoremReport verify_rational_theorem(const RationalPerturbFamily& family, int h, const Int& Q,
                                              const Rational& lo, const Rational& hi) {
  if (h < 2) throw ConfigError("rational theorem check needs h >= 2");
  if (!(Int(2 * h) < Q)) {
    throw ConfigError("2h < Q violated: h = " + std::to_string(h) + ", Q = " + Q.str());
  }
  if (family.r_max() < 2 * Q) {
    throw ConfigError("r_max >= 2Q needed for the zero-sum perturbation 1/q - 1/(2q) - 1/(2q)");
  }
  if (lo > hi) throw InputError("empty value window");
  // Every base point that can reach the window must be present.
  if (Rational(family.base().back() + (h - 1) * family.base().front()) < hi + h) {
    throw ConfigError("base points do not cover the value window; raise n_max");
  }
  RationalTheoremReport report;
  report.h = h;
  report.Q = Q;
  // hA_q = hB* + hR_q, and the family decreases in q, so T(Q) = hA_Q.
  // Work with numerators over the common denominator D = lcm(Q..r_max).
  Int D = 1;
  for (Int r = Q; r <= family.r_max(); ++r) D = lcm(D, r);
  std::vector<Int> eps;
  for (const auto& e : family.perturbations(Q)) {
    eps.push_back(boost::multiprecision::numerator(e) * (D / boost::multiprecision::denominator(e)));
  }
  std::vector<Int> perturb = eps;
  for (int k = 2; k <= h; ++k) {
    std::vector<Int> next;
    next.reserve(perturb.size() * eps.size());
    for (const auto& s : perturb)
      for (const auto& e : eps) next.push_back(s + e);
    sort_unique(next);
    perturb = std::move(next);
  }
  const auto sums = base_sums_in(family.base(), h, lo - h, hi + h);
  const Rational lo_scaled = lo * D;
  const Rational hi_scaled = hi * D;
  std::vector<Int> t;
  for (const auto& y : sums)
    for (const auto& s : perturb) {
      const Int x = y * D + s;
      if (Rational(x) >= lo_scaled && Rational(x) <= hi_scaled) t.push_back(x);
    }
  sort_unique(t);
  for (const auto& x : t) report.truncated.emplace_back(x, D);
  for (const auto& y : sums) {
    if (Rational(y) < lo || Rational(y) > hi) continue;
    report.base_sums.emplace_back(y);
    if (!std::binary_search(t.begin(), t.end(), Int(y * D))) report.missing_base_sums.emplace_back(y);
  }
  // Distance bound h/Q, scaled: |x - yD| <= hD/Q.
  const Int bound = Int(h) * D / Q;
  Int worst = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    Int best = -1;
    for (const auto& y : sums) {
      const Int d = abs(t[i] - y * D);
      if (best < 0 || d < best) best = d;
    }
    if (best != 0) ++report.off_base;
    worst = std::max(worst, best);
    if (best > bound) report.too_far.push_back(report.truncated[i]);
  }
  report.max_distance = Rational(worst, D);
  return report;
}

// ---------------------------------------------------------------------------
// Open intervals

IntervalUnion::IntervalUnion(std::vector<OpenInterval> parts) {
  std::erase_if(parts, [](const OpenInterval& i) { return !(i.lo < i.hi); });
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  for (auto& p : parts) {
    // Overlap needs a common interior point: next.lo < current.hi.
    if (!parts_.empty() && p.lo < parts_.back().hi) {
      parts_.back().hi = std::max(parts_.back().hi, p.hi);
    } else {
      parts_.push_back(std::move(p));
    }
  }
}

bool IntervalUnion::contains(const Rational& x) const {
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const OpenInterval& i) { return v < i.hi; });
  return it != parts_.end() && it->lo < x && x < it->hi;
}

IntervalUnion IntervalUnion::unite(const IntervalUnion& other) const {
  auto all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalUnion(std::move(all));
}

IntervalUnion IntervalUnion::intersect(const IntervalUnion& other) const {
  std::vector<OpenInterval> out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const auto& a = parts_[i];
    const auto& b = other.parts_[j];
    const Rational lo = std::max(a.lo, b.lo);
    const Rational hi = std::min(a.hi, b.hi);
    if (lo < hi) out.push_back({lo, hi});
    if (a.hi < b.hi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion(std::move(out));
}

IntervalUnion IntervalUnion::operator+(const IntervalUnion& other) const {
  std::vector<OpenInterval> out;
  for (const auto& a : parts_)
    for (const auto& b : other.parts_) out.push_back({a.lo + b.lo, a.hi + b.hi});
  return IntervalUnion(std::move(out));
}

std::string to_string(const IntervalUnion& u) {
  if (u.empty()) return "{}";
  std::string s;
  for (std::size_t i = 0; i < u.parts().size(); ++i) {
    if (i > 0) s += " u ";
    s += "(" + to_string(u.parts()[i].lo) + ", " + to_string(u.parts()[i].hi) + ")";
  }
  return s;
}

IntervalUnion minkowski_hfold(const IntervalUnion& u, int h) {
  if (h < 1) throw DomainError("h must be >= 1");
  IntervalUnion acc = u;
  for (int k = 2; k <= h; ++k) acc = acc + u;
  return acc;
}

IntervalUnion open_family_set(const std::vector<Int>& base, const Int& q, bool primed) {
  if (q < 1) throw InputError("q must be >= 1");
  const Rational eps(Int(1), q);
  std::vector<OpenInterval> parts;
  for (const auto& b : base) {
    const Rational c(b);
    if (primed) {
      parts.push_back({c - eps, c + eps});
    } else {
      parts.push_back({c - eps, c});
      parts.push_back({c, c + eps});
    }
  }
  return IntervalUnion(std::move(parts));
}

OpenTheoremReport verify_open_theorem(const std::vector<Int>& base, int h, const Int& Q, const Rational& lo,
                                      const Rational& hi, bool primed) {
  if (h < 1) throw ConfigError("h must be >= 1");
  if (Q < 1) throw ConfigError("Q must be >= 1");
  if (!(lo < hi)) throw InputError("empty value window");
  if (base.empty()) throw ConfigError("need at least one base point");
  if (base.front() <= 1) throw ConfigError("b_1 > 1 violated");
  for (std::size_t i = 0; i + 1 < base.size(); ++i) {
    if (base[i + 1] <= base[i] + 2) throw ConfigError("b_(n+1) > b_n + 2 violated");
  }
  OpenTheoremReport report;
  report.h = h;
  report.Q = Q;
  report.primed = primed;
  IntervalUnion t(std::vector<OpenInterval>{{lo, hi}});
  for (Int q = 1; q <= Q; ++q) t = t.intersect(minkowski_hfold(open_family_set(base, q, primed), h));
  report.truncated = t;

  const Rational radius(Int(h), Q);
  report.base_sums = base_sums_in(base, h, lo - h, hi + h);
  for (const auto& y : report.base_sums) {
    const Rational c(y);
    if (!(lo < c && c < hi)) continue;
    const bool in = t.contains(c);
    if ((primed || h >= 2) && !in) report.missing_base_sums.push_back(y);
    if (!primed && h == 1 && in) report.unexpected_base_sums.push_back(y);
  }
  for (const auto& part : t.parts()) {
    bool near = false;
    bool centered = false;
    for (const auto& y : report.base_sums) {
      const Rational c(y);
      if (part.lo >= c - radius && part.hi <= c + radius) near = true;
      if ((part.lo + part.hi) / 2 == c) centered = true;
    }
    if (!near) report.stray.push_back(part);
    const bool clipped = part.lo == lo || part.hi == hi;
    // For h = 1 without base points the pieces are punctured halves, so
    // only the primed or h >= 2 cases are expected to be centered.
    if ((primed || h >= 2) && !clipped && !centered) report.off_center.push_back(part);
  }
  return report;
}

}  // namespace hsets
