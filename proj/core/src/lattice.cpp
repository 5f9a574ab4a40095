#include "hsets/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hsets/error.hpp"

namespace hsets {

Int norm_sq(const Point& x) {
  Int s = 0;
  for (const auto& c : x) s += c * c;
  return s;
}

namespace {

Point add(const Point& a, const Point& b) {
  Point p(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + b[i];
  return p;
}

bool in_box(const Point& p, const std::vector<Window>& box) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!box[i].contains(p[i])) return false;
  }
  return true;
}

bool nonnegative(const Point& p) {
  return std::all_of(p.begin(), p.end(), [](const Int& c) { return c >= 0; });
}

void check_dimensions(const std::vector<Point>& points, std::size_t d) {
  for (const auto& p : points) {
    if (p.size() != d) throw DomainError("lattice points of mixed dimension");
  }
}

}  // namespace

LatticeSum lattice_hfold_sum(const std::vector<Point>& points, int h, const std::vector<Window>& box,
                             bool truncated_input, const Limits& limits) {
  if (h < 1) throw DomainError("h must be >= 1");
  LatticeSum out;
  if (points.empty()) return out;
  check_dimensions(points, box.size());
  Int cells = 1;
  for (const auto& w : box) cells *= w.size();
  if (cells > limits.max_window) throw SizeCapError("lattice box holds too many cells");
  const bool all_nonneg = std::all_of(points.begin(), points.end(), nonnegative);
  // With nonnegative summands a partial sum above the box never returns.
  auto keep = [&](const Point& p) {
    if (!all_nonneg) return true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > box[i].hi) return false;
    }
    return true;
  };
  std::set<Point> acc;
  for (const auto& p : points) {
    if (keep(p)) acc.insert(p);
  }
  for (int k = 2; k <= h; ++k) {
    std::set<Point> next;
    for (const auto& s : acc)
      for (const auto& p : points) {
        Point t = add(s, p);
        if (keep(t)) next.insert(std::move(t));
      }
    if (next.size() > limits.max_residues) throw SizeCapError("lattice sumset too large");
    acc = std::move(next);
  }
  for (const auto& p : acc) {
    if (in_box(p, box)) out.members.push_back(p);
  }
  out.complete = !truncated_input || all_nonneg;
  return out;
}

Int lattice_representation_count(const std::vector<Point>& points, int h, const Point& x) {
  if (h < 1) throw DomainError("h must be >= 1");
  check_dimensions(points, x.size());
  std::map<Point, Int> dp;
  dp[Point(x.size(), Int(0))] = 1;
  for (int k = 1; k <= h; ++k) {
    std::map<Point, Int> next;
    for (const auto& [s, c] : dp)
      for (const auto& p : points) next[add(s, p)] += c;
    dp = std::move(next);
  }
  auto it = dp.find(x);
  return it == dp.end() ? Int(0) : it->second;
}

Int nonnegative_representation_count(int h, const Point& x) {
  if (h < 1) throw DomainError("h must be >= 1");
  Int total = 1;
  for (const auto& c : x) {
    if (c < 0) return 0;
    // C(c + h - 1, h - 1)
    Int binom = 1;
    for (int i = 1; i < h; ++i) binom = binom * (c + i) / i;
    total *= binom;
  }
  return total;
}

MinNormCheck min_norm_inequality(const std::vector<Point>& vectors) {
  if (vectors.empty()) throw DomainError("need at least one vector");
  check_dimensions(vectors, vectors.front().size());
  Point sum(vectors.front().size(), Int(0));
  std::optional<Int> min_sq;
  for (const auto& v : vectors) {
    if (!nonnegative(v)) throw DomainError("vector " + to_string(v) + " has a negative coordinate");
    const Int n = norm_sq(v);
    if (n == 0) throw DomainError("zero vector not allowed");
    if (!min_sq || n < *min_sq) min_sq = n;
    sum = add(sum, v);
  }
  MinNormCheck out;
  out.sum_norm_sq = norm_sq(sum);
  out.k_min_norm_sq = Int(vectors.size()) * *min_sq;
  out.holds = out.sum_norm_sq >= out.k_min_norm_sq;
  return out;
}

NormTailFamily::NormTailFamily(std::vector<Point> core, Rational m_star_sq)
    : core_(std::move(core)), m_star_sq_(std::move(m_star_sq)) {
  if (core_.empty()) throw ConfigError("norm tail family needs a nonempty core");
  check_dimensions(core_, core_.front().size());
  std::sort(core_.begin(), core_.end());
  core_.erase(std::unique(core_.begin(), core_.end()), core_.end());
  for (const auto& a : core_) {
    if (Rational(norm_sq(a)) > m_star_sq_) {
      throw ConfigError("|a| <= m* violated for a = " + to_string(a));
    }
  }
  if (m_star_sq_ <= 0) throw ConfigError("m* must be positive");
}

bool NormTailFamily::in_tail(const Point& x, const Int& q) const {
  return nonnegative(x) && Rational(norm_sq(x)) >= Rational(4 * q * q) * m_star_sq_;
}

bool NormTailFamily::contains(const Point& x, const Int& q) const {
  return std::binary_search(core_.begin(), core_.end(), x) || in_tail(x, q);
}

Int NormTailFamily::certifying_q(const Point& x, int h) const {
  const Rational n(norm_sq(x));
  Int q = h / 2 + 1;  // smallest q with 2q > h
  while (Rational((2 * q - h) * (2 * q - h)) * m_star_sq_ <= n) ++q;
  return q;
}

std::vector<Point> nonnegative_ball(std::size_t d, const Int& radius) {
  std::vector<Point> out{Point{}};
  const Int r2 = radius * radius;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Point> next;
    for (const auto& p : out) {
      const Int used = norm_sq(p);
      for (Int c = 0; used + c * c <= r2; ++c) {
        Point t = p;
        t.push_back(c);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool LatticeReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const LatticeRow& r) { return r.certified; });
}

LatticeReport verify_lattice_theorem(const NormTailFamily& family, int h_max, const Int& Q, const Int& radius,
                                     const Limits& limits) {
  if (h_max < 1) throw DomainError("h_max must be >= 1");
  if (Q < 1) throw ConfigError("Q must be >= 1");
  const std::size_t d = family.dimension();
  for (const auto& a : family.core()) {
    if (!nonnegative(a)) throw ConfigError("core point " + to_string(a) + " is not in N_0^d");
  }
  const auto ball = nonnegative_ball(d, radius);
  const std::vector<Window> box(d, Window(0, radius));
  auto in_ball = [&](const Point& p) { return norm_sq(p) <= radius * radius; };
  auto restrict = [&](const std::vector<Point>& pts) {
    std::vector<Point> out;
    for (const auto& p : pts) {
      if (in_ball(p)) out.push_back(p);
    }
    return out;
  };

  LatticeReport report;
  report.Q = Q;
  report.radius = radius;
  for (int h = 1; h <= h_max; ++h) {
    LatticeRow row;
    row.h = h;
    row.ball_points = ball.size();
    const auto hA = restrict(lattice_hfold_sum(family.core(), h, box, false, limits).members);
    // Nonnegative summands of a ball point lie in the ball, so A_q may be cut there.
    std::optional<std::vector<Point>> t;
    for (Int q = 1; q <= Q; ++q) {
      std::vector<Point> aq;
      for (const auto& p : ball) {
        if (family.contains(p, q)) aq.push_back(p);
      }
      auto s = restrict(lattice_hfold_sum(aq, h, box, false, limits).members);
      if (!t) {
        t = std::move(s);
      } else {
        std::vector<Point> m;
        std::set_intersection(t->begin(), t->end(), s.begin(), s.end(), std::back_inserter(m));
        t = std::move(m);
      }
    }
    row.hA_points = hA.size();
    row.truncated_points = t->size();
    row.equal_on_ball = hA == *t;
    for (const auto& x : ball) row.max_certifying_q = std::max(row.max_certifying_q, family.certifying_q(x, h));
    for (const auto& x : *t) {
      if (std::binary_search(hA.begin(), hA.end(), x)) continue;
      if (family.certifying_q(x, h) > Q) {
        row.undetermined.push_back(x);
      } else {
        row.contradictions.push_back(x);
      }
    }
    row.certified = row.equal_on_ball && row.undetermined.empty() && row.contradictions.empty() &&
                    row.max_certifying_q <= Q;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hsets
