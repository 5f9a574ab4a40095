#include "hsets/sumset.hpp"

#include <algorithm>
#include <map>

#include "hsets/convolution.hpp"
#include "hsets/error.hpp"
#include "hsets/periodic.hpp"

namespace hsets {

namespace {

// Window points ordered by the witness rule.
std::vector<Int> witness_order(const Window& w) {
  std::vector<Int> pts;
  for (Int x = w.lo; x <= w.hi; ++x) pts.push_back(x);
  std::sort(pts.begin(), pts.end(), closer_to_zero);
  return pts;
}

void check_window(const Window& w, const Limits& limits) {
  if (w.size() > limits.max_window) throw SizeCapError("window exceeds cap: " + to_string(w));
}

std::vector<Int> signed_divisors(const Int& x) {
  Int n = abs(x);
  if (n > Int(1) << 40) throw SizeCapError("divisor enumeration limited to |x| <= 2^40");
  std::vector<Int> pos;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      pos.push_back(d);
      pos.push_back(n / d);
    }
  }
  std::vector<Int> out;
  for (const auto& d : pos) {
    out.push_back(d);
    out.push_back(-d);
  }
  sort_unique(out);
  return out;
}

// Number of ordered h-tuples of members of `set` with product x (x != 0).
Int count_products(const IntSet& set, int h, const Int& x) {
  const auto divs = signed_divisors(x);
  std::map<Int, Int> f;
  for (const auto& y : divs) f[y] = set.contains(y) ? 1 : 0;
  std::vector<Int> in_set;
  for (const auto& d : divs) {
    if (set.contains(d)) in_set.push_back(d);
  }
  for (int k = 2; k <= h; ++k) {
    std::map<Int, Int> g;
    for (const auto& y : divs) {
      Int total = 0;
      for (const auto& d : in_set) {
        if (y % d == 0) {
          auto it = f.find(y / d);
          if (it != f.end()) total += it->second;
        }
      }
      g[y] = total;
    }
    f = std::move(g);
  }
  return f[x];
}

}  // namespace

bool WindowedSum::has(const Int& x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

Membership3 WindowedSum::membership(const Int& x) const {
  if (has(x)) return Membership3::in();
  if (complete && window.contains(x)) return Membership3::out();
  return Membership3::out_up_to(generation_radius);
}

Membership3 SumsetResult::membership(const Int& x) const {
  if (is_closed()) return closed().contains(x) ? Membership3::in() : Membership3::out();
  return windowed().membership(x);
}

std::vector<Int> SumsetResult::members_in(const Window& w, const Limits& limits) const {
  if (is_closed()) return materialize(closed(), w, limits);
  std::vector<Int> out;
  for (const auto& x : windowed().members) {
    if (w.contains(x)) out.push_back(x);
  }
  return out;
}

std::optional<IntSet> closed_hfold_sum(const IntSet& set, int h, const Limits& limits) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (h == 1) return normalize(set, limits);
  try {
    auto p = PeriodicSet::compile(set, limits);
    if (!p) return std::nullopt;
    return p->hfold(h, limits).to_intset(limits);
  } catch (const SizeCapError&) {
    return std::nullopt;
  }
}

SumsetResult symbolic_hfold_sum(const IntSet& set, int h, const SumsetOptions& options) {
  if (auto closed = closed_hfold_sum(set, h, options.limits)) return SumsetResult(*closed);
  if (!options.fallback_window) {
    throw ConfigError("no closed form for " + to_string(set) + " and no fallback window given");
  }
  const Int radius = options.fallback_radius.value_or(options.fallback_window->radius());
  return windowed_hfold_sum(set, h, *options.fallback_window, radius, options);
}

bool window_sum_is_complete(const IntSet& set, int h, const Window& w, const Int& gen_radius) {
  if (h == 1) return true;
  const auto lo = provable_min(set);
  const auto hi = provable_max(set);
  if (!lo && !hi) {
    // An empty set has no bounds but trivially complete sums.
    return set.kind() == IntSet::Kind::Empty;
  }
  // Every summand of a set inside [-R, R] is generated.
  if (lo && hi && -gen_radius <= *lo && *hi <= gen_radius) return true;
  const Int k = h - 1;
  if (lo && -gen_radius <= *lo && w.hi - k * *lo <= gen_radius) return true;
  if (hi && *hi <= gen_radius && k * *hi - w.lo <= gen_radius) return true;
  return false;
}

SumsetResult windowed_hfold_sum(const IntSet& set, int h, const Window& w, const Int& gen_radius,
                                const SumsetOptions& options) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (gen_radius < w.radius()) {
    throw ConfigError("generation radius " + gen_radius.str() + " is below the window radius " +
                      w.radius().str());
  }
  check_window(w, options.limits);
  const Window gen = Window::symmetric(gen_radius);
  const auto base = OffsetBitset::from_members(materialize(set, gen, options.limits));
  const auto sums = hfold_clipped(base, h, to_i64(w.lo), to_i64(w.hi));
  WindowedSum out{w, sums.members(), gen_radius, window_sum_is_complete(set, h, w, gen_radius)};
  if (!out.complete && options.symbolic_confirm) {
    if (auto closed = closed_hfold_sum(set, h, options.limits)) {
      out.complete = materialize(*closed, w, options.limits) == out.members;
    }
  }
  return SumsetResult(std::move(out));
}

std::string RepCount::to_string() const {
  if (infinite) return "infinite";
  return (lower_bound ? ">=" : "") + value.str();
}

RepCount representation_count(const IntSet& set, int h, const Int& x, RepMode mode,
                              const Int& gen_radius, const Limits& limits) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (mode == RepMode::Multiplicative) {
    if (x == 0) throw DomainError("multiplicative representation of 0 is undefined in Z*");
    if (set.contains(0)) throw DomainError("multiplicative mode requires 0 not in the set");
    return RepCount{count_products(set, h, x), false, false};
  }
  if (h == 1) return RepCount{set.contains(x) ? Int(1) : Int(0), false, false};
  if (set.kind() == IntSet::Kind::Finite) return RepCount{count_tuples(set.values(), h, x), false, false};

  auto compiled = PeriodicSet::try_compile(set, limits);
  if (compiled) {
    const auto progs = compiled->progressions();
    const Int& L = compiled->modulus();
    std::optional<PeriodicSet> rest;
    if (h > 2) rest = compiled->hfold(h - 2, limits);
    // Infinitely many representations iff an up-unbounded and a
    // down-unbounded progression can both be used: u + d + rest = x, and
    // (u + kL, d - kL) keeps the sum.
    for (const auto& up : progs) {
      if (up.last) continue;
      for (const auto& down : progs) {
        if (down.first) continue;
        const Int need = floor_mod(x - up.residue - down.residue, L);
        bool hit = false;
        if (h == 2) {
          hit = need == 0;
        } else {
          auto cls = PeriodicSet::compile(IntSet::congruence(L, {need}), limits);
          hit = !rest->intersect(*cls, limits).is_empty();
        }
        if (hit) return RepCount{0, true, false};
      }
    }
    // Otherwise no representation mixes the two unbounded directions, so
    // every summand lies within |x| + (h-1)*M0 of zero.
    Int m0 = 0;
    for (const auto& p : progs) {
      if (p.first) m0 = std::max(m0, abs(*p.first));
      if (p.last) m0 = std::max(m0, abs(*p.last));
    }
    const Int bound = abs(x) + (h - 1) * m0;
    const auto elements = compiled->materialize(Window::symmetric(bound), limits);
    return RepCount{count_tuples(elements, h, x), false, false};
  }

  if (set.kind() == IntSet::Kind::SignedPowersOfTwo && naf_weight(x) <= h - 2) {
    // x = y + 2^i - 2^i for every i.
    return RepCount{0, true, false};
  }
  const auto lo = provable_min(set);
  const auto hi = provable_max(set);
  Window range = Window::symmetric(gen_radius);
  bool exact = false;
  if (lo) {
    range = Window(*lo, std::max<Int>(*lo, x - (h - 1) * *lo));
    exact = true;
  } else if (hi) {
    range = Window(std::min<Int>(*hi, x - (h - 1) * *hi), *hi);
    exact = true;
  }
  const auto elements = materialize(set, range, limits);
  return RepCount{count_tuples(elements, h, x), false, !exact};
}

SumsetResult hfold_product(const IntSet& set, int h, const Window& w, const Limits& limits) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (set.contains(0)) throw DomainError("product sets require 0 not in the set");
  check_window(w, limits);
  std::vector<Int> members;
  for (Int x = w.lo; x <= w.hi; ++x) {
    if (x != 0 && count_products(set, h, x) > 0) members.push_back(x);
  }
  return SumsetResult(WindowedSum{w, std::move(members), w.radius(), true});
}

int naf_weight(const Int& x) {
  Int n = x;
  int weight = 0;
  while (n != 0) {
    if (n % 2 != 0) {
      // Digit +-1 chosen so that the remainder becomes divisible by 4.
      const Int digit = 2 - floor_mod(n, 4);
      n -= digit;
      ++weight;
    }
    n /= 2;
  }
  return weight;
}

std::string to_string(BasisVerdict::Kind kind) {
  switch (kind) {
    case BasisVerdict::Kind::Full:
      return "full";
    case BasisVerdict::Kind::CoversWindow:
      return "covers-window";
    case BasisVerdict::Kind::Missing:
      return "missing";
    case BasisVerdict::Kind::Undetermined:
      return "undetermined";
  }
  return "?";
}

BasisReport basis_order(const IntSet& set, int h_max, const Window& w, const Int& gen_radius,
                        const BasisOptions& options) {
  if (h_max < 1) throw DomainError("h_max must be >= 1");
  const Limits& limits = options.sums.limits;
  check_window(w, limits);
  const auto order = witness_order(w);
  BasisReport report;
  for (int h = 1; h <= h_max; ++h) {
    BasisVerdict v;
    v.h = h;
    if (options.power_of_two_rule && set.kind() == IntSet::Kind::SignedPowersOfTwo) {
      v.kind = BasisVerdict::Kind::CoversWindow;
      v.evidence = "naf-weight rule";
      for (const auto& x : order) {
        if (naf_weight(x) > h) {
          v.kind = BasisVerdict::Kind::Missing;
          v.witness = x;
          break;
        }
      }
      report.verdicts.push_back(std::move(v));
      continue;
    }
    if (auto closed = closed_hfold_sum(set, h, limits)) {
      auto p = PeriodicSet::try_compile(*closed, limits);
      if (p) {
        const auto missing = p->complement();
        v.evidence = "closed form " + to_string(*closed);
        if (missing.is_empty()) {
          v.kind = BasisVerdict::Kind::Full;
        } else {
          v.kind = BasisVerdict::Kind::CoversWindow;
          v.outside_witness = missing.nearest_member();
          for (const auto& x : order) {
            if (missing.contains(x)) {
              v.kind = BasisVerdict::Kind::Missing;
              v.witness = x;
              break;
            }
          }
        }
        report.verdicts.push_back(std::move(v));
        continue;
      }
    }
    const auto ws = windowed_hfold_sum(set, h, w, gen_radius, options.sums).windowed();
    v.kind = BasisVerdict::Kind::CoversWindow;
    v.evidence = std::string("windowed sum, radius ") + gen_radius.str() +
                 (ws.complete ? ", complete" : ", incomplete");
    for (const auto& x : order) {
      if (!ws.has(x)) {
        v.kind = ws.complete ? BasisVerdict::Kind::Missing : BasisVerdict::Kind::Undetermined;
        v.witness = x;
        break;
      }
    }
    report.verdicts.push_back(std::move(v));
  }

  if (options.require_identity_for_order && !set.contains(0)) {
    report.order_note = "exact order not reported: 0 is not in the set";
    return report;
  }
  for (const auto& v : report.verdicts) {
    if (v.kind == BasisVerdict::Kind::Full) {
      report.exact_order = v.h;
      report.order_note = "hA = Z for every h >= " + std::to_string(v.h);
      break;
    }
    const bool certified_not_full = v.kind == BasisVerdict::Kind::Missing ||
                                    (v.kind == BasisVerdict::Kind::CoversWindow && v.outside_witness);
    if (!certified_not_full) {
      report.order_note = "order undetermined from h = " + std::to_string(v.h);
      break;
    }
  }
  if (!report.exact_order && report.order_note.empty()) {
    report.order_note = "no h <= " + std::to_string(h_max) + " gives hA = Z";
  }
  return report;
}

}  // namespace hsets
