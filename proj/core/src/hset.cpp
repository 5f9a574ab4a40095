#include "hsets/hset.hpp"

#include <algorithm>

#include "hsets/error.hpp"
#include "hsets/group.hpp"
#include "hsets/periodic.hpp"
#include "hsets/sumset.hpp"

namespace hsets {

std::string to_string(HStatus status) {
  switch (status) {
    case HStatus::CertifiedIn:
      return "CertifiedIn";
    case HStatus::CertifiedOut:
      return "CertifiedOut";
    case HStatus::EmpiricalEqual:
      return "EmpiricalEqual";
    case HStatus::Undetermined:
      return "Undetermined";
  }
  return "?";
}

HStatus parse_status(const std::string& text) {
  for (auto s : {HStatus::CertifiedIn, HStatus::CertifiedOut, HStatus::EmpiricalEqual, HStatus::Undetermined}) {
    if (to_string(s) == text) return s;
  }
  throw InputError("unknown status '" + text + "'");
}

std::vector<HStatus> HReport::statuses() const {
  std::vector<HStatus> out;
  for (const auto& v : verdicts) out.push_back(v.status);
  return out;
}

std::vector<int> HReport::members() const {
  std::vector<int> out;
  for (const auto& v : verdicts) {
    if (v.status == HStatus::CertifiedIn || v.status == HStatus::EmpiricalEqual) out.push_back(v.h);
  }
  return out;
}

namespace {

using Axes = std::vector<std::vector<Int>>;

bool empty_product(const Axes& axes) {
  return std::any_of(axes.begin(), axes.end(), [](const auto& a) { return a.empty(); });
}

Int nearest_of(const std::vector<Int>& v) {
  Int best = v.front();
  for (const auto& x : v) {
    if (closer_to_zero(x, best)) best = x;
  }
  return best;
}

std::vector<Int> minus(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<Int> meet(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::optional<Point> nearest_point(const Axes& axes) {
  if (empty_product(axes)) return std::nullopt;
  Point p;
  for (const auto& a : axes) p.push_back(nearest_of(a));
  return p;
}

// A point of the product `big` that is not in the product `small`.
std::optional<Point> product_gap(const Axes& small, const Axes& big) {
  if (empty_product(big)) return std::nullopt;
  if (empty_product(small)) return nearest_point(big);
  for (std::size_t i = 0; i < big.size(); ++i) {
    const auto diff = minus(big[i], small[i]);
    if (diff.empty()) continue;
    Point p;
    for (std::size_t j = 0; j < big.size(); ++j) p.push_back(j == i ? nearest_of(diff) : nearest_of(big[j]));
    return p;
  }
  return std::nullopt;
}

bool product_equal(const Axes& a, const Axes& b) {
  if (empty_product(a) || empty_product(b)) return empty_product(a) && empty_product(b);
  return a == b;
}

Axes restrict_axes(const Axes& axes, const Window& w) {
  Axes out;
  for (const auto& a : axes) {
    std::vector<Int> r;
    for (const auto& x : a) {
      if (w.contains(x)) r.push_back(x);
    }
    out.push_back(std::move(r));
  }
  return out;
}

struct WindowSide {
  Axes axes;
  bool complete = true;
};

// ⋂_{q<=Q} hA_q on w, one axis per factor, from windowed sums.
WindowSide truncated_side(const Family& f, int h, const Int& Q, const Window& w, const Int& radius,
                          const Limits& limits) {
  Int last = Q;
  if (auto m = f.max_index()) last = std::min(last, *m);
  SumsetOptions opts;
  opts.limits = limits;
  opts.symbolic_confirm = true;
  WindowSide side;
  for (Int q = 1; q <= last; ++q) {
    const auto factors = f.product_at(q).factors;
    if (side.axes.empty()) side.axes.resize(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto ws = windowed_hfold_sum(factors[i], h, w, radius, opts).windowed();
      side.complete = side.complete && ws.complete;
      side.axes[i] = q == 1 ? ws.members : meet(side.axes[i], ws.members);
    }
  }
  return side;
}

struct Scale {
  Int step = 1;
  Int offset = 0;
};

Scale family_scale(const Family& f, int h) {
  using K = Family::Kind;
  switch (f.kind()) {
    case K::CosetTail:
      return {f.step(), abs(f.base())};
    case K::CongruenceChain:
    case K::Enumeration: {
      Int m = 0;
      for (const auto& a : f.core_points()) m = std::max(m, abs(a));
      return {1, m};
    }
    case K::Tail:
    case K::HalfTail: {
      Int m = 0;
      if (auto lo = provable_min(f.core())) m = std::max(m, abs(*lo));
      if (auto hi = provable_max(f.core())) m = std::max(m, abs(*hi));
      return {1, m};
    }
    case K::Affine: {
      Scale s = family_scale(f.inner(), h);
      s.offset += (h + 1) * abs(f.shift());
      return s;
    }
    case K::Product: {
      Scale s;
      for (const auto& g : f.factors()) {
        Scale t = family_scale(g, h);
        s.step = std::max(s.step, t.step);
        s.offset = std::max(s.offset, t.offset);
      }
      return s;
    }
    case K::Explicit:
      return {1, 0};
  }
  return {};
}

Int radius_for(const Family& f, int h, const Int& Q, const Window& w) {
  const Scale s = family_scale(f, h);
  return w.radius() + Int(h) * ((Q + 1) * s.step + s.offset);
}

std::vector<Int> exact_or_windowed(const IntSet& set, int h, const std::optional<IntSet>& closed,
                                   const Window& w, const Int& radius, const Limits& limits,
                                   bool& complete) {
  if (closed) return materialize(*closed, w, limits);
  SumsetOptions opts;
  opts.limits = limits;
  const auto ws = windowed_hfold_sum(set, h, w, radius, opts).windowed();
  complete = complete && ws.complete;
  return ws.members;
}

struct SymbolicOutcome {
  bool equal = false;
  std::optional<Point> witness;
  std::optional<Point> sample;
  bool target_empty = false;
};

// Compares hA with the certificate exactly; nullopt if some factor does not compile.
std::optional<SymbolicOutcome> symbolic_compare(const std::vector<IntSet>& cert,
                                                const std::vector<std::optional<IntSet>>& sums,
                                                const Limits& limits, std::string& problem) {
  std::vector<PeriodicSet> c, s;
  for (std::size_t i = 0; i < cert.size(); ++i) {
    if (!sums[i]) return std::nullopt;
    auto pc = PeriodicSet::try_compile(cert[i], limits);
    auto ps = PeriodicSet::try_compile(*sums[i], limits);
    if (!pc || !ps) return std::nullopt;
    c.push_back(std::move(*pc));
    s.push_back(std::move(*ps));
  }
  SymbolicOutcome out;
  try {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (!s[i].subset_of(c[i], limits) && !s[i].is_empty()) {
        problem = "hA is not contained in the certificate on factor " + std::to_string(i + 1);
        return std::nullopt;
      }
    }
    out.target_empty = std::any_of(c.begin(), c.end(), [](const PeriodicSet& p) { return p.is_empty(); });
    if (out.target_empty) {
      out.equal = true;
      return out;
    }
    Point sample;
    for (const auto& p : c) sample.push_back(*p.nearest_member());
    out.sample = sample;
    out.equal = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i].equals(s[i], limits)) continue;
      out.equal = false;
      Point w = sample;
      w[i] = *c[i].minus(s[i], limits).nearest_member();
      out.witness = std::move(w);
      break;
    }
  } catch (const SizeCapError&) {
    return std::nullopt;
  }
  return out;
}

HVerdict evaluate(const Family& family, int h, const HConfig& config) {
  const Limits& limits = config.limits;
  const Window& w = config.window;
  const Window w2 = w.doubled();
  const Int radius = config.gen_radius.value_or(radius_for(family, h, config.Q, w));
  const Int radius2 = config.gen_radius ? *config.gen_radius + w.radius()
                                        : radius_for(family, h, config.Q * 2, w2);

  HVerdict v;
  v.h = h;
  v.Q = config.Q;
  v.window = w;

  const auto limit = family.product_limit().factors;
  std::vector<std::optional<IntSet>> sums;
  for (const auto& a : limit) sums.push_back(closed_hfold_sum(a, h, limits));
  bool sums_complete = true;
  Axes hA2;
  for (std::size_t i = 0; i < limit.size(); ++i) {
    hA2.push_back(exact_or_windowed(limit[i], h, sums[i], w2, radius2, limits, sums_complete));
  }
  const Axes hA = restrict_axes(hA2, w);

  if (h == 1) {
    v.status = HStatus::CertifiedIn;
    v.evidence = "h = 1: the intersection of the A_q is A";
    std::string unused;
    if (auto s = symbolic_compare(limit, sums, limits, unused)) {
      v.sample_member = s->sample;
      v.target_empty = s->target_empty;
    } else {
      v.sample_member = nearest_point(hA);
    }
    return v;
  }

  // Certificate, validated against the truncated intersection on w.
  auto cert = tail_certificate(family, h, limits);
  const WindowSide truncQ = truncated_side(family, h, config.Q, w, radius, limits);
  std::string cert_note;
  if (cert) {
    cert_note = "certificate " + cert->provenance;
    Axes cert_w;
    for (const auto& c : cert->closed_form.factors) cert_w.push_back(materialize(c, w, limits));
    if (auto gap = product_gap(truncQ.axes, cert_w)) {
      cert_note = "certificate rejected: " + to_string(*gap) + " not found in the truncated intersection (" +
                  (truncQ.complete ? "complete" : "incomplete") + " windowed sums)";
      cert.reset();
    } else if (auto extra = product_gap(cert_w, hA)) {
      cert_note = "certificate rejected: hA point " + to_string(*extra) + " lies outside it";
      cert.reset();
    }
  }

  if (cert) {
    std::string problem;
    if (auto s = symbolic_compare(cert->closed_form.factors, sums, limits, problem)) {
      v.sample_member = s->sample;
      v.target_empty = s->target_empty;
      if (s->equal) {
        v.status = HStatus::CertifiedIn;
        v.evidence = cert_note + "; hA equals it symbolically";
      } else {
        v.status = HStatus::CertifiedOut;
        v.witness = s->witness;
        v.evidence = cert_note + "; hA = " + (sums.size() == 1 ? to_string(*sums[0]) : std::string("product")) +
                     " misses the witness";
      }
      return v;
    }
    if (!problem.empty()) cert_note = "certificate rejected: " + problem;
    if (problem.empty()) {
      // Certificate against a windowed hA.
      Axes cert2;
      for (const auto& c : cert->closed_form.factors) cert2.push_back(materialize(c, w2, limits));
      v.sample_member = nearest_point(cert2);
      if (auto gap = product_gap(hA, restrict_axes(cert2, w))) {
        if (sums_complete) {
          v.status = HStatus::CertifiedOut;
          v.witness = gap;
          v.evidence = cert_note + "; witness absent from a complete windowed hA";
        } else {
          v.status = HStatus::Undetermined;
          v.evidence = cert_note + "; " + to_string(*gap) + " not found in an incomplete windowed hA";
        }
        return v;
      }
      if (product_equal(hA2, cert2)) {
        v.status = HStatus::EmpiricalEqual;
        v.evidence = cert_note + "; agrees with windowed hA on w and 2w";
      } else {
        v.status = HStatus::Undetermined;
        v.evidence = cert_note + "; disagrees with windowed hA on 2w";
      }
      return v;
    }
  }

  // No usable certificate: two windows and two truncation depths.
  const WindowSide trunc2 = truncated_side(family, h, config.Q, w2, radius2, limits);
  const WindowSide trunc2Q = truncated_side(family, h, config.Q * 2, w2, radius2, limits);
  v.sample_member = nearest_point(trunc2Q.axes);
  const std::string base = cert_note.empty() ? "no certificate" : cert_note;
  const bool agree = product_equal(hA, restrict_axes(trunc2.axes, w)) && product_equal(hA2, trunc2.axes) &&
                     product_equal(hA, restrict_axes(trunc2Q.axes, w)) && product_equal(hA2, trunc2Q.axes);
  if (agree) {
    v.status = HStatus::EmpiricalEqual;
    v.evidence = base + "; hA agrees with the truncations at Q and 2Q on w and 2w";
  } else {
    v.status = HStatus::Undetermined;
    auto gap = product_gap(hA2, trunc2Q.axes);
    v.evidence = base + (gap ? "; " + to_string(*gap) + " lies in the truncated intersection but not in the computed hA"
                             : "; truncations disagree across Q, 2Q");
  }
  return v;
}

}  // namespace

Int default_gen_radius(const Family& family, int h, const HConfig& config) {
  return radius_for(family, h, config.Q, config.window);
}

HReport compute_H(const Family& family, int h_max, const HConfig& config) {
  if (h_max < 1) throw DomainError("h_max must be >= 1");
  if (config.Q < 1) throw ConfigError("Q must be >= 1");
  HReport report;
  report.family = family.describe();
  report.dimension = family.dimension();
  report.h_max = h_max;
  report.config = config;
  for (int h = 1; h <= h_max; ++h) report.verdicts.push_back(evaluate(family, h, config));
  return report;
}

HReport transfer_affine(const HReport& report, int unit, const Int& shift) {
  if (unit != 1 && unit != -1) throw DomainError("affine unit must be +1 or -1");
  HReport out = report;
  out.family = "affine(" + std::to_string(unit) + ", " + shift.str() + ", " + report.family + ")";
  for (auto& v : out.verdicts) {
    auto move = [&](std::optional<Point>& p) {
      if (!p) return;
      for (auto& x : *p) x = x * unit + shift * v.h;
    };
    move(v.witness);
    move(v.sample_member);
    if (unit != 1 || shift != 0) v.evidence = "affine transfer (x -> " + std::to_string(unit) + "x + h*" + shift.str() + "); " + v.evidence;
  }
  return out;
}

namespace {

int strength(HStatus s) {
  switch (s) {
    case HStatus::CertifiedIn:
      return 2;
    case HStatus::EmpiricalEqual:
      return 1;
    default:
      return 0;
  }
}

Point concat(const Point& a, const Point& b) {
  Point p = a;
  p.insert(p.end(), b.begin(), b.end());
  return p;
}

}  // namespace

HReport transfer_product(const HReport& a, const HReport& b) {
  if (a.verdicts.size() != b.verdicts.size()) {
    throw InputError("product transfer needs matching h ranges (" + std::to_string(a.verdicts.size()) + " vs " +
                     std::to_string(b.verdicts.size()) + ")");
  }
  HReport out;
  out.family = "product(" + a.family + ", " + b.family + ")";
  out.dimension = a.dimension + b.dimension;
  out.h_max = a.h_max;
  out.config = a.config;
  for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
    const HVerdict& va = a.verdicts[i];
    const HVerdict& vb = b.verdicts[i];
    if (va.h != vb.h) throw InputError("product transfer needs matching h values");
    HVerdict v;
    v.h = va.h;
    v.Q = va.Q;
    v.window = va.window;
    v.target_empty = va.target_empty || vb.target_empty;
    if (va.sample_member && vb.sample_member) v.sample_member = concat(*va.sample_member, *vb.sample_member);
    if (v.target_empty) {
      v.status = HStatus::CertifiedIn;
      v.evidence = "one factor of the intersection is empty, so both sides are empty";
    } else if (va.status == HStatus::CertifiedOut || vb.status == HStatus::CertifiedOut) {
      const bool left = va.status == HStatus::CertifiedOut;
      const HVerdict& out_side = left ? va : vb;
      const HVerdict& other = left ? vb : va;
      if (out_side.witness && other.sample_member) {
        v.status = HStatus::CertifiedOut;
        v.witness = left ? concat(*out_side.witness, *other.sample_member)
                         : concat(*other.sample_member, *out_side.witness);
        v.evidence = std::string(left ? "left" : "right") + " factor certified out; paired with a member of the other intersection";
      } else {
        v.status = HStatus::Undetermined;
        v.evidence = "a factor is certified out but the other intersection has no known member";
      }
    } else {
      const int s = std::min(strength(va.status), strength(vb.status));
      v.status = s == 2 ? HStatus::CertifiedIn : s == 1 ? HStatus::EmpiricalEqual : HStatus::Undetermined;
      v.evidence = "conjunction of " + to_string(va.status) + " and " + to_string(vb.status);
    }
    out.verdicts.push_back(std::move(v));
  }
  return out;
}

bool PullbackReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const PullbackRow& r) { return r.sums_match && r.consistent; });
}

PullbackReport pullback_check(const Int& modulus, const std::vector<std::vector<Int>>& residue_sets,
                              int h_max, const Window& w, const Limits& limits) {
  if (modulus < 2) throw ConfigError("pullback modulus must be >= 2");
  if (residue_sets.empty()) throw ConfigError("pullback needs at least one residue set");
  const auto m32 = static_cast<std::uint32_t>(to_i64(modulus));
  const auto group = FiniteGroupTable::cyclic(m32);
  std::vector<std::vector<Element>> B;
  std::vector<IntSet> preimages;
  for (const auto& rs : residue_sets) {
    if (rs.empty()) throw ConfigError("residue sets must be nonempty");
    std::vector<Element> e;
    for (const auto& r : rs) e.push_back(static_cast<Element>(to_i64(floor_mod(r, modulus))));
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    B.push_back(e);
    preimages.push_back(IntSet::congruence(modulus, rs));
  }
  auto meet_all = [](const std::vector<std::vector<Element>>& sets) {
    std::vector<Element> acc = sets.front();
    for (const auto& s : sets) {
      std::vector<Element> next;
      std::set_intersection(acc.begin(), acc.end(), s.begin(), s.end(), std::back_inserter(next));
      acc = std::move(next);
    }
    return acc;
  };
  auto to_ints = [](const std::vector<Element>& e) {
    std::vector<Int> out;
    for (auto x : e) out.emplace_back(x);
    return out;
  };

  HConfig cfg;
  cfg.Q = Int(residue_sets.size());
  cfg.window = w;
  cfg.limits = limits;
  const HReport z_report = compute_H(Family::explicit_sets(preimages), h_max, cfg);

  PullbackReport report;
  report.modulus = modulus;
  const Int radius = w.radius() + modulus;
  SumsetOptions opts;
  opts.limits = limits;
  for (int h = 1; h <= h_max; ++h) {
    PullbackRow row;
    row.h = h;
    std::vector<std::vector<Element>> sums;
    for (std::size_t q = 0; q < B.size(); ++q) {
      const auto hb = group_hfold(group, B[q], h);
      sums.push_back(hb);
      const auto lhs = windowed_hfold_sum(preimages[q], h, w, radius, opts).windowed().members;
      const auto rhs = materialize(IntSet::congruence(modulus, to_ints(hb)), w, limits);
      if (lhs != rhs) {
        row.sums_match = false;
        row.detail = "q = " + std::to_string(q + 1) + ": window sums differ from f^-1(hB)";
      }
    }
    const auto base = meet_all(B);
    const auto lhs = base.empty() ? std::vector<Element>{} : group_hfold(group, base, h);
    row.finite_in_H = lhs == meet_all(sums);
    row.integer_status = z_report.verdicts[static_cast<std::size_t>(h - 1)].status;
    row.consistent = row.finite_in_H == (row.integer_status == HStatus::CertifiedIn);
    if (row.detail.empty()) {
      row.detail = std::string("finite group: h ") + (row.finite_in_H ? "in" : "not in") + " H; Z: " +
                   to_string(row.integer_status);
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace hsets
