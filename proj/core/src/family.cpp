#include "hsets/family.hpp"

#include <algorithm>
#include <sstream>

#include "hsets/error.hpp"
#include "hsets/periodic.hpp"
#include "hsets/sumset.hpp"

namespace hsets {

struct Family::Data {
  Kind kind = Kind::Explicit;
  IntSet core;
  std::vector<Int> points;
  Int m1;
  std::optional<Int> ratio;
  std::vector<Int> moduli;
  Int step;
  Int base;
  int unit = 1;
  Int shift;
  std::vector<Family> children;  // Affine: one inner family; Product: factors
  std::vector<IntSet> sets;
};

// ---------------------------------------------------------------------------
// ProductSet

bool ProductSet::contains(const Point& p) const {
  if (p.size() != factors.size()) throw DomainError("point dimension mismatch");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!factors[i].contains(p[i])) return false;
  }
  return true;
}

bool ProductSet::is_empty(const Limits& limits) const {
  for (const auto& f : factors) {
    if (f.kind() == IntSet::Kind::Empty) return true;
    if (auto p = PeriodicSet::try_compile(f, limits); p && p->is_empty()) return true;
  }
  return false;
}

std::string ProductSet::to_string() const {
  if (factors.size() == 1) return hsets::to_string(factors.front());
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i > 0) out += " x ";
    out += hsets::to_string(factors[i]);
  }
  return out;
}

std::string to_string(const Point& p) {
  if (p.size() == 1) return p.front().str();
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i > 0) out += ",";
    out += p[i].str();
  }
  return out + ")";
}

std::vector<Point> materialize(const ProductSet& set, const Window& w, const Limits& limits) {
  std::vector<std::vector<Int>> axes;
  Int total = 1;
  for (const auto& f : set.factors) {
    axes.push_back(materialize(f, w, limits));
    total *= Int(axes.back().size());
  }
  if (total > limits.max_window) throw SizeCapError("product window holds too many points");
  std::vector<Point> out{Point{}};
  for (const auto& axis : axes) {
    std::vector<Point> next;
    for (const auto& prefix : out) {
      for (const auto& x : axis) {
        Point p = prefix;
        p.push_back(x);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Int> enumerate_complement(const std::vector<Int>& core, std::size_t count) {
  std::vector<Int> sorted = core;
  sort_unique(sorted);
  std::vector<Int> out;
  auto take = [&](const Int& x) {
    if (out.size() < count && !std::binary_search(sorted.begin(), sorted.end(), x)) out.push_back(x);
  };
  take(0);
  for (Int n = 1; out.size() < count; ++n) {
    take(-n);
    take(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Construction

Family::Family(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Family Family::tail(IntSet core) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::Tail;
  d->core = normalize(core);
  return Family(std::move(d));
}

Family Family::half_tail(IntSet core) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::HalfTail;
  d->core = normalize(core);
  return Family(std::move(d));
}

namespace {

Int max_abs(const std::vector<Int>& v) {
  Int m = 0;
  for (const auto& x : v) m = std::max(m, abs(x));
  return m;
}

void check_chain_start(const std::vector<Int>& core, const Int& m1) {
  if (core.empty()) throw ConfigError("congruence chain needs a nonempty core");
  const Int m_star = max_abs(core);
  if (m1 <= 2 * m_star) {
    throw ConfigError("m_1 > 2m* violated: m_1 = " + m1.str() + ", m* = " + m_star.str());
  }
}

}  // namespace

Family Family::congruence_chain(std::vector<Int> core, Int m1, Int ratio) {
  sort_unique(core);
  check_chain_start(core, m1);
  if (ratio < 2) throw ConfigError("congruence chain ratio must be >= 2 (strictly increasing moduli)");
  auto d = std::make_shared<Data>();
  d->kind = Kind::CongruenceChain;
  d->points = std::move(core);
  d->m1 = std::move(m1);
  d->ratio = std::move(ratio);
  return Family(std::move(d));
}

Family Family::congruence_chain(std::vector<Int> core, std::vector<Int> moduli) {
  sort_unique(core);
  if (moduli.empty()) throw ConfigError("congruence chain needs at least one modulus");
  check_chain_start(core, moduli.front());
  for (std::size_t i = 0; i + 1 < moduli.size(); ++i) {
    if (moduli[i + 1] <= moduli[i] || moduli[i + 1] % moduli[i] != 0) {
      throw ConfigError("m_q divides m_(q+1) violated at q = " + std::to_string(i + 1) + ": " +
                        moduli[i].str() + ", " + moduli[i + 1].str());
    }
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::CongruenceChain;
  d->points = std::move(core);
  d->m1 = moduli.front();
  d->moduli = std::move(moduli);
  return Family(std::move(d));
}

Family Family::coset_tail(Int step, Int base) {
  if (step < 2) throw ConfigError("coset tail step d must be >= 2");
  if (floor_mod(base, step) == 0) throw ConfigError("coset base x must not lie in dZ");
  auto d = std::make_shared<Data>();
  d->kind = Kind::CosetTail;
  d->step = std::move(step);
  d->base = std::move(base);
  return Family(std::move(d));
}

Family Family::enumeration(std::vector<Int> core) {
  sort_unique(core);
  auto d = std::make_shared<Data>();
  d->kind = Kind::Enumeration;
  d->points = std::move(core);
  return Family(std::move(d));
}

Family Family::affine(int unit, Int shift, Family inner) {
  if (unit != 1 && unit != -1) throw ConfigError("affine unit must be +1 or -1");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Affine;
  d->unit = unit;
  d->shift = std::move(shift);
  d->children.push_back(std::move(inner));
  return Family(std::move(d));
}

Family Family::product(std::vector<Family> factors) {
  if (factors.size() < 2) throw ConfigError("product family needs at least two factors");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Product;
  d->children = std::move(factors);
  return Family(std::move(d));
}

Family Family::explicit_sets(std::vector<IntSet> sets) {
  if (sets.empty()) throw ConfigError("explicit family needs at least one set");
  auto d = std::make_shared<Data>();
  d->kind = Kind::Explicit;
  for (auto& s : sets) d->sets.push_back(normalize(s));
  return Family(std::move(d));
}

// ---------------------------------------------------------------------------
// Accessors

Family::Kind Family::kind() const { return data_->kind; }

std::size_t Family::dimension() const {
  switch (data_->kind) {
    case Kind::Product: {
      std::size_t n = 0;
      for (const auto& f : data_->children) n += f.dimension();
      return n;
    }
    case Kind::Affine:
      return data_->children.front().dimension();
    default:
      return 1;
  }
}

std::optional<Int> Family::max_index() const {
  switch (data_->kind) {
    case Kind::Explicit:
      return Int(data_->sets.size());
    case Kind::CongruenceChain:
      if (!data_->ratio) return Int(data_->moduli.size());
      return std::nullopt;
    case Kind::Affine:
      return data_->children.front().max_index();
    case Kind::Product: {
      std::optional<Int> m;
      for (const auto& f : data_->children) {
        if (auto k = f.max_index()) m = m ? std::min(*m, *k) : *k;
      }
      return m;
    }
    default:
      return std::nullopt;
  }
}

const IntSet& Family::core() const { return data_->core; }
const std::vector<Int>& Family::core_points() const { return data_->points; }
const Int& Family::step() const { return data_->step; }
const Int& Family::base() const { return data_->base; }
int Family::unit() const { return data_->unit; }
const Int& Family::shift() const { return data_->shift; }
const Family& Family::inner() const { return data_->children.front(); }
const std::vector<Family>& Family::factors() const { return data_->children; }
const std::vector<IntSet>& Family::sets() const { return data_->sets; }
const std::optional<Int>& Family::ratio() const { return data_->ratio; }
const std::vector<Int>& Family::moduli() const { return data_->moduli; }

Int Family::modulus_at(const Int& q) const {
  if (data_->ratio) return data_->m1 * boost::multiprecision::pow(*data_->ratio, to_i64(q - 1));
  return data_->moduli.at(static_cast<std::size_t>(to_i64(q - 1)));
}

namespace {

void check_index(const Family& f, const Int& q) {
  if (q < 1) throw InputError("family index q must be >= 1, got " + q.str());
  if (auto m = f.max_index(); m && q > *m) {
    throw InputError("family index q = " + q.str() + " exceeds the last index " + m->str());
  }
}

}  // namespace

IntSet Family::set_at(const Int& q) const {
  if (dimension() != 1) throw DomainError("set_at needs a one-dimensional family; use product_at");
  check_index(*this, q);
  const Data& d = *data_;
  switch (d.kind) {
    case Kind::Tail:
      return normalize(IntSet::unite({d.core, IntSet::tail(0, q)}));
    case Kind::HalfTail:
      return normalize(IntSet::unite({d.core, IntSet::half_tail(q)}));
    case Kind::CongruenceChain:
      return IntSet::congruence(modulus_at(q), d.points);
    case Kind::CosetTail:
      return normalize(IntSet::unite(
          {IntSet::congruence(d.step, {0}),
           IntSet::intersect({IntSet::congruence(d.step, {d.base}), IntSet::half_tail(d.base + d.step * q)})}));
    case Kind::Enumeration: {
      const auto removed = enumerate_complement(d.points, static_cast<std::size_t>(to_i64(q - 1)));
      return IntSet::cofinite(removed);
    }
    case Kind::Affine:
      return normalize(IntSet::affine(d.unit, d.shift, d.children.front().set_at(q)));
    case Kind::Explicit:
      return d.sets[static_cast<std::size_t>(to_i64(q - 1))];
    case Kind::Product:
      break;
  }
  throw DomainError("unreachable family kind");
}

ProductSet Family::product_at(const Int& q) const {
  if (data_->kind == Kind::Product) {
    check_index(*this, q);
    ProductSet out;
    for (const auto& f : data_->children) {
      auto part = f.product_at(q);
      out.factors.insert(out.factors.end(), part.factors.begin(), part.factors.end());
    }
    return out;
  }
  if (data_->kind == Kind::Affine && dimension() > 1) {
    auto inner_set = data_->children.front().product_at(q);
    for (auto& f : inner_set.factors) f = normalize(IntSet::affine(data_->unit, data_->shift, f));
    return inner_set;
  }
  return ProductSet{{set_at(q)}};
}

IntSet Family::limit() const {
  if (dimension() != 1) throw DomainError("limit needs a one-dimensional family; use product_limit");
  const Data& d = *data_;
  if (auto m = max_index(); m && d.kind != Kind::Explicit) return set_at(*m);
  switch (d.kind) {
    case Kind::Tail:
    case Kind::HalfTail:
      return d.core;
    case Kind::CongruenceChain:
    case Kind::Enumeration:
      return IntSet::finite(d.points);
    case Kind::CosetTail:
      return IntSet::congruence(d.step, {0});
    case Kind::Affine:
      return normalize(IntSet::affine(d.unit, d.shift, d.children.front().limit()));
    case Kind::Explicit:
      return intersect_truncated(d.sets);
    case Kind::Product:
      break;
  }
  throw DomainError("unreachable family kind");
}

ProductSet Family::product_limit() const {
  if (data_->kind == Kind::Product) {
    ProductSet out;
    for (const auto& f : data_->children) {
      auto part = f.product_limit();
      out.factors.insert(out.factors.end(), part.factors.begin(), part.factors.end());
    }
    return out;
  }
  if (data_->kind == Kind::Affine && dimension() > 1) {
    auto inner_set = data_->children.front().product_limit();
    for (auto& f : inner_set.factors) f = normalize(IntSet::affine(data_->unit, data_->shift, f));
    return inner_set;
  }
  return ProductSet{{limit()}};
}

std::string Family::describe() const {
  const Data& d = *data_;
  auto list = [](const std::vector<Int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + "}";
  };
  switch (d.kind) {
    case Kind::Tail:
      return "tail(core=" + to_string(d.core) + ")";
    case Kind::HalfTail:
      return "halftail(core=" + to_string(d.core) + ")";
    case Kind::CongruenceChain:
      if (d.ratio) {
        return "congruence_chain(core=" + list(d.points) + ", m_q=" + d.m1.str() + "*" + d.ratio->str() +
               "^(q-1))";
      }
      return "congruence_chain(core=" + list(d.points) + ", moduli=" + list(d.moduli) + ")";
    case Kind::CosetTail:
      return "coset_tail(d=" + d.step.str() + ", x=" + d.base.str() + ")";
    case Kind::Enumeration:
      return "enumeration(core=" + list(d.points) + ")";
    case Kind::Affine:
      return "affine(" + std::to_string(d.unit) + ", " + d.shift.str() + ", " + d.children.front().describe() + ")";
    case Kind::Product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < d.children.size(); ++i) s += (i ? ", " : "") + d.children[i].describe();
      return s + ")";
    }
    case Kind::Explicit:
      return "explicit(" + std::to_string(d.sets.size()) + " sets)";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Tail certificates

namespace {

std::optional<IntSet> certificate_1d(const Family& f, int h, const Limits& limits,
                                     std::string& provenance) {
  using K = Family::Kind;
  switch (f.kind()) {
    case K::Tail:
      provenance = "integers-tail: hA_q contains h{|r| >= q} = Z";
      return IntSet::all();
    case K::HalfTail: {
      const IntSet& core = f.core();
      if (core.kind() != IntSet::Kind::Empty && !provable_min(core)) return std::nullopt;
      provenance = "halftail: sums using a tail element exceed every fixed bound";
      if (core.kind() == IntSet::Kind::Empty) return IntSet::empty();
      return closed_hfold_sum(core, h, limits);
    }
    case K::CongruenceChain:
      if (!f.ratio()) return std::nullopt;
      provenance = "congruence-chain: classes pairwise incongruent once m_q > 2hm*";
      return closed_hfold_sum(IntSet::finite(f.core_points()), h, limits);
    case K::CosetTail: {
      std::vector<Int> residues;
      for (int j = 0; j < h; ++j) residues.push_back(f.base() * j);
      provenance = "subgroup: j coset elements with j < h absorb into dZ";
      return normalize(IntSet::congruence(f.step(), residues), limits);
    }
    case K::Enumeration:
      provenance = "countable: cofinite A_q gives hA_q = Z";
      return IntSet::all();
    case K::Explicit: {
      std::vector<IntSet> sums;
      for (const auto& s : f.sets()) {
        auto c = closed_hfold_sum(s, h, limits);
        if (!c) return std::nullopt;
        sums.push_back(*c);
      }
      provenance = "explicit: finite intersection of closed forms";
      return intersect_truncated(sums, limits);
    }
    case K::Affine:
    case K::Product:
      break;
  }
  return std::nullopt;
}

}  // namespace

std::optional<TailCertificate> tail_certificate(const Family& family, int h, const Limits& limits) {
  if (h < 1) throw DomainError("h must be >= 1");
  if (h == 1) {
    return TailCertificate{1, family.product_limit(), "definition: intersection of the A_q"};
  }
  if (family.kind() == Family::Kind::Product) {
    TailCertificate out{h, {}, "product: (A x B)^h = A^h x B^h"};
    for (const auto& f : family.factors()) {
      auto c = tail_certificate(f, h, limits);
      if (!c) return std::nullopt;
      out.closed_form.factors.insert(out.closed_form.factors.end(), c->closed_form.factors.begin(),
                                     c->closed_form.factors.end());
      out.provenance += "; " + c->provenance;
    }
    return out;
  }
  if (family.kind() == Family::Kind::Affine) {
    auto c = tail_certificate(family.inner(), h, limits);
    if (!c) return std::nullopt;
    for (auto& f : c->closed_form.factors) {
      f = normalize(IntSet::affine(family.unit(), family.shift() * h, f), limits);
    }
    c->provenance = "affine: h(eA + t) = e(hA) + ht; " + c->provenance;
    return c;
  }
  std::string provenance;
  auto closed = certificate_1d(family, h, limits, provenance);
  if (!closed) return std::nullopt;
  return TailCertificate{h, ProductSet{{*closed}}, provenance};
}

// ---------------------------------------------------------------------------
// Monotonicity

namespace {

std::optional<Int> nearest(const std::vector<Int>& v) {
  std::optional<Int> best;
  for (const auto& x : v) {
    if (!best || closer_to_zero(x, *best)) best = x;
  }
  return best;
}

std::vector<Int> difference(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

MonotonicityReport classify_monotonicity(const Family& family, const Int& Q, const Window& w,
                                         const Limits& limits) {
  MonotonicityReport report;
  Int last = Q;
  if (auto m = family.max_index()) last = std::min(last, *m);
  auto axes_at = [&](const Int& q) {
    std::vector<std::vector<Int>> axes;
    for (const auto& f : family.product_at(q).factors) axes.push_back(materialize(f, w, limits));
    return axes;
  };
  if (last < 1) return report;
  auto cur = axes_at(1);
  for (Int q = 1; q < last; ++q) {
    auto next = axes_at(q + 1);
    const bool next_empty = std::any_of(next.begin(), next.end(), [](const auto& a) { return a.empty(); });
    const bool cur_empty = std::any_of(cur.begin(), cur.end(), [](const auto& a) { return a.empty(); });
    // Product of windows: next ⊆ cur iff next is empty or every axis is contained.
    if (!next_empty) {
      for (std::size_t i = 0; i < next.size(); ++i) {
        auto extra = difference(next[i], cur[i]);
        if (!extra.empty()) {
          report.decreasing = false;
          if (!report.violation) {
            Point p;
            for (std::size_t j = 0; j < next.size(); ++j) p.push_back(j == i ? *nearest(extra) : *nearest(next[j]));
            report.violation = std::pair{q, p};
          }
        }
      }
    }
    std::optional<Point> witness;
    if (!cur_empty) {
      for (std::size_t i = 0; i < cur.size() && !witness; ++i) {
        auto lost = next_empty ? cur[i] : difference(cur[i], next[i]);
        if (lost.empty()) continue;
        Point p;
        for (std::size_t j = 0; j < cur.size(); ++j) p.push_back(j == i ? *nearest(lost) : *nearest(cur[j]));
        witness = std::move(p);
      }
    }
    report.strict_witness.push_back(std::move(witness));
    cur = std::move(next);
  }
  const auto& steps = report.strict_witness;
  report.strictly = !steps.empty() && std::all_of(steps.begin(), steps.end(), [](const auto& s) { return s.has_value(); });
  report.asymptotically_strict_within_range = !steps.empty() && steps.back().has_value();
  if (!steps.empty() && !steps.back()) {
    std::size_t k = steps.size();
    while (k > 0 && !steps[k - 1]) --k;
    report.constant_from = Int(k + 1);
  }
  return report;
}

}  // namespace hsets
