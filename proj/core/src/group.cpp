#include "hsets/group.hpp"

#include <algorithm>

#include "hsets/error.hpp"

namespace hsets {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<Element>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InputError("group table must be nonempty");
  for (const auto& row : table_) {
    if (row.size() != n) throw InputError("group table must be square");
    for (auto v : row) {
      if (v >= n) throw InputError("group table entry " + std::to_string(v) + " out of range");
    }
  }
  bool found = false;
  for (Element e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Element a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InputError("group table has no identity element");
  inverses_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    auto it = std::find(table_[a].begin(), table_[a].end(), identity_);
    if (it == table_[a].end()) throw InputError("element " + std::to_string(a) + " has no inverse");
    const auto b = static_cast<Element>(it - table_[a].begin());
    if (table_[b][a] != identity_) throw InputError("element " + std::to_string(a) + " has no two-sided inverse");
    inverses_[a] = b;
  }
  auto check = [&](Element a, Element b, Element c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
      throw InputError("group table is not associative at (" + std::to_string(a) + "," +
                       std::to_string(b) + "," + std::to_string(c) + ")");
    }
  };
  if (n <= 64) {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) check(a, b, c);
  } else {
    // Deterministic linear-congruential sample of triples.
    std::uint64_t s = 0x9E3779B97F4A7C15ULL;
    for (int i = 0; i < 20000; ++i) {
      s = s * 6364136223846793005ULL + 1442695040888963407ULL;
      check(static_cast<Element>((s >> 11) % n), static_cast<Element>((s >> 27) % n),
            static_cast<Element>((s >> 43) % n));
    }
  }
}

FiniteGroupTable FiniteGroupTable::cyclic(std::uint32_t m) {
  if (m == 0) throw InputError("cyclic group order must be >= 1");
  std::vector<std::vector<Element>> t(m, std::vector<Element>(m));
  for (Element a = 0; a < m; ++a)
    for (Element b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  return FiniteGroupTable(std::move(t), "Z/" + std::to_string(m));
}

FiniteGroupTable FiniteGroupTable::direct_product(const FiniteGroupTable& g1, const FiniteGroupTable& g2) {
  const std::uint32_t n1 = g1.order();
  const std::uint32_t n2 = g2.order();
  std::vector<std::vector<Element>> t(n1 * n2, std::vector<Element>(n1 * n2));
  for (Element a = 0; a < n1 * n2; ++a) {
    for (Element b = 0; b < n1 * n2; ++b) {
      t[a][b] = g1.mul(a / n2, b / n2) * n2 + g2.mul(a % n2, b % n2);
    }
  }
  return FiniteGroupTable(std::move(t), g1.name() + " x " + g2.name());
}

bool FiniteGroupTable::is_abelian() const {
  for (Element a = 0; a < order(); ++a)
    for (Element b = a + 1; b < order(); ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::vector<Element> group_hfold(const FiniteGroupTable& g, const std::vector<Element>& subset, int h) {
  if (h < 1) throw DomainError("h must be >= 1");
  std::vector<char> in(g.order(), 0);
  for (auto a : subset) {
    if (a >= g.order()) throw InputError("element " + std::to_string(a) + " not in group");
    in[a] = 1;
  }
  std::vector<char> acc = in;
  for (int k = 2; k <= h; ++k) {
    std::vector<char> next(g.order(), 0);
    for (Element x = 0; x < g.order(); ++x) {
      if (!acc[x]) continue;
      for (Element a = 0; a < g.order(); ++a) {
        if (in[a]) next[g.mul(x, a)] = 1;  // (a_1 ... a_{k-1}) a_k
      }
    }
    acc = std::move(next);
  }
  std::vector<Element> out;
  for (Element x = 0; x < g.order(); ++x)
    if (acc[x]) out.push_back(x);
  return out;
}

std::vector<Element> product_subset(const FiniteGroupTable& g1, const FiniteGroupTable& g2,
                                    const std::vector<Element>& a, const std::vector<Element>& b) {
  std::vector<Element> out;
  for (auto x : a) {
    if (x >= g1.order()) throw InputError("element " + std::to_string(x) + " not in " + g1.name());
    for (auto y : b) {
      if (y >= g2.order()) throw InputError("element " + std::to_string(y) + " not in " + g2.name());
      out.push_back(x * g2.order() + y);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace hsets
