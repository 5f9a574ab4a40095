#include "hsets/json_io.hpp"

#include <sstream>

#include "hsets/error.hpp"

namespace hsets {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw InputError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, "missing field '" + key + "'");
  return *it;
}

Int read_int(const Json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return parse_int(j.get<std::string>());
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  }
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
    return Int(j.get<std::int64_t>());
  }
  fail(path, "expected an integer (decimal string or JSON integer)");
}

std::vector<Int> read_ints(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array of integers");
  std::vector<Int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_int(j[i], path + "/" + std::to_string(i)));
  return out;
}

Json write_ints(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

std::string read_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

int read_unit(const Json& j, const std::string& path) {
  const Int u = read_int(j, path);
  if (u != 1 && u != -1) fail(path, "unit must be 1 or -1");
  return u == 1 ? 1 : -1;
}

IntSet set_at_path(const Json& j, const std::string& path);

std::vector<IntSet> read_sets(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) fail(path, "expected a nonempty array of sets");
  std::vector<IntSet> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(set_at_path(j[i], path + "/" + std::to_string(i)));
  return out;
}

IntSet set_at_path(const Json& j, const std::string& path) {
  const std::string kind = read_string(field(j, "kind", path), path + "/kind");
  try {
    if (kind == "empty") return IntSet::empty();
    if (kind == "finite") return IntSet::finite(read_ints(field(j, "elements", path), path + "/elements"));
    if (kind == "cofinite") return IntSet::cofinite(read_ints(field(j, "excluded", path), path + "/excluded"));
    if (kind == "congruence") {
      return IntSet::congruence(read_int(field(j, "modulus", path), path + "/modulus"),
                                read_ints(field(j, "residues", path), path + "/residues"));
    }
    if (kind == "tail") {
      return IntSet::tail(read_int(field(j, "center", path), path + "/center"),
                          read_int(field(j, "radius", path), path + "/radius"));
    }
    if (kind == "halftail") return IntSet::half_tail(read_int(field(j, "threshold", path), path + "/threshold"));
    if (kind == "union") return IntSet::unite(read_sets(field(j, "parts", path), path + "/parts"));
    if (kind == "intersection") return IntSet::intersect(read_sets(field(j, "parts", path), path + "/parts"));
    if (kind == "affine") {
      return IntSet::affine(read_unit(field(j, "unit", path), path + "/unit"),
                            read_int(field(j, "shift", path), path + "/shift"),
                            set_at_path(field(j, "inner", path), path + "/inner"));
    }
    if (kind == "powers2") return IntSet::signed_powers_of_two();
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(path + "/kind", "unknown set kind '" + kind + "'");
}

Family family_at_path(const Json& j, const std::string& path) {
  const std::string kind = read_string(field(j, "family", path), path + "/family");
  try {
    if (kind == "tail") {
      return Family::tail(j.contains("core") ? set_at_path(j["core"], path + "/core") : IntSet::empty());
    }
    if (kind == "halftail") {
      return Family::half_tail(j.contains("core") ? set_at_path(j["core"], path + "/core") : IntSet::empty());
    }
    if (kind == "congruence_chain") {
      auto core = read_ints(field(j, "core", path), path + "/core");
      if (j.contains("moduli")) return Family::congruence_chain(core, read_ints(j["moduli"], path + "/moduli"));
      return Family::congruence_chain(core, read_int(field(j, "m1", path), path + "/m1"),
                                      j.contains("ratio") ? read_int(j["ratio"], path + "/ratio") : Int(2));
    }
    if (kind == "coset_tail") {
      return Family::coset_tail(read_int(field(j, "step", path), path + "/step"),
                                read_int(field(j, "base", path), path + "/base"));
    }
    if (kind == "enumeration") return Family::enumeration(read_ints(field(j, "core", path), path + "/core"));
    if (kind == "affine") {
      return Family::affine(read_unit(field(j, "unit", path), path + "/unit"),
                            read_int(field(j, "shift", path), path + "/shift"),
                            family_at_path(field(j, "inner", path), path + "/inner"));
    }
    if (kind == "product") {
      const Json& fs = field(j, "factors", path);
      if (!fs.is_array()) fail(path + "/factors", "expected an array of families");
      std::vector<Family> factors;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        factors.push_back(family_at_path(fs[i], path + "/factors/" + std::to_string(i)));
      }
      return Family::product(std::move(factors));
    }
    if (kind == "explicit") return Family::explicit_sets(read_sets(field(j, "sets", path), path + "/sets"));
  } catch (const ConfigError& e) {
    fail(path, e.what());
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(path + "/family", "unknown family kind '" + kind + "'");
}

Json point_json(const std::optional<Point>& p) {
  if (!p) return nullptr;
  return write_ints(*p);
}

std::optional<Point> read_point(const Json& j, const std::string& path) {
  if (j.is_null()) return std::nullopt;
  return read_ints(j, path);
}

}  // namespace

Json to_json(const IntSet& set) {
  using K = IntSet::Kind;
  switch (set.kind()) {
    case K::Empty:
      return {{"kind", "empty"}};
    case K::Finite:
      return {{"kind", "finite"}, {"elements", write_ints(set.values())}};
    case K::Cofinite:
      return {{"kind", "cofinite"}, {"excluded", write_ints(set.values())}};
    case K::Congruence:
      return {{"kind", "congruence"}, {"modulus", set.modulus().str()}, {"residues", write_ints(set.values())}};
    case K::Tail:
      return {{"kind", "tail"}, {"center", set.center().str()}, {"radius", set.radius().str()}};
    case K::HalfTail:
      return {{"kind", "halftail"}, {"threshold", set.threshold().str()}};
    case K::Union:
    case K::Intersection: {
      Json parts = Json::array();
      for (const auto& p : set.parts()) parts.push_back(to_json(p));
      return {{"kind", set.kind() == K::Union ? "union" : "intersection"}, {"parts", parts}};
    }
    case K::Affine:
      return {{"kind", "affine"}, {"unit", std::to_string(set.unit())}, {"shift", set.shift().str()},
              {"inner", to_json(set.inner())}};
    case K::SignedPowersOfTwo:
      return {{"kind", "powers2"}};
  }
  return nullptr;
}

IntSet intset_from_json(const Json& j) { return set_at_path(j, ""); }

Json to_json(const Family& f) {
  using K = Family::Kind;
  switch (f.kind()) {
    case K::Tail:
      return {{"family", "tail"}, {"core", to_json(f.core())}};
    case K::HalfTail:
      return {{"family", "halftail"}, {"core", to_json(f.core())}};
    case K::CongruenceChain:
      if (f.ratio()) {
        return {{"family", "congruence_chain"}, {"core", write_ints(f.core_points())},
                {"m1", f.modulus_at(1).str()}, {"ratio", f.ratio()->str()}};
      }
      return {{"family", "congruence_chain"}, {"core", write_ints(f.core_points())}, {"moduli", write_ints(f.moduli())}};
    case K::CosetTail:
      return {{"family", "coset_tail"}, {"step", f.step().str()}, {"base", f.base().str()}};
    case K::Enumeration:
      return {{"family", "enumeration"}, {"core", write_ints(f.core_points())}};
    case K::Affine:
      return {{"family", "affine"}, {"unit", std::to_string(f.unit())}, {"shift", f.shift().str()},
              {"inner", to_json(f.inner())}};
    case K::Product: {
      Json fs = Json::array();
      for (const auto& g : f.factors()) fs.push_back(to_json(g));
      return {{"family", "product"}, {"factors", fs}};
    }
    case K::Explicit: {
      Json ss = Json::array();
      for (const auto& s : f.sets()) ss.push_back(to_json(s));
      return {{"family", "explicit"}, {"sets", ss}};
    }
  }
  return nullptr;
}

Family family_from_json(const Json& j) { return family_at_path(j, ""); }

Json to_json(const HReport& r) {
  Json verdicts = Json::array();
  for (const auto& v : r.verdicts) {
    verdicts.push_back({{"h", v.h},
                        {"status", to_string(v.status)},
                        {"witness", point_json(v.witness)},
                        {"evidence", v.evidence},
                        {"Q", v.Q.str()},
                        {"window", {v.window.lo.str(), v.window.hi.str()}},
                        {"sample_member", point_json(v.sample_member)},
                        {"target_empty", v.target_empty}});
  }
  Json config = {{"Q", r.config.Q.str()},
                 {"window", {r.config.window.lo.str(), r.config.window.hi.str()}},
                 {"gen_radius", r.config.gen_radius ? Json(r.config.gen_radius->str()) : Json(nullptr)}};
  return {{"family", r.family}, {"dimension", r.dimension}, {"h_max", r.h_max}, {"config", config},
          {"verdicts", verdicts}};
}

HReport report_from_json(const Json& j) {
  HReport r;
  r.family = read_string(field(j, "family", ""), "/family");
  const Json& dim = field(j, "dimension", "");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) fail("/dimension", "expected a positive integer");
  r.dimension = dim.get<std::size_t>();
  const Json& hm = field(j, "h_max", "");
  if (!hm.is_number_integer() || hm.get<int>() < 1) fail("/h_max", "expected a positive integer");
  r.h_max = hm.get<int>();
  auto read_window = [](const Json& w, const std::string& path) {
    if (!w.is_array() || w.size() != 2) fail(path, "expected [lo, hi]");
    try {
      return Window(read_int(w[0], path + "/0"), read_int(w[1], path + "/1"));
    } catch (const InputError& e) {
      fail(path, e.what());
    }
  };
  const Json& cfg = field(j, "config", "");
  r.config.Q = read_int(field(cfg, "Q", "/config"), "/config/Q");
  r.config.window = read_window(field(cfg, "window", "/config"), "/config/window");
  if (cfg.contains("gen_radius") && !cfg["gen_radius"].is_null()) {
    r.config.gen_radius = read_int(cfg["gen_radius"], "/config/gen_radius");
  }
  const Json& vs = field(j, "verdicts", "");
  if (!vs.is_array()) fail("/verdicts", "expected an array");
  if (vs.size() != static_cast<std::size_t>(r.h_max)) fail("/verdicts", "expected one verdict per h = 1..h_max");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string path = "/verdicts/" + std::to_string(i);
    const Json& e = vs[i];
    HVerdict v;
    const Json& h = field(e, "h", path);
    if (!h.is_number_integer() || h.get<int>() != static_cast<int>(i) + 1) fail(path + "/h", "expected h = " + std::to_string(i + 1));
    v.h = h.get<int>();
    try {
      v.status = parse_status(read_string(field(e, "status", path), path + "/status"));
    } catch (const InputError& err) {
      fail(path + "/status", err.what());
    }
    v.witness = read_point(field(e, "witness", path), path + "/witness");
    v.evidence = read_string(field(e, "evidence", path), path + "/evidence");
    v.Q = read_int(field(e, "Q", path), path + "/Q");
    v.window = read_window(field(e, "window", path), path + "/window");
    if (e.contains("sample_member")) v.sample_member = read_point(e["sample_member"], path + "/sample_member");
    if (e.contains("target_empty")) {
      if (!e["target_empty"].is_boolean()) fail(path + "/target_empty", "expected a boolean");
      v.target_empty = e["target_empty"].get<bool>();
    }
    if (v.h == 1 && v.status != HStatus::CertifiedIn) fail(path + "/status", "h = 1 must be CertifiedIn");
    if (v.status == HStatus::CertifiedOut && !v.witness) fail(path + "/witness", "CertifiedOut needs a witness");
    if (v.witness && v.witness->size() != r.dimension) fail(path + "/witness", "witness dimension mismatch");
    r.verdicts.push_back(std::move(v));
  }
  return r;
}

std::string to_tsv(const HReport& r) {
  std::ostringstream out;
  out << "h\tstatus\twitness\tevidence\tQ\twindow\n";
  for (const auto& v : r.verdicts) {
    std::string evidence = v.evidence;
    for (auto& c : evidence) {
      if (c == '\t' || c == '\n') c = ' ';
    }
    out << v.h << '\t' << to_string(v.status) << '\t' << (v.witness ? to_string(*v.witness) : "-") << '\t'
        << evidence << '\t' << v.Q << '\t' << v.window.lo << ':' << v.window.hi << '\n';
  }
  return out.str();
}

FiniteGroupTable group_from_json(const Json& j) {
  const Json& t = field(j, "table", "");
  if (!t.is_array() || t.empty()) fail("/table", "expected a nonempty array of rows");
  std::vector<std::vector<Element>> rows;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const std::string path = "/table/" + std::to_string(i);
    if (!t[i].is_array()) fail(path, "expected an array");
    std::vector<Element> row;
    for (std::size_t k = 0; k < t[i].size(); ++k) {
      const Int v = read_int(t[i][k], path + "/" + std::to_string(k));
      if (v < 0 || v >= Int(t.size())) fail(path + "/" + std::to_string(k), "entry out of range");
      row.push_back(static_cast<Element>(to_i64(v)));
    }
    rows.push_back(std::move(row));
  }
  const std::string name = j.contains("name") ? read_string(j["name"], "/name") : "table";
  return FiniteGroupTable(std::move(rows), name);
}

Json to_json(const FiniteGroupTable& g) {
  Json t = Json::array();
  for (const auto& row : g.table()) t.push_back(row);
  return {{"name", g.name()}, {"table", t}};
}

Json parse_json_text(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

namespace {

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

std::vector<Int> int_list(const std::string& s) {
  std::vector<Int> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_int(part));
  return out;
}

IntSet parse_atom(const std::string& atom) {
  const auto colon = atom.find(':');
  const std::string head = atom.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : atom.substr(colon + 1);
  auto args = [&](std::size_t n) {
    auto parts = split(rest, ':');
    if (colon == std::string::npos || parts.size() != n) {
      throw InputError("set atom '" + atom + "' expects " + std::to_string(n) + " ':'-separated argument(s)");
    }
    return parts;
  };
  try {
    if (head == "empty") return IntSet::empty();
    if (head == "all") return IntSet::all();
    if (head == "nonzero") return IntSet::cofinite({0});
    if (head == "powers2") return IntSet::signed_powers_of_two();
    if (head == "finite") return IntSet::finite(int_list(args(1)[0]));
    if (head == "cofinite") return IntSet::cofinite(int_list(colon == std::string::npos ? "" : rest));
    if (head == "congruence") {
      auto a = args(2);
      return IntSet::congruence(parse_int(a[0]), int_list(a[1]));
    }
    if (head == "tail") {
      auto a = args(2);
      return IntSet::tail(parse_int(a[0]), parse_int(a[1]));
    }
    if (head == "halftail") return IntSet::half_tail(parse_int(args(1)[0]));
    if (head == "lowerhalf") return IntSet::lower_half_line(parse_int(args(1)[0]));
  } catch (const DomainError& e) {
    throw InputError("set atom '" + atom + "': " + e.what());
  }
  throw InputError("unknown set atom '" + atom + "'");
}

}  // namespace

IntSet parse_set_expression(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw InputError("empty set expression");
  if (t.front() == '{') return intset_from_json(parse_json_text(t, "set expression"));
  std::vector<IntSet> alternatives;
  for (const auto& term : split(t, '|')) {
    std::vector<IntSet> factors;
    for (const auto& atom : split(term, '&')) {
      if (atom.empty()) throw InputError("empty operand in set expression '" + t + "'");
      factors.push_back(parse_atom(atom));
    }
    alternatives.push_back(factors.size() == 1 ? factors.front() : IntSet::intersect(std::move(factors)));
  }
  return alternatives.size() == 1 ? alternatives.front() : IntSet::unite(std::move(alternatives));
}

}  // namespace hsets
