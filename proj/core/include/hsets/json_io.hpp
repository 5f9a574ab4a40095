#pragma once

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hsets/family.hpp"
#include "hsets/group.hpp"
#include "hsets/hset.hpp"
#include "hsets/intset.hpp"

namespace hsets {

using Json = nlohmann::json;

// Numbers are written as decimal strings; both strings and JSON integers
// are accepted on input. Errors are InputError messages naming the JSON
// path of the offending field.

Json to_json(const IntSet& set);
IntSet intset_from_json(const Json& j);

Json to_json(const Family& family);
Family family_from_json(const Json& j);

Json to_json(const HReport& report);
/// Parses and validates a report (h runs 1..h_max, h = 1 is CertifiedIn,
/// CertifiedOut carries a witness).
HReport report_from_json(const Json& j);

/// Rows `h  status  witness  evidence  Q  window`, tab separated, with a header.
std::string to_tsv(const HReport& report);

/// {"name": "...", "table": [[...], ...]} with row-major entries.
FiniteGroupTable group_from_json(const Json& j);
Json to_json(const FiniteGroupTable& group);

/// Parses JSON text, reporting line and column on syntax errors.
Json parse_json_text(std::string_view text, const std::string& source = "input");

/// Inline set expressions: atoms joined by '|' (union) and '&' (intersection,
/// binding tighter). Atoms: empty, all, nonzero, powers2, finite:1,2,3,
/// cofinite:1,2, congruence:M:r1,r2, tail:C:R, halftail:T, lowerhalf:B.
/// Text starting with '{' is read as a JSON set.
IntSet parse_set_expression(std::string_view text);

}  // namespace hsets
