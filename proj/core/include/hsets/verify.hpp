#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// Overrides for a verification suite; unset fields take the suite's defaults.
struct VerifyConfig {
  std::optional<int> h_max;
  std::optional<Int> Q;
  std::optional<Window> window;
  std::optional<Int> gen_radius;
  std::optional<std::size_t> samples;
  std::optional<int> h;
  std::uint64_t seed = 1;
  Limits limits;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteReport {
  std::string id;
  std::vector<Check> checks;
  double seconds = 0.0;

  bool passed() const;
  void add(std::string name, bool passed, std::string detail = {});
};

/// Suite identifiers accepted by run_suite, in display order.
const std::vector<std::string>& suite_ids();
bool is_suite_id(const std::string& id);

/// Runs one suite. Throws InputError for an unknown id and ConfigError when
/// the overrides violate a construction's preconditions.
SuiteReport run_suite(const std::string& id, const VerifyConfig& config = {});

/// One line per check: "PASS name: detail" or "FAIL name: detail".
std::string format_report(const SuiteReport& report);

}  // namespace hsets
