#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hsets/family.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// Parameters of an H computation.
struct HConfig {
  /// Truncation depth: intersections run over q = 1..Q (and 1..2Q).
  Int Q = 10;
  /// Comparison window; the doubled window is checked as well.
  Window window{-50, 50};
  /// Summand radius for windowed sums on `window`; derived from the family when absent.
  std::optional<Int> gen_radius;
  Limits limits;
};

enum class HStatus { CertifiedIn, CertifiedOut, EmpiricalEqual, Undetermined };

std::string to_string(HStatus status);
HStatus parse_status(const std::string& text);

/// Verdict on whether hA equals the intersection of the hA_q.
struct HVerdict {
  int h = 1;
  HStatus status = HStatus::Undetermined;
  /// CertifiedOut: a point of the intersection of the hA_q outside hA.
  std::optional<Point> witness;
  std::string evidence;
  Int Q = 0;
  Window window{0, 0};
  /// Some member of the intersection of the hA_q, when one is known.
  std::optional<Point> sample_member;
  /// The intersection of the hA_q is known to be empty.
  bool target_empty = false;
};

struct HReport {
  std::string family;
  std::size_t dimension = 1;
  int h_max = 1;
  HConfig config;
  std::vector<HVerdict> verdicts;

  std::vector<HStatus> statuses() const;
  /// The h with CertifiedIn or EmpiricalEqual status.
  std::vector<int> members() const;
};

/// Summand radius used when HConfig::gen_radius is not set.
Int default_gen_radius(const Family& family, int h, const HConfig& config);

HReport compute_H(const Family& family, int h_max, const HConfig& config = {});

/// Report for the family unit * A_q + shift, derived without recomputation:
/// statuses are kept and witnesses move to unit * x + h * shift.
HReport transfer_affine(const HReport& report, int unit, const Int& shift);

/// Report for the product family A_q x B_q as a per-h conjunction.
HReport transfer_product(const HReport& a, const HReport& b);

/// Checks, for f: Z -> Z/mZ, that h f^-1(B) = f^-1(hB) on a window and that
/// H(f^-1(B_q)) agrees with H(B_q) computed in the finite group.
struct PullbackRow {
  int h = 1;
  bool sums_match = true;
  bool finite_in_H = false;
  HStatus integer_status = HStatus::Undetermined;
  bool consistent = false;
  std::string detail;
};

struct PullbackReport {
  Int modulus;
  std::vector<PullbackRow> rows;
  bool passed() const;
};

PullbackReport pullback_check(const Int& modulus, const std::vector<std::vector<Int>>& residue_sets,
                              int h_max, const Window& w, const Limits& limits = {});

}  // namespace hsets
