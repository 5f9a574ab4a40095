#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsets/bigint.hpp"
#include "hsets/intset.hpp"

namespace hsets {

/// Finite evaluation of a sumset: the members found inside `window` when all
/// summands are drawn from [-generation_radius, generation_radius].
struct WindowedSum {
  Window window;
  std::vector<Int> members;
  Int generation_radius;
  /// True when no member of the true sumset inside the window can be missing.
  bool complete = false;

  bool has(const Int& x) const;
  /// In for found members; Out only when complete; OutUpTo otherwise.
  Membership3 membership(const Int& x) const;
};

/// Either an exact closed form or a window-certified finite evaluation.
class SumsetResult {
 public:
  explicit SumsetResult(IntSet closed) : value_(std::move(closed)) {}
  explicit SumsetResult(WindowedSum windowed) : value_(std::move(windowed)) {}

  bool is_closed() const { return std::holds_alternative<IntSet>(value_); }
  const IntSet& closed() const { return std::get<IntSet>(value_); }
  const WindowedSum& windowed() const { return std::get<WindowedSum>(value_); }

  Membership3 membership(const Int& x) const;
  /// Members inside w (for windowed results, w must lie in the evaluated window).
  std::vector<Int> members_in(const Window& w, const Limits& limits = {}) const;

 private:
  std::variant<IntSet, WindowedSum> value_;
};

struct SumsetOptions {
  Limits limits;
  /// Window and generation radius used when no closed form is available.
  std::optional<Window> fallback_window;
  std::optional<Int> fallback_radius;
  /// Lets windowed sums claim completeness when the closed form agrees.
  bool symbolic_confirm = false;
};

/// Closed-form h-fold sum when the periodic engine closes; otherwise the
/// windowed fallback. Throws ConfigError if neither is possible.
SumsetResult symbolic_hfold_sum(const IntSet& set, int h, const SumsetOptions& options = {});

/// The closed form only; nullopt when the set is not eventually periodic or
/// a cap is hit.
std::optional<IntSet> closed_hfold_sum(const IntSet& set, int h, const Limits& limits = {});

/// h-fold sums of elements of set ∩ [-gen_radius, gen_radius], intersected with w.
SumsetResult windowed_hfold_sum(const IntSet& set, int h, const Window& w, const Int& gen_radius,
                                const SumsetOptions& options = {});

/// True when every summand of every representation of a point of w lies in
/// [-gen_radius, gen_radius]; follows from a structural lower or upper bound.
bool window_sum_is_complete(const IntSet& set, int h, const Window& w, const Int& gen_radius);

/// r_{A,h}(x): value is exact unless `lower_bound` is set; `infinite` only
/// from the exact rule.
struct RepCount {
  Int value = 0;
  bool infinite = false;
  bool lower_bound = false;

  std::string to_string() const;
};

enum class RepMode { Additive, Multiplicative };

RepCount representation_count(const IntSet& set, int h, const Int& x, RepMode mode,
                              const Int& gen_radius, const Limits& limits = {});

/// Products a_1 ... a_h inside w; exact because every factor divides x.
SumsetResult hfold_product(const IntSet& set, int h, const Window& w, const Limits& limits = {});

/// Number of nonzero digits in the non-adjacent form of x; equals the least
/// number of signed powers of two summing to x.
int naf_weight(const Int& x);

struct BasisVerdict {
  enum class Kind { Full, CoversWindow, Missing, Undetermined };
  int h = 1;
  Kind kind = Kind::Undetermined;
  /// Missing: absent point in the window. Undetermined: first point not found.
  std::optional<Int> witness;
  /// For CoversWindow with a closed form: nearest point of Z outside hA, if any.
  std::optional<Int> outside_witness;
  std::string evidence;
};

std::string to_string(BasisVerdict::Kind kind);

struct BasisOptions {
  SumsetOptions sums;
  /// Decide x in hA by non-adjacent-form weight for the signed powers of two.
  bool power_of_two_rule = false;
  /// Report an exact order only when the set contains the identity 0.
  bool require_identity_for_order = false;
};

struct BasisReport {
  std::vector<BasisVerdict> verdicts;
  /// Least h <= h_max with hA = Z, when every smaller h is certified not full.
  std::optional<int> exact_order;
  std::string order_note;
};

BasisReport basis_order(const IntSet& set, int h_max, const Window& w, const Int& gen_radius,
                        const BasisOptions& options = {});

}  // namespace hsets
