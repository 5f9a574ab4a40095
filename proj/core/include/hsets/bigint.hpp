#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hsets {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Remainder in [0, m) for m > 0.
Int floor_mod(const Int& a, const Int& m);
/// Floor division for m > 0.
Int floor_div(const Int& a, const Int& m);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int abs(const Int& a);

/// Parses an optionally signed decimal integer. Throws InputError on garbage.
Int parse_int(std::string_view text);
std::string to_string(const Int& value);
std::string to_string(const Rational& value);
Rational parse_rational(std::string_view text);

/// Checked narrowing; throws SizeCapError when the value does not fit.
std::int64_t to_i64(const Int& value);
bool fits_i64(const Int& value);

/// Witness order: smaller absolute value first, ties negative-first.
bool closer_to_zero(const Int& a, const Int& b);

/// Sorts and removes duplicates in place.
void sort_unique(std::vector<Int>& values);

}  // namespace hsets
