#include "hsets/bigint.hpp"

#include <algorithm>
#include <limits>

#include "hsets/error.hpp"

namespace hsets {

Int floor_mod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int floor_div(const Int& a, const Int& m) { return (a - floor_mod(a, m)) / m; }

Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

Int abs(const Int& a) { return a < 0 ? Int(-a) : a; }

Int parse_int(std::string_view text) {
  std::string_view body = text;
  while (!body.empty() && (body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
  while (!body.empty() && (body.back() == ' ' || body.back() == '\t')) body.remove_suffix(1);
  std::string_view digits = body;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InputError("not an integer: '" + std::string(text) + "'");
  }
  Int value{std::string(digits)};
  if (body.front() == '-') value = -value;
  return value;
}

std::string to_string(const Int& value) { return value.str(); }

std::string to_string(const Rational& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Int num = parse_int(text.substr(0, slash));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

bool fits_i64(const Int& value) {
  return value >= std::numeric_limits<std::int64_t>::min() &&
         value <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t to_i64(const Int& value) {
  if (!fits_i64(value)) throw SizeCapError("integer " + value.str() + " exceeds 64-bit range");
  return value.convert_to<std::int64_t>();
}

bool closer_to_zero(const Int& a, const Int& b) {
  const Int aa = abs(a);
  const Int ab = abs(b);
  if (aa != ab) return aa < ab;
  return a < b;
}

void sort_unique(std::vector<Int>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

}  // namespace hsets
