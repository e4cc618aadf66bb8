#include "hyptile/integer.hpp"

#include <cmath>
#include <stdexcept>

namespace hyptile {

BigInt floor_shift(const BigInt& a, int shift) {
  if (shift < 0) throw std::invalid_argument("floor_shift: negative shift");
  if (shift == 0) return a;
  if (a.sign() >= 0) return a >> shift;
  BigInt m = -a - 1;
  m >>= shift;
  return -m - 1;
}

int msb(const BigInt& a) {
  if (a.sign() <= 0) throw std::invalid_argument("msb: argument must be positive");
  return static_cast<int>(boost::multiprecision::msb(a));
}

BigInt abs_value(const BigInt& a) { return a.sign() < 0 ? BigInt(-a) : a; }

std::optional<std::int64_t> to_int64(const BigInt& a) {
  static const BigInt lo = std::numeric_limits<std::int64_t>::min();
  static const BigInt hi = std::numeric_limits<std::int64_t>::max();
  if (a < lo || a > hi) return std::nullopt;
  return a.convert_to<std::int64_t>();
}

double to_double(const BigInt& a) { return a.convert_to<double>(); }

BigInt from_integral_double(double v) {
  if (!std::isfinite(v) || std::floor(v) != v)
    throw std::invalid_argument("from_integral_double: not a finite integer");
  if (v == 0.0) return 0;
  int exp = 0;
  const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, |mant| in [0.5, 1)
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  BigInt r = scaled;
  const int shift = exp - 53;
  if (shift >= 0) return r << shift;
  // v is integral, so the low bits dropped here are zero.
  return floor_shift(r, -shift);
}

BigInt floor_scaled(double v, int level) {
  if (!std::isfinite(v)) throw std::invalid_argument("floor_scaled: non-finite value");
  if (v == 0.0) return 0;
  int exp = 0;
  const double mant = std::frexp(v, &exp);
  BigInt m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  // v * 2^-level = m * 2^(exp - 53 - level)
  const long shift = static_cast<long>(exp) - 53 - level;
  if (shift >= 0) return m << static_cast<unsigned>(shift);
  return floor_shift(m, static_cast<int>(-shift));
}

std::string to_string(const BigInt& a) { return a.str(); }

BigInt parse_bigint(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_bigint: empty string");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("parse_bigint: no digits");
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("parse_bigint: bad digit in '" + s + "'");
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace hyptile
