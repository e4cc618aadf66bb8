#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace hyptile {

using BigInt = boost::multiprecision::cpp_int;

/// floor(a / 2^shift) for shift >= 0.
///
/// cpp_int's operator>> does not round toward negative infinity for
/// multi-limb negative values, so negatives go through the complement.
BigInt floor_shift(const BigInt& a, int shift);

/// Index of the most significant set bit of a > 0.
int msb(const BigInt& a);

BigInt abs_value(const BigInt& a);

std::optional<std::int64_t> to_int64(const BigInt& a);

double to_double(const BigInt& a);

/// Exact integer value of a finite, integral double.
BigInt from_integral_double(double v);

/// floor(v * 2^-level) computed exactly from the binary representation of v.
BigInt floor_scaled(double v, int level);

std::string to_string(const BigInt& a);
BigInt parse_bigint(const std::string& s);

}  // namespace hyptile
