#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "regtri/errors.hpp"

namespace regtri {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
// 50 decimal digits ~ 168-bit mantissa; bound evaluation happens in natural
// log space with this type.
using BigFloat = boost::multiprecision::cpp_bin_float_50;

Int factorial(std::uint64_t k);
Int binomial(std::uint64_t n, std::uint64_t k);
// (k)!! for odd k >= -1; double_factorial_odd(-1) = 1 by convention, so the
// number of perfect matchings on 2m points is double_factorial_odd(2m - 1).
Int double_factorial_odd(std::int64_t k);
Int pow_int(const Int& base, std::uint64_t e);

// Smallest integer >= q.
Int ceil_rational(const Rational& q);
// Largest integer <= q.
Int floor_rational(const Rational& q);

BigFloat to_bigfloat(const Int& v);
BigFloat to_bigfloat(const Rational& q);
// Natural log; requires a positive argument.
BigFloat log_int(const Int& v);
BigFloat log_rational(const Rational& q);

// "p/q" with q omitted when 1.
std::string rational_str(const Rational& q);
// Accepts "p", "p/q", and plain decimals like "0.25" or "-1.5e-2"; all are
// parsed exactly.
Rational parse_rational(std::string_view s);

// Fixed 25-significant-digit scientific form; stable across platforms for a
// given value.
std::string bigfloat_str(const BigFloat& v);

std::uint64_t fnv1a64(std::string_view data);

} // namespace regtri
