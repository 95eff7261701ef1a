#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace oppenheim {

namespace mp = boost::multiprecision;

using BigInt = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;
using Float50 = mp::cpp_bin_float_50;
using int128 = __int128;

using IntVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Exact value of a finite binary float as a rational.
Rational exact_rational(long double x);

/// Parses "p", "p/q", "-p/q" or a plain decimal like "0.25" / "1e-3" exactly.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& x);
std::string to_string(const BigInt& x);
std::string to_string(int128 x);

/// Nearest long double (ties away from zero are irrelevant here).
long double to_long_double(const Rational& x);
long double to_long_double(const Float50& x);

BigInt floor(const Rational& x);
BigInt ceil(const Rational& x);

/// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const BigInt& x);

/// a*b + c with overflow detection on 128 bits.
int128 checked_mul(int128 a, int128 b);
int128 checked_add(int128 a, int128 b);

std::string format_float(const Float50& x, int digits = 17);

}  // namespace oppenheim
