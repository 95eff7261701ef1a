#include "oppenheim/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oppenheim {

Rational exact_rational(long double x) {
  if (!std::isfinite(x)) throw std::domain_error("non-finite value has no rational form");
  if (x == 0) return Rational(0);
  int e = 0;
  long double mant = std::frexp(x, &e);
  // 64 mantissa bits in the x87 format
  long double scaled = std::ldexp(mant, 64);
  e -= 64;
  auto whole = static_cast<long long>(scaled / 2);  // keep inside int64
  long double rest = scaled - 2.0L * static_cast<long double>(whole);
  BigInt m = BigInt(whole) * 2 + static_cast<long long>(rest);
  Rational r(m);
  if (e > 0) r *= Rational(BigInt(1) << e);
  if (e < 0) r /= Rational(BigInt(1) << (-e));
  return r;
}

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(s.substr(0, slash));
    Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator in '" + text + "'");
    return num / den;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  BigInt digits = 0;
  long long scale = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (dot) --scale;
      any = true;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) throw std::invalid_argument("malformed number '" + text + "'");
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number '" + text + "'");
    std::size_t used = 0;
    long long ex = 0;
    try {
      ex = std::stoll(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    }
    if (i + 1 + used != s.size() || std::llabs(ex) > 100000)
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    scale += ex;
  }
  Rational r(digits);
  if (scale > 0) r *= Rational(mp::pow(BigInt(10), static_cast<unsigned>(scale)));
  if (scale < 0) r /= Rational(mp::pow(BigInt(10), static_cast<unsigned>(-scale)));
  return neg ? Rational(-r) : r;
}

std::string to_string(const Rational& x) {
  if (mp::denominator(x) == 1) return mp::numerator(x).str();
  return mp::numerator(x).str() + "/" + mp::denominator(x).str();
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(int128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(x + 1)) + 1 : static_cast<unsigned __int128>(x);
  std::string out;
  while (u) {
    out.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) out.push_back('-');
  return {out.rbegin(), out.rend()};
}

long double to_long_double(const Rational& x) { return x.convert_to<long double>(); }

long double to_long_double(const Float50& x) { return x.convert_to<long double>(); }

BigInt floor(const Rational& x) {
  BigInt q = mp::numerator(x) / mp::denominator(x);  // truncates toward zero
  if (x < 0 && Rational(q) != x) q -= 1;
  return q;
}

BigInt ceil(const Rational& x) {
  BigInt f = floor(x);
  return Rational(f) == x ? f : BigInt(f + 1);
}

std::int64_t to_int64(const BigInt& x) {
  if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("integer exceeds 64 bits: " + x.str());
  return x.convert_to<std::int64_t>();
}

int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit multiplication overflow");
  return r;
}

int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit addition overflow");
  return r;
}

std::string format_float(const Float50& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace oppenheim
