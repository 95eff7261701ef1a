#include <gmp.h>

#include "oppenheim/interval.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>
#include <utility>

namespace oppenheim {

Interval::Interval(mpfr_prec_t bits) : bits_(bits) {
  mpfr_init2(lo_, bits_);
  mpfr_init2(hi_, bits_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Rational& x, mpfr_prec_t bits) : Interval(bits) {
  mpq_t q;
  mpq_init(q);
  std::string s = to_string(x);
  mpq_set_str(q, s.c_str(), 10);
  mpfr_set_q(lo_, q, MPFR_RNDD);
  mpfr_set_q(hi_, q, MPFR_RNDU);
  mpq_clear(q);
}

namespace {

Rational exact_value(const mpfr_t x) {
  if (!mpfr_number_p(x)) throw std::domain_error("interval endpoint is not finite");
  if (mpfr_zero_p(x)) return Rational(0);
  mpz_t z;
  mpz_init(z);
  mpfr_exp_t e = mpfr_get_z_2exp(z, x);
  char* digits = mpz_get_str(nullptr, 10, z);
  BigInt mant(digits);
  void (*release)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &release);
  release(digits, std::strlen(digits) + 1);
  mpz_clear(z);
  if (e >= 0) return Rational(mant << static_cast<unsigned>(e));
  return Rational(mant) / Rational(BigInt(1) << static_cast<unsigned>(-e));
}

}  // namespace

Rational Interval::lower_exact() const { return exact_value(lo_); }
Rational Interval::upper_exact() const { return exact_value(hi_); }

Interval::Interval(long double x, mpfr_prec_t bits) : Interval(bits) {
  mpfr_set_ld(lo_, x, MPFR_RNDD);
  mpfr_set_ld(hi_, x, MPFR_RNDU);
}

Interval::Interval(const Interval& other) : Interval(other.bits_) {
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.bits_) { swap(other); }

Interval& Interval::operator=(Interval other) noexcept {
  swap(other);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Interval::swap(Interval& other) noexcept {
  std::swap(bits_, other.bits_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval Interval::pi(mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::euler(mpfr_prec_t bits) {
  Interval r(bits);
  mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
  mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
  mpfr_exp(r.lo_, r.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, r.hi_, MPFR_RNDU);
  return r;
}

long double Interval::lower() const { return mpfr_get_ld(lo_, MPFR_RNDD); }
long double Interval::upper() const { return mpfr_get_ld(hi_, MPFR_RNDU); }

long double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, bits_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  long double r = mpfr_get_ld(m, MPFR_RNDN);
  mpfr_clear(m);
  return r;
}

Float50 Interval::mid_float50() const {
  mpfr_t m;
  mpfr_init2(m, bits_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  mpfr_exp_t e = 0;
  char* digits = mpfr_get_str(nullptr, &e, 10, 60, m, MPFR_RNDN);
  std::string s(digits);
  mpfr_free_str(digits);
  mpfr_clear(m);
  if (s.find_first_not_of("-0") == std::string::npos) return Float50(0);
  bool neg = s[0] == '-';
  if (neg) s.erase(0, 1);
  return Float50((neg ? "-0." : "0.") + s + "e" + std::to_string(e));
}

long double Interval::width() const {
  mpfr_t w;
  mpfr_init2(w, bits_);
  mpfr_sub(w, hi_, lo_, MPFR_RNDU);
  long double r = mpfr_get_ld(w, MPFR_RNDU);
  mpfr_clear(w);
  return r;
}

bool Interval::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
bool Interval::certainly_less(const Interval& other) const { return mpfr_less_p(hi_, other.lo_) != 0; }

std::string Interval::str(int digits) const {
  auto one = [digits](const mpfr_t& v, mpfr_rnd_t rnd) {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*R*g", digits, rnd, v);
    return std::string(buf);
  };
  return "[" + one(lo_, MPFR_RNDD) + ", " + one(hi_, MPFR_RNDU) + "]";
}

namespace {

mpfr_prec_t join(const Interval& a, const Interval& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a) {
  Interval r(a.bits_);
  mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(join(a, b));
  mpfr_t t;
  mpfr_init2(t, r.bits_);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_mul(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_mul(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  Interval r(join(a, b));
  mpfr_t t;
  mpfr_init2(t, r.bits_);
  const mpfr_t* xs[2] = {&a.lo_, &a.hi_};
  const mpfr_t* ys[2] = {&b.lo_, &b.hi_};
  bool first = true;
  for (auto x : xs)
    for (auto y : ys) {
      mpfr_div(t, *x, *y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
      mpfr_div(t, *x, *y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Interval abs(const Interval& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Interval r(a.bits_);
  mpfr_set_zero(r.lo_, 1);
  mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
  if (mpfr_greater_p(a.hi_, r.hi_)) mpfr_set(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval sqrt(const Interval& a) {
  if (mpfr_sgn(a.hi_) < 0) throw std::domain_error("square root of a negative interval");
  Interval r(a.bits_);
  if (mpfr_sgn(a.lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.bits_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("logarithm of an interval not bounded away from zero");
  Interval r(a.bits_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, long n) {
  if (n < 0) {
    Interval one(Rational(1), a.bits_);
    return one / pow(a, -n);
  }
  Interval r(a.bits_);
  if (n == 0) {
    mpfr_set_ui(r.lo_, 1, MPFR_RNDN);
    mpfr_set_ui(r.hi_, 1, MPFR_RNDN);
    return r;
  }
  if (n % 2 == 0) {
    Interval b = abs(a);
    mpfr_pow_si(r.lo_, b.lo_, n, MPFR_RNDD);
    mpfr_pow_si(r.hi_, b.hi_, n, MPFR_RNDU);
    return r;
  }
  mpfr_pow_si(r.lo_, a.lo_, n, MPFR_RNDD);
  mpfr_pow_si(r.hi_, a.hi_, n, MPFR_RNDU);
  return r;
}

}  // namespace oppenheim
