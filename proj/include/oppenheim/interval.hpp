#pragma once

#include <string>

#include <mpfr.h>

#include "oppenheim/numeric.hpp"

namespace oppenheim {

/// Closed interval [lo, hi] with MPFR endpoints rounded outward.
class Interval {
 public:
  explicit Interval(mpfr_prec_t bits = 128);
  Interval(const Rational& x, mpfr_prec_t bits);
  Interval(long double x, mpfr_prec_t bits);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(Interval other) noexcept;
  ~Interval();

  static Interval pi(mpfr_prec_t bits);
  static Interval euler(mpfr_prec_t bits);

  mpfr_prec_t precision() const { return bits_; }
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }

  long double lower() const;
  long double upper() const;
  long double mid() const;
  Float50 mid_float50() const;
  /// Upper bound on hi - lo.
  long double width() const;
  /// Endpoints as exact rationals (both finite).
  Rational lower_exact() const;
  Rational upper_exact() const;

  bool certainly_positive() const;
  bool certainly_negative() const;
  bool contains_zero() const;
  /// True when every point of *this is < every point of other.
  bool certainly_less(const Interval& other) const;

  std::string str(int digits = 40) const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a);
  friend Interval abs(const Interval& a);
  friend Interval sqrt(const Interval& a);
  friend Interval exp(const Interval& a);
  friend Interval log(const Interval& a);
  friend Interval pow(const Interval& a, long n);

 private:
  void swap(Interval& other) noexcept;
  mpfr_prec_t bits_;
  mpfr_t lo_;
  mpfr_t hi_;
};

}  // namespace oppenheim
