#pragma once

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "oppenheim/expression.hpp"
#include "oppenheim/numeric.hpp"

namespace Eigen {
template <>
struct NumTraits<oppenheim::Coefficient> : GenericNumTraits<long double> {
  using Real = oppenheim::Coefficient;
  using NonInteger = oppenheim::Coefficient;
  using Nested = oppenheim::Coefficient;
  using Literal = long double;
  enum { IsComplex = 0, IsInteger = 0, IsSigned = 1, RequireInitialization = 1, ReadCost = 1, AddCost = 8, MulCost = 8 };
};
}  // namespace Eigen

namespace oppenheim {

/// Counts of positive, negative and zero coefficients.
struct Signature {
  int r = 0;
  int s = 0;
  int t = 0;

  int dim() const { return r + s + t; }
  bool indefinite() const { return r >= 1 && s >= 1; }
  bool operator==(const Signature&) const = default;
};

namespace detail {

inline int sign_of(std::int64_t x) { return (x > 0) - (x < 0); }
inline int sign_of(long double x) { return (x > 0) - (x < 0); }
inline int sign_of(double x) { return (x > 0) - (x < 0); }
inline int sign_of(const Rational& x) { return x.sign(); }
inline int sign_of(const Coefficient& x) { return x.sign(); }

template <typename S>
struct accumulator {
  using type = S;
};
template <>
struct accumulator<std::int64_t> {
  using type = int128;
};
template <>
struct accumulator<double> {
  using type = long double;
};

}  // namespace detail

template <typename S>
using Accumulator = typename detail::accumulator<S>::type;

/// Diagonal quadratic form Q[m] = sum q_i m_i^2.
template <typename Scalar_>
class DiagonalForm {
 public:
  using Scalar = Scalar_;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  DiagonalForm() = default;

  explicit DiagonalForm(Vector coeffs, bool allow_zero = false) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) throw std::invalid_argument("a form needs at least one coefficient");
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
      int sg = detail::sign_of(coeffs_[i]);
      if (sg > 0)
        ++sig_.r;
      else if (sg < 0)
        ++sig_.s;
      else if (allow_zero)
        ++sig_.t;
      else
        throw std::invalid_argument("coefficient " + std::to_string(i + 1) + " is zero");
    }
  }

  DiagonalForm(std::initializer_list<Scalar> coeffs) : DiagonalForm(from_list(coeffs)) {}

  const Vector& coeffs() const { return coeffs_; }
  const Scalar& operator[](Eigen::Index i) const { return coeffs_[i]; }
  Eigen::Index dim() const { return coeffs_.size(); }
  const Signature& signature() const { return sig_; }
  bool indefinite() const { return sig_.indefinite(); }

 private:
  static Vector from_list(std::initializer_list<Scalar> coeffs) {
    Vector v(static_cast<Eigen::Index>(coeffs.size()));
    Eigen::Index i = 0;
    for (const auto& c : coeffs) v[i++] = c;
    return v;
  }

  Vector coeffs_;
  Signature sig_;
};

using IntegerForm = DiagonalForm<std::int64_t>;
using RationalForm = DiagonalForm<Rational>;
using FloatForm = DiagonalForm<long double>;
using RealForm = DiagonalForm<Coefficient>;

template <typename S>
struct Extremes {
  S q0;
  S q;
  std::conditional_t<std::is_same_v<S, std::int64_t>, BigInt, S> detQ;
};

template <typename S>
struct Oriented {
  DiagonalForm<S> form;
  bool flipped = false;
};

namespace detail {

inline int128 term(std::int64_t c, std::int64_t m) { return checked_mul(c, checked_mul(m, m)); }
inline int128 add(int128 a, int128 b) { return checked_add(a, b); }
inline std::int64_t magnitude(std::int64_t c) { return c < 0 ? -c : c; }

template <typename S>
S term(const S& c, std::int64_t m) {
  return c * S(m) * S(m);
}
template <typename S>
S add(const S& a, const S& b) {
  return a + b;
}
inline long double magnitude(long double c) { return c < 0 ? -c : c; }
inline Rational magnitude(const Rational& c) { return mp::abs(c); }
inline Coefficient magnitude(const Coefficient& c) { return abs(c); }

inline Coefficient term(const Coefficient& c, std::int64_t m) {
  return c * Coefficient(Rational(BigInt(m) * BigInt(m)));
}

/// |a| < |b| with certified comparison for expressions (ties resolve to false).
inline bool less_magnitude(std::int64_t a, std::int64_t b) { return magnitude(a) < magnitude(b); }
inline bool less_magnitude(long double a, long double b) { return magnitude(a) < magnitude(b); }
inline bool less_magnitude(const Rational& a, const Rational& b) { return mp::abs(a) < mp::abs(b); }
bool less_magnitude(const Coefficient& a, const Coefficient& b);

}  // namespace detail

/// Q[m] = sum q_i m_i^2; 128-bit overflow-checked for integer forms.
template <typename S>
Accumulator<S> evaluate(const DiagonalForm<S>& form, const IntVector& m) {
  if (m.size() != form.dim()) throw std::invalid_argument("vector length does not match the form dimension");
  Accumulator<S> acc = detail::term(form[0], m[0]);
  for (Eigen::Index i = 1; i < form.dim(); ++i) acc = detail::add(acc, Accumulator<S>(detail::term(form[i], m[i])));
  return acc;
}

/// sum |q_i| m_i^2, the size functional of every search.
template <typename S>
Accumulator<S> weighted_norm(const DiagonalForm<S>& form, const IntVector& m) {
  if (m.size() != form.dim()) throw std::invalid_argument("vector length does not match the form dimension");
  Accumulator<S> acc = detail::term(detail::magnitude(form[0]), m[0]);
  for (Eigen::Index i = 1; i < form.dim(); ++i)
    acc = detail::add(acc, Accumulator<S>(detail::term(detail::magnitude(form[i]), m[i])));
  return acc;
}

template <typename S>
Extremes<S> extremes(const DiagonalForm<S>& form) {
  if (form.signature().t != 0) throw std::invalid_argument("extremes needs a form without zero coefficients");
  Eigen::Index lo = 0, hi = 0;
  for (Eigen::Index i = 1; i < form.dim(); ++i) {
    if (detail::less_magnitude(form[i], form[lo])) lo = i;
    if (detail::less_magnitude(form[hi], form[i])) hi = i;
  }
  Extremes<S> out{detail::magnitude(form[lo]), detail::magnitude(form[hi]), {}};
  out.detQ = decltype(out.detQ)(detail::magnitude(form[0]));
  for (Eigen::Index i = 1; i < form.dim(); ++i) out.detQ = out.detQ * decltype(out.detQ)(detail::magnitude(form[i]));
  return out;
}

/// Negates every coefficient when s > r, so the result has r >= s.
template <typename S>
Oriented<S> canonical_orientation(const DiagonalForm<S>& form) {
  if (!form.indefinite()) throw std::domain_error("canonical orientation needs an indefinite form");
  if (form.signature().r >= form.signature().s) return {form, false};
  typename DiagonalForm<S>::Vector c(form.dim());
  for (Eigen::Index i = 0; i < form.dim(); ++i) c[i] = -form[i];
  return {DiagonalForm<S>(std::move(c), form.signature().t > 0), true};
}

/// Coefficients q_i / epsilon.
RationalForm normalize_epsilon(const IntegerForm& form, const Rational& epsilon);
RationalForm normalize_epsilon(const RationalForm& form, const Rational& epsilon);
FloatForm normalize_epsilon(const FloatForm& form, long double epsilon);
RealForm normalize_epsilon(const RealForm& form, const Coefficient& epsilon);

RationalForm to_rational(const IntegerForm& form);
RealForm to_real(const IntegerForm& form);
RealForm to_real(const RationalForm& form);
/// Exact copy when every coefficient is rational.
std::optional<RationalForm> exact(const RealForm& form);
FloatForm approximate(const RealForm& form);
/// Integer form when every coefficient is an integer.
std::optional<IntegerForm> to_integer(const RationalForm& form);

/// Parses "1, -sqrt(2), 3/7" into a form.
RealForm parse_form(const std::string& list);
RealForm parse_form(const std::vector<std::string>& items);
IntegerForm parse_integer_form(const std::string& list);

/// Indices i with |q_i| certainly below e^e.
std::vector<int> below_ee(const RealForm& form);

std::string to_string(const RealForm& form);

}  // namespace oppenheim
