#pragma once

#include <memory>
#include <optional>
#include <string>

#include "oppenheim/interval.hpp"
#include "oppenheim/numeric.hpp"

namespace oppenheim {

namespace detail {
struct Node;
}

/// A real number given by an expression such as "3/7", "-sqrt(2)", "exp(exp(1))" or "2*pi".
/// Rational expressions are folded to an exact value; anything else is enclosed on demand.
class Coefficient {
 public:
  Coefficient();
  Coefficient(const Rational& exact);  // NOLINT(google-explicit-constructor)
  Coefficient(long long n);            // NOLINT(google-explicit-constructor)

  /// Grammar: numbers, pi, e, + - * / ^, parentheses, sqrt() exp() log() abs().
  static Coefficient parse(const std::string& text);

  bool is_rational() const { return exact_.has_value(); }
  const Rational& rational() const;
  const std::string& text() const { return text_; }

  Interval enclose(mpfr_prec_t bits) const;
  long double approx() const;
  Float50 approx50() const;
  /// -1, 0 or +1, certified by escalating precision (throws if undecidable at 4096 bits).
  int sign() const;

  friend Coefficient operator+(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator*(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator/(const Coefficient& a, const Coefficient& b);
  friend Coefficient operator-(const Coefficient& a);
  friend Coefficient abs(const Coefficient& a);

 private:
  Coefficient(std::shared_ptr<const detail::Node> node, std::string text);
  std::shared_ptr<const detail::Node> node_;
  std::optional<Rational> exact_;
  std::string text_;
  long double approx_ = 0;
};

}  // namespace oppenheim
