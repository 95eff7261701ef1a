#include "oppenheim/forms.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace oppenheim {

namespace detail {

bool less_magnitude(const Coefficient& a, const Coefficient& b) {
  long double x = std::fabs(a.approx()), y = std::fabs(b.approx());
  long double gap = std::fabs(x - y), scale = std::max(x, y);
  if (gap > 1e-15L * scale) return x < y;
  if (a.is_rational() && b.is_rational()) return mp::abs(a.rational()) < mp::abs(b.rational());
  for (mpfr_prec_t bits = 256; bits <= 4096; bits *= 2) {
    Interval u = abs(a.enclose(bits)), v = abs(b.enclose(bits));
    if (u.certainly_less(v)) return true;
    if (v.certainly_less(u)) return false;
  }
  return false;
}

}  // namespace detail

namespace {

void require_positive(int sign) {
  if (sign <= 0) throw std::domain_error("epsilon must be positive");
}

}  // namespace

RationalForm normalize_epsilon(const IntegerForm& form, const Rational& epsilon) {
  return normalize_epsilon(to_rational(form), epsilon);
}

RationalForm normalize_epsilon(const RationalForm& form, const Rational& epsilon) {
  require_positive(epsilon.sign());
  RationalForm::Vector c = form.coeffs();
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] /= epsilon;
  return RationalForm(std::move(c), form.signature().t > 0);
}

FloatForm normalize_epsilon(const FloatForm& form, long double epsilon) {
  require_positive(detail::sign_of(epsilon));
  return FloatForm(form.coeffs() / epsilon, form.signature().t > 0);
}

RealForm normalize_epsilon(const RealForm& form, const Coefficient& epsilon) {
  require_positive(epsilon.sign());
  RealForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = form[i] / epsilon;
  return RealForm(std::move(c), form.signature().t > 0);
}

RationalForm to_rational(const IntegerForm& form) {
  RationalForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Rational(form[i]);
  return RationalForm(std::move(c), form.signature().t > 0);
}

RealForm to_real(const IntegerForm& form) { return to_real(to_rational(form)); }

RealForm to_real(const RationalForm& form) {
  RealForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = Coefficient(form[i]);
  return RealForm(std::move(c), form.signature().t > 0);
}

std::optional<RationalForm> exact(const RealForm& form) {
  RationalForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (!form[i].is_rational()) return std::nullopt;
    c[i] = form[i].rational();
  }
  return RationalForm(std::move(c), form.signature().t > 0);
}

FloatForm approximate(const RealForm& form) {
  FloatForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) c[i] = form[i].approx();
  return FloatForm(std::move(c), form.signature().t > 0);
}

std::optional<IntegerForm> to_integer(const RationalForm& form) {
  IntegerForm::Vector c(form.dim());
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    if (mp::denominator(form[i]) != 1) return std::nullopt;
    c[i] = to_int64(mp::numerator(form[i]));
  }
  return IntegerForm(std::move(c), form.signature().t > 0);
}

RealForm parse_form(const std::vector<std::string>& items) {
  if (items.empty()) throw std::invalid_argument("empty coefficient list");
  RealForm::Vector c(static_cast<Eigen::Index>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) c[static_cast<Eigen::Index>(i)] = Coefficient::parse(items[i]);
  return RealForm(std::move(c));
}

RealForm parse_form(const std::string& list) {
  std::vector<std::string> items;
  std::string cur;
  int depth = 0;
  for (char ch : list) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == ',' || ch == ';') && depth == 0) {
      items.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  items.push_back(cur);
  for (const auto& s : items)
    if (s.find_first_not_of(" \t") == std::string::npos) throw std::invalid_argument("empty entry in coefficient list '" + list + "'");
  return parse_form(items);
}

IntegerForm parse_integer_form(const std::string& list) {
  auto ex = exact(parse_form(list));
  if (!ex) throw std::invalid_argument("coefficients must be integers: '" + list + "'");
  auto in = to_integer(*ex);
  if (!in) throw std::invalid_argument("coefficients must be integers: '" + list + "'");
  return *in;
}

std::vector<int> below_ee(const RealForm& form) {
  std::vector<int> out;
  Interval ee = exp(Interval::euler(128));
  for (Eigen::Index i = 0; i < form.dim(); ++i) {
    Interval v = abs(form[i].enclose(128));
    if (v.certainly_less(ee)) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string to_string(const RealForm& form) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < form.dim(); ++i) os << (i ? ", " : "") << form[i].text();
  return os.str();
}

}  // namespace oppenheim
