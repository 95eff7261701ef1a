#include "oppenheim/exponents.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace oppenheim {

namespace {

std::string sig_text(int r, int s) { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }

Rational frac(long long p, long long q) { return Rational(p) / Rational(q); }

}  // namespace

Rational beta(int r, int s) {
  if (r < 1 || s < 1 || r + s < 5) throw std::domain_error("beta needs r, s >= 1 and r + s >= 5, got " + sig_text(r, s));
  if (r < s) std::swap(r, s);
  if (r >= s + 3) return frac(r, 2LL * s);
  if (r == s + 1 || r == s + 2) {
    if (s < 2) throw std::domain_error("degenerate signature " + sig_text(r, s));
    return frac(s + 2, 2LL * (s - 1));
  }
  if (s < 3) throw std::domain_error("degenerate signature " + sig_text(r, s));
  return frac(s + 1, 2LL * (s - 2));
}

Rational beta_lower_bound(int d) {
  if (d < 5) throw std::domain_error("beta_lower_bound needs d >= 5");
  if (d % 2) return frac(d + 3, 2LL * (d - 3));
  return frac(d + 2, 2LL * (d - 4));
}

std::vector<RestrictedSignature> restricted_signatures(int r, int s, int k) {
  if (k < 0 || k > 3) throw std::domain_error("k must lie in {0, 1, 2, 3}");
  if (r < 0 || s < 0 || r + s - k < 5) throw std::domain_error("restriction of " + sig_text(r, s) + " by " + std::to_string(k) + " has dimension below 5");
  std::vector<RestrictedSignature> out;
  for (int a = k; a >= 0; --a) {
    int r2 = r - a, s2 = s - (k - a);
    if (r2 < 0 || s2 < 0) continue;
    out.push_back({r2, s2, r2 >= 1 && s2 >= 1});
  }
  return out;
}

std::optional<Rational> try_beta_k_worst(int r, int s, int k) {
  std::optional<Rational> best;
  for (const auto& rs : restricted_signatures(r, s, k)) {
    if (!rs.indefinite) continue;
    Rational b = beta(rs.r, rs.s);
    if (!best || b > *best) best = b;
  }
  return best;
}

Rational beta_k_worst(int r, int s, int k) {
  auto b = try_beta_k_worst(r, s, k);
  if (!b) throw std::domain_error("no indefinite restriction of " + sig_text(r, s) + " by " + std::to_string(k));
  return *b;
}

Rational p_exponent(int k, const Rational& two_beta_value, const Rational& two_beta_k) {
  Rational lead = Rational(2) / (1 + two_beta_value);
  Rational bk = two_beta_k / 2;
  switch (k) {
    case 3:
      return lead * (frac(7, 3) + 1 / (6 * bk)) - (2 + 1 / (3 * bk));
    case 2:
      return lead * (3 + 1 / (2 * bk)) - (2 + 1 / bk);
    case 1:
      return lead * (5 + 3 / (2 * bk)) - (2 + 3 / bk);
    default:
      throw std::domain_error("p_exponent needs k in {1, 2, 3}");
  }
}

bool p_exponent_applicable(int k, int r, int s) {
  if (k < 1 || k > 3 || r < 1 || s < 1) return false;
  int d = r + s;
  if (d < (k == 3 ? 8 : 7)) return false;
  // the tables assume every restriction stays indefinite
  return std::min(r, s) - k >= 1;
}

Rational p_exponent(int k, int r, int s) {
  if (!p_exponent_applicable(k, r, s))
    throw std::domain_error("p_" + std::to_string(k) + " is not defined for signature " + sig_text(r, s));
  return p_exponent(k, two_beta(r, s), 2 * beta_k_worst(r, s, k));
}

ExponentTable exponent_table(int d) {
  if (d < 5) throw std::domain_error("exponent tables need d >= 5");
  ExponentTable t;
  t.d = d;
  for (int r = (d + 1) / 2; r <= d - 1; ++r) {
    int s = d - r;
    ExponentRow row;
    row.r = r;
    row.s = s;
    row.two_beta = two_beta(r, s);
    for (int k = 1; k <= 3; ++k) {
      if (d - k < 5) continue;
      row.restricted[k - 1] = restricted_signatures(r, s, k);
      if (auto b = try_beta_k_worst(r, s, k)) row.two_beta_k[k - 1] = 2 * *b;
      if (p_exponent_applicable(k, r, s)) row.p[k - 1] = p_exponent(k, r, s);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

BoundParameters theorem_bound(const Float50& q, int d, const Rational& beta_value, const Float50& C_d) {
  if (C_d <= 0) throw std::domain_error("C_d must be positive");
  if (q <= 0) throw std::domain_error("q must be positive");
  BoundParameters b;
  b.d = d;
  b.beta = beta_value;
  b.C_d = C_d;
  b.q = q;
  Float50 beta50 = Float50(mp::numerator(beta_value)) / Float50(mp::denominator(beta_value));
  Float50 log_q = log(q);
  b.log_H = log(C_d) + (Float50(0.5) + beta50) * log_q;
  if (b.log_H <= 1) throw std::domain_error("H <= e, so log log H is not positive");
  Float50 dd = Float50(d) * d;
  b.H = exp(b.log_H);
  b.log_P = (1 + 10 * dd / log(b.log_H)) * b.log_H;
  b.P = exp(b.log_P);
  b.log_shell_radius = log(Float50(4) * d * d * d) + 2 * b.log_P;
  b.shell_radius = exp(b.log_shell_radius);
  b.log_B = (1 + 2 * beta50) * log_q;
  if (b.log_B <= 1) throw std::domain_error("B <= e, so log log B is not positive");
  b.llcurly_exponent = 1 + 20 * dd / log(b.log_B);
  b.log_theorem_rhs = b.llcurly_exponent * b.log_B;
  b.theorem_rhs = exp(b.log_theorem_rhs);
  return b;
}

BoundParameters theorem_bound(const RealForm& form, const Float50& C_d) {
  const Signature& sg = form.signature();
  if (sg.t != 0 || !sg.indefinite()) throw std::domain_error("theorem_bound needs an indefinite form without zero coefficients");
  if (form.dim() < 5) throw std::domain_error("theorem_bound needs d >= 5");
  return theorem_bound(extremes(form).q.approx50(), static_cast<int>(form.dim()), beta(sg.r, sg.s), C_d);
}

bool within_shell(const BoundParameters& b, const Float50& weighted_norm) {
  if (weighted_norm <= 0) return false;
  return log(weighted_norm) <= b.log_shell_radius;
}

}  // namespace oppenheim
