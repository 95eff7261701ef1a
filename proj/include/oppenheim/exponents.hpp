#pragma once

#include <optional>
#include <vector>

#include "oppenheim/forms.hpp"
#include "oppenheim/numeric.hpp"

namespace oppenheim {

/// beta(r, s) of Schlickewei's bound, symmetric in (r, s). Requires r, s >= 1 and r + s >= 5.
Rational beta(int r, int s);
inline Rational two_beta(int r, int s) { return 2 * beta(r, s); }

/// Smallest value of beta over all signatures of dimension d >= 5.
Rational beta_lower_bound(int d);

struct RestrictedSignature {
  int r = 0;
  int s = 0;
  bool indefinite = false;
};

/// (r - a, s - (k - a)) for a = k, ..., 0 with both parts nonnegative.
std::vector<RestrictedSignature> restricted_signatures(int r, int s, int k);

/// Largest beta over the indefinite restrictions of dimension >= 5.
Rational beta_k_worst(int r, int s, int k);
std::optional<Rational> try_beta_k_worst(int r, int s, int k);

/// p_k(d) from beta and beta_k given as 2*beta and 2*beta_k.
Rational p_exponent(int k, const Rational& two_beta_value, const Rational& two_beta_k);
/// p_k(d) for the signature (r, s), with beta_k = beta_k_worst(r, s, k).
Rational p_exponent(int k, int r, int s);
/// Whether (r, s) lies in the tables' range for p_k: d >= 7 (d >= 8 for k = 3) and min(r, s) > k.
bool p_exponent_applicable(int k, int r, int s);

struct ExponentRow {
  int r = 0;
  int s = 0;
  Rational two_beta;
  // index k - 1 for k = 1, 2, 3
  std::vector<RestrictedSignature> restricted[3];
  std::optional<Rational> two_beta_k[3];
  std::optional<Rational> p[3];
};

struct ExponentTable {
  int d = 0;
  std::vector<ExponentRow> rows;  // r >= s, ordered by increasing r - s
};

ExponentTable exponent_table(int d);

struct BoundParameters {
  int d = 0;
  Rational beta;
  Float50 C_d;
  Float50 q;
  Float50 log_H;
  Float50 H;
  Float50 log_P;
  Float50 P;
  Float50 log_shell_radius;
  Float50 shell_radius;
  Float50 log_B;
  Float50 llcurly_exponent;
  Float50 log_theorem_rhs;
  Float50 theorem_rhs;
};

/// Bound parameters for maximal coefficient size q, dimension d and exponent beta.
/// Throws std::domain_error unless log log H > 0 and log log B > 0.
BoundParameters theorem_bound(const Float50& q, int d, const Rational& beta, const Float50& C_d = 1);
BoundParameters theorem_bound(const RealForm& form, const Float50& C_d = 1);

/// Whether a weighted norm lies inside the shell 4 d^3 P^2.
bool within_shell(const BoundParameters& b, const Float50& weighted_norm);

}  // namespace oppenheim
