#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oppenheim/exponents.hpp"
#include "oppenheim/forms.hpp"
#include "oppenheim/rational.hpp"

namespace oppenheim {

enum class SolveMethod { automatic, shell, rational };
enum class CertificateMethod { shell_enumeration, rational_reduction };

struct SearchStats {
  std::int64_t shells = 0;     // radius doublings
  std::int64_t nodes = 0;      // half-list entries generated
  std::int64_t pairs = 0;      // candidate pairs examined
  std::int64_t undecided = 0;  // candidates skipped at the precision cap
  double radius = 0;           // last weighted-norm radius searched, input units
  bool fallback = false;       // strategy B failed and strategy A ran
  double wall_ms = 0;          // timing, excluded from determinism checks
};

struct SolutionCertificate {
  std::vector<std::string> coeffs;
  std::string epsilon;
  IntVector m;
  Float50 q_value;
  Float50 weighted_norm;
  std::optional<BoundParameters> bound;
  // weighted norm / epsilon inside the shell 4 d^3 P^2; empty when the bound is undefined
  std::optional<bool> within_theorem_bound;
  // weighted norm / epsilon <= B^{1 + 20 d^2 / log log B}
  std::optional<bool> within_llcurly;
  CertificateMethod method = CertificateMethod::shell_enumeration;
  SearchStats stats;
  std::vector<int> below_ee;
};

struct SolveOptions {
  long double budget = 1e6;  // bound on sum |q_i| m_i^2
  SolveMethod method = SolveMethod::automatic;
  Float50 C_d = 1;
  std::int64_t denominator = 1000000;  // strategy B common denominator
  std::int64_t max_entries = std::int64_t(1) << 25;
};

/// No solution with weighted norm <= radius exists.
class CertifiedEmpty : public std::runtime_error {
 public:
  CertifiedEmpty(const std::string& what, long double radius, SearchStats stats)
      : std::runtime_error(what), radius(radius), stats(stats) {}
  long double radius;
  SearchStats stats;
};

/// Nonzero m of least weighted norm with |Q[m]| < epsilon, m >= 0 entrywise.
/// Ties go to the lexicographically greatest m. Strategy A is exact up to the budget.
SolutionCertificate solve(const RealForm& form, const Coefficient& epsilon, const SolveOptions& options = {});

struct Verification {
  bool valid = false;
  bool indeterminate = false;  // |Q[m]| < epsilon undecided at the precision cap
  mpfr_prec_t bits = 0;
  std::vector<std::string> issues;
};

/// Re-derives Q[m], the weighted norm and the bound flags, doubling precision from start_bits up to
/// max(512, start_bits) bits.
Verification verify_certificate(const SolutionCertificate& cert, const RealForm& form, const Coefficient& epsilon,
                                const Float50& C_d = 1, mpfr_prec_t start_bits = 256);

std::string to_string(CertificateMethod method);
CertificateMethod parse_certificate_method(const std::string& text);

}  // namespace oppenheim
