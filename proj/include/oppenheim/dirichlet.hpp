#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "oppenheim/expression.hpp"
#include "oppenheim/numeric.hpp"

namespace oppenheim {

/// theta = x / y + rho with gcd(|x|, y) = 1, 0 < y <= bound_N and |rho| < 1 / (y bound_N).
struct ApproximationPair {
  std::int64_t x = 0;
  std::int64_t y = 1;
  long double rho = 0;
  bool exact = false;  // rho == 0 exactly
  std::int64_t bound_N = 1;
};

/// Last continued-fraction convergent of theta with denominator <= N.
/// Irrational theta is expanded from MPFR enclosures, refined until the expansion is certain.
ApproximationPair dirichlet_pair(const Coefficient& theta, std::int64_t N);
ApproximationPair dirichlet_pair(const Rational& theta, std::int64_t N);
ApproximationPair dirichlet_pair(long double theta, std::int64_t N);

/// Certifies the pair invariants for theta, with outward rounding when theta is irrational.
bool check_pair(const Coefficient& theta, const ApproximationPair& pair);

struct ApproximantCount {
  std::int64_t count = 0;
  bool all_same_ratio = true;
  long double threshold = 0;  // 24 eta X
  bool dichotomy = false;     // count < threshold || all_same_ratio
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;  // (x, y)
};

/// All integer (x, y) with 0 < |x| < X and |theta x - y| < eta.
ApproximantCount count_approximants(const Coefficient& theta, const Coefficient& eta, const Coefficient& X,
                                    std::int64_t max_x = 50000000);

enum class FactorOrder {
  consistent,  // x = |x_ref| / gcd(x_ref, prod B_i), y = y_ref / gcd(y_ref, prod A_i)
  displayed,   // x = |x_ref| / gcd(x_ref, prod A_i), y = y_ref / gcd(y_ref, prod B_i)
};

struct CouplingFactorization {
  std::size_t ref_index = 0;
  FactorOrder order = FactorOrder::consistent;
  std::vector<std::pair<BigInt, BigInt>> ratios;  // (A_i, B_i) coprime, B_i > 0
  BigInt x = 0;
  BigInt y = 0;
  BigInt L = 1;
  std::vector<std::pair<BigInt, BigInt>> primed;  // (x_i', y_i') with sign carried by x_i'
  bool reconstructed = false;
  bool divides_L = false;
  bool coprime = false;
  std::string failure;

  bool coupled() const { return reconstructed && divides_L && coprime; }
};

/// Factors the pairs through a common (x, y) relative to the reference pair.
/// Reconstruction failure is reported in the result, not thrown.
CouplingFactorization coupling_factorize(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, std::size_t ref_index,
                                         FactorOrder order = FactorOrder::consistent);
CouplingFactorization coupling_factorize(const std::vector<ApproximationPair>& pairs, std::size_t ref_index,
                                         FactorOrder order = FactorOrder::consistent);

}  // namespace oppenheim
