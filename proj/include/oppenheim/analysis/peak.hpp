#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "oppenheim/analysis/identity.hpp"
#include "oppenheim/dirichlet.hpp"

namespace oppenheim::analysis {

struct PeakProfile {
  long double alpha = 0;
  std::vector<Complex> S_values;
  std::vector<ApproximationPair> dirichlet;  // pairs of q_j alpha with N_j = floor(8 d P |q_j|^{-1/2})
  std::vector<std::optional<int>> T_exponent;  // T_j = 2^t: T_j P / 2 < |q_j|^{1/2} |S_j| <= T_j P; empty when S_j = 0
  std::vector<int> U_exponent;                 // U_j = 2^u: U_j / 2 < y_j <= U_j
  std::vector<std::size_t> order;              // indices sorted by |q_j|^{1/2} |S_j| ascending
  bool in_J = false;
  bool in_F = false;      // thresholds P (u(P)^2 q)^{-i(k)}
  bool in_F_alt = false;  // thresholds P (u(P) q)^{-i(k)}
  std::vector<double> U_ratio;  // U_j T_j^2 / (log P)^2
  std::vector<std::string> diagnostics;
};

/// i(k) = 1 / min(k, d - 4) for the k-th smallest peak, k = 1..d; needs d >= 5.
double peak_exponent(int k, int d);

/// Profiles at each alpha in (0, u(P)). Throws std::domain_error for alpha <= 0 and std::logic_error if a
/// numerator x_j vanishes inside J.
std::vector<PeakProfile> peak_profile(const FloatForm& form, long double P, const std::vector<long double>& alphas);

struct RangeContribution {
  long double lo = 0;
  long double hi = 0;
  long double real_part = 0;  // Re int prod S_j K
  long double absolute = 0;   // int |prod S_j K|
};

/// The four ranges (0, c1), (c1, c2), (c2, u(P)), (u(P), A) with c1 = (8dP)^{-1} q^{-1/2}, c2 = (8dP)^{-1} q0^{-1/2}.
struct IntegralDecomposition {
  std::array<long double, 3> cuts{};
  std::array<RangeContribution, 4> ranges{};
  long double M1 = 0;  // |Q|^{-1/2} Re int_0^inf prod I(+-alpha) K, from the volume integral of psi
  long double M1_lower = 0;  // (delta / 16) |Q|^{-1/2} (sqrt(4d(d-1)+7) - sqrt(4(d-1))) / d P^{d-2}
  long double R1 = 0;  // range 1 real part - M1
  long double R2 = 0;  // int over range 2 of |prod S_j|
  long double M2 = 0;  // range 3 real part
  long double R3 = 0;  // range 4 real part
  long double total_real = 0;  // sum of the real parts, equal to 1/2 sum_box psi(Q[m]) up to quadrature error
  long double truncation = 0;
  long double tail_bound = 0;
};

IntegralDecomposition integral_decomposition(const FloatForm& form, long double P, const KernelSpec& kernel,
                                             long double quad_tolerance = 1e-6L);

}  // namespace oppenheim::analysis
