#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "oppenheim/dirichlet.hpp"

namespace oppenheim::analysis {

using Complex = std::complex<double>;

/// Integers m with P < |q|^{1/2} m < 2dP. Empty when lo > hi.
struct WeylRange {
  std::int64_t lo = 1;
  std::int64_t hi = 0;
  std::int64_t size() const { return hi >= lo ? hi - lo + 1 : 0; }
};

WeylRange weyl_range(long double q, long double P, int d);

/// S(alpha) = sum over the Weyl range of e(alpha q m^2), summed directly.
Complex weyl_sum(long double q, long double alpha, long double P, int d);

/// int_a^b e(alpha xi^2) d xi. Panels keep the phase change <= pi, 16-point Gauss-Legendre on each.
/// Throws std::runtime_error when more than max_panels panels would be needed.
Complex quadratic_phase_integral(long double alpha, long double a, long double b, std::int64_t max_panels = 20000000);

/// I(alpha) = int_P^{2dP} e(alpha xi^2) d xi.
Complex oscillatory_integral(long double alpha, long double P, int d);

/// |I(alpha)| / min(P, 1/(P |alpha|)).
double envelope_ratio(long double alpha, long double P, int d);

/// Upper end of the admissible range 0 < alpha < 1/(8 d P |q|^{1/2}).
long double vdc_limit(long double q, long double P, int d);

/// |S(alpha) - |q|^{-1/2} I(sign(q) alpha)| for admissible alpha; std::domain_error otherwise.
double vdc_residual(long double q, long double alpha, long double P, int d);

/// G(a, y) = sum_{m=1}^{y} e(a m^2 / y), with the phase reduced exactly.
Complex gauss_sum(std::int64_t a, std::int64_t y);

/// |S(alpha)| / (y^{-1/2} log P min(P |q|^{-1/2}, |q|^{1/2} / (P |rho|))) for the pair of theta = q alpha.
/// When rho = 0 the second argument of the min is dropped.
double weyl_bound_ratio(long double q, long double alpha, long double P, int d, const ApproximationPair& pair);

/// Denominator bound N = floor(8 d P |q|^{-1/2}) used for the pairs of q alpha.
std::int64_t approximation_bound(long double q, long double P, int d);

/// u(P) = log(P + e)^2.
long double growth_u(long double P);

/// Largest value seen by a seeded scan, with the sample that produced it.
struct ScanMaximum {
  double value = 0;
  long double q = 0;
  long double alpha = 0;
  long double P = 0;
  std::size_t samples = 0;
};

/// Max of vdc_residual over seeded admissible (q, alpha, P): |q| log-uniform in [1/10, 100] with random sign,
/// P log-uniform in [1, P_max], alpha uniform in the admissible range.
ScanMaximum vdc_scan(std::uint64_t seed, std::size_t samples = 10000, int d = 5, long double P_max = 1000, unsigned threads = 1);

/// Max of weyl_bound_ratio over seeded alpha uniform in (1/(8 d P |q|^{1/2}), u(P)).
ScanMaximum weyl_ratio_scan(std::uint64_t seed, long double q, long double P, std::size_t samples = 1000, int d = 5, unsigned threads = 1);

/// Runs body(i) for i in [0, n) over `threads` contiguous blocks.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace oppenheim::analysis
