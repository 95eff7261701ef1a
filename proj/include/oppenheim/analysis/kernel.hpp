#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace oppenheim::analysis {

using GrowthFunction = std::function<long double(long double)>;

struct HatValue {
  long double value = 1;
  long double remainder_bound = 0;  // |value - hat(alpha)| for the exact infinite product
  std::int64_t explicit_factors = 0;
};

struct PsiGrid {
  std::vector<double> x;
  std::vector<double> psi;
  double spacing = 0;
};

/// Ingham-type kernel: hat(alpha) = prod_k sinc(pi a_k alpha), a_k = c / (k w(k)), sum_k a_k = 1.
/// psi is its inverse Fourier transform, a smooth even probability density supported in [-1/2, 1/2].
class KernelSpec {
 public:
  long double a(std::int64_t k) const;
  long double normalizer() const { return c_; }
  /// Certified bracket for sum_k a_k from the integral test on the tail.
  std::pair<long double, long double> mass_bracket() const { return mass_bracket_; }
  long double tolerance() const { return tolerance_; }
  long double u(long double alpha) const { return u_(alpha); }
  bool default_sequence() const { return default_; }

  long double hat(long double alpha) const { return hat_with_bound(alpha).value; }
  HatValue hat_with_bound(long double alpha) const;
  /// prod_k min(1, 1/(pi a_k |alpha|)), a nonincreasing majorant of |hat|.
  long double envelope(long double alpha) const;

  long double psi(long double x) const;
  /// psi on 'points' equispaced nodes of [-half_width, half_width) by an inverse FFT of hat(j / (2 half_width)).
  PsiGrid psi_grid(std::size_t points = std::size_t{1} << 16, long double half_width = 4) const;
  /// Largest delta with psi > 1/4 on [-delta, delta].
  long double delta() const;
  /// max of |hat(alpha)| exp(alpha / u(alpha)) over 'samples' equispaced alpha in [lo, hi].
  long double decay_maximum(long double lo = 1, long double hi = 1000, std::size_t samples = 100000) const;

  long double support_radius() const { return 0.5L; }

 private:
  friend KernelSpec make_kernel(const GrowthFunction& weight, const GrowthFunction& u, long double tolerance, std::int64_t terms,
                                bool is_default);
  long double weight(long double k) const { return weight_(k); }
  long double power_tail(int p, std::int64_t k0) const;

  GrowthFunction weight_;
  GrowthFunction u_;
  bool default_ = true;
  long double c_ = 1;
  long double tolerance_ = 0.05L;
  std::pair<long double, long double> mass_bracket_{1, 1};
  std::int64_t terms_ = 0;
  std::vector<long double> a_;                           // a_k, index k - 1
  std::vector<long double> suffix2_, suffix4_, suffix6_;  // sum_{j >= k} a_j^p, index k - 1
  std::vector<long double> series_;                      // hat(j / 8), j = 0..
};

/// Default kernel: a_k = c / (k log(k+2)^2), u(alpha) = log(alpha + e)^2.
KernelSpec ingham_kernel(long double tolerance = 0.05L, std::int64_t explicit_terms = 100000);

/// Custom growth: a_k = c / (k u(k)). Throws std::domain_error when u is not positive and increasing on the
/// sampled points or when int_1^inf d alpha / (alpha u(alpha)) does not visibly converge.
KernelSpec ingham_kernel(const GrowthFunction& u, long double tolerance = 0.05L, std::int64_t explicit_terms = 100000);

}  // namespace oppenheim::analysis
