#pragma once

#include <cstdint>
#include <vector>

#include "oppenheim/analysis/kernel.hpp"
#include "oppenheim/analysis/weyl.hpp"
#include "oppenheim/forms.hpp"

namespace oppenheim::analysis {

/// The lattice box P < |q_j|^{1/2} m_j < 2dP, m_j > 0, of a form.
struct Box {
  std::vector<WeylRange> ranges;
  long double points = 0;     // product of the range sizes
  long double value_min = 0;  // min Q[m] over the box (0 when empty)
  long double value_max = 0;
  long double value_bound() const;  // max |Q[m]|
  bool empty() const { return points == 0; }
};

Box lattice_box(const FloatForm& form, long double P);

/// prod_j S_j(alpha), with one Weyl sum per distinct coefficient.
Complex weyl_product(const FloatForm& form, long double alpha, long double P);

/// Smallest integer A >= 1 with scale * int_A^inf envelope <= tolerance; tail receives the bound used.
long double truncation_point(const KernelSpec& kernel, long double scale, long double tolerance, long double* tail = nullptr);

struct IdentityResult {
  long double lhs = 0;      // 1/2 sum_box psi(Q[m])
  long double rhs = 0;      // Re int_0^A prod_j S_j(alpha) hat(alpha) d alpha
  long double box_sum = 0;  // sum_box psi(Q[m]) = 2 lhs
  long double truncation = 0;
  long double step = 0;
  std::int64_t nodes = 0;
  long double tail_bound = 0;
  long double box_points = 0;
  std::int64_t support_points = 0;  // m with |Q[m]| < 1/2
  long double value_bound = 0;
  long double difference() const { return lhs - rhs; }
};

struct IdentityOptions {
  long double quad_tolerance = 1e-6L;
  std::int64_t max_half_entries = 4000000;
};

/// Both sides of the smoothed counting identity. The integral uses the trapezoid rule with step
/// h <= 1/(max|Q| + 1), which is exact on the whole line because psi vanishes outside (-1/2, 1/2);
/// only the truncation at A contributes error, bounded by tail_bound.
IdentityResult smoothed_count_identity(const FloatForm& form, long double P, const KernelSpec& kernel,
                                       const IdentityOptions& options = {});

}  // namespace oppenheim::analysis
