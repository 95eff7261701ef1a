#pragma once

#include <cstdint>
#include <vector>

namespace oppenheim::analysis {

/// r(n) for 0 <= n < N: signed, ordered representations n = a^2 + b^2, so r(1) = 4.
std::vector<std::int64_t> r2_counts(std::int64_t N);

/// sum_{1 <= n < N} r(n)^2. Requires N >= 2.
std::int64_t r2_moment(std::int64_t N);

/// r2_moment(N) / (N log N).
double r2_growth_ratio(std::int64_t N);

/// Number of (v1, v2, w1, w2) in [m_lo, m_hi]^4 with v1^2 + v2^2 = w1^2 + w2^2. Requires 1 <= m_lo <= m_hi.
std::int64_t fourth_moment_count(std::int64_t m_lo, std::int64_t m_hi);

/// int_0^1 |sum_{m_lo <= m <= m_hi} e(theta m^2)|^4 d theta, computed exactly up to rounding by an FFT
/// on M > 2 (m_hi^2 - m_lo^2) equispaced points.
double fourth_moment_integral(std::int64_t m_lo, std::int64_t m_hi);

}  // namespace oppenheim::analysis
