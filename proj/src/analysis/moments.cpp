#include "oppenheim/analysis/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <unsupported/Eigen/FFT>

namespace oppenheim::analysis {

namespace {

void require_range(std::int64_t lo, std::int64_t hi) {
  if (lo < 1 || hi < lo) throw std::domain_error("moment range needs 1 <= m_lo <= m_hi");
  if (hi > 3000000000LL) throw std::length_error("moment range too large for 64-bit square sums");
}

}  // namespace

std::vector<std::int64_t> r2_counts(std::int64_t N) {
  if (N < 1) throw std::domain_error("r2_counts needs N >= 1");
  if (N > 2000000000LL) throw std::length_error("r2_counts limited to N <= 2e9");
  std::vector<std::int64_t> r(static_cast<std::size_t>(N), 0);
  for (std::int64_t a = 0; a * a < N; ++a) {
    for (std::int64_t b = 0; a * a + b * b < N; ++b) {
      // each nonnegative (a, b) stands for its sign variants
      r[static_cast<std::size_t>(a * a + b * b)] += (a ? 2 : 1) * (b ? 2 : 1);
    }
  }
  return r;
}

std::int64_t r2_moment(std::int64_t N) {
  if (N < 2) throw std::domain_error("r2_moment needs N >= 2");
  auto r = r2_counts(N);
  std::int64_t total = 0;
  for (std::size_t n = 1; n < r.size(); ++n) total += r[n] * r[n];
  return total;
}

double r2_growth_ratio(std::int64_t N) {
  return static_cast<double>(r2_moment(N)) / (static_cast<double>(N) * std::log(static_cast<double>(N)));
}

std::int64_t fourth_moment_count(std::int64_t m_lo, std::int64_t m_hi) {
  require_range(m_lo, m_hi);
  std::vector<std::int64_t> sums;
  sums.reserve(static_cast<std::size_t>((m_hi - m_lo + 1) * (m_hi - m_lo + 1)));
  for (std::int64_t a = m_lo; a <= m_hi; ++a)
    for (std::int64_t b = m_lo; b <= m_hi; ++b) sums.push_back(a * a + b * b);
  std::sort(sums.begin(), sums.end());
  std::int64_t total = 0;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    auto c = static_cast<std::int64_t>(j - i);
    total += c * c;
    i = j;
  }
  return total;
}

double fourth_moment_integral(std::int64_t m_lo, std::int64_t m_hi) {
  require_range(m_lo, m_hi);
  const std::int64_t span = m_hi * m_hi - m_lo * m_lo;
  std::size_t M = 1;
  while (static_cast<std::int64_t>(M) <= 2 * span) M *= 2;
  if (M > (std::size_t{1} << 28)) throw std::length_error("fourth_moment_integral grid too large");
  // shifting by m_lo^2 multiplies the sum by a unimodular factor
  std::vector<std::complex<double>> h(M, 0.0), F;
  for (std::int64_t m = m_lo; m <= m_hi; ++m) h[static_cast<std::size_t>(m * m - m_lo * m_lo)] += 1.0;
  Eigen::FFT<double> fft;
  fft.fwd(F, h);
  long double acc = 0;
  for (const auto& z : F) {
    long double n2 = std::norm(z);
    acc += n2 * n2;
  }
  return static_cast<double>(acc / M);
}

}  // namespace oppenheim::analysis
