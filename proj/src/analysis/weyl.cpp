#include "oppenheim/analysis/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>

namespace oppenheim::analysis {

namespace {

constexpr double two_pi = boost::math::constants::two_pi<double>();

// e(t) for t already reduced to [0, 1)
Complex unit(long double frac) {
  double t = two_pi * static_cast<double>(frac);
  return {std::cos(t), std::sin(t)};
}

long double fractional(long double t) { return t - std::floor(t); }

void require_positive_P(long double P) {
  if (!(P > 0) || !std::isfinite(P)) throw std::domain_error("P must be positive and finite");
}

void require_q(long double q) {
  if (q == 0 || !std::isfinite(q)) throw std::domain_error("q must be nonzero and finite");
}

}  // namespace

WeylRange weyl_range(long double q, long double P, int d) {
  require_q(q);
  require_positive_P(P);
  if (d < 1) throw std::domain_error("d must be positive");
  const long double aq = std::fabs(q), lo2 = P * P, hi2 = 4.0L * d * d * P * P;
  const long double root = std::sqrt(aq);
  WeylRange r;
  r.lo = static_cast<std::int64_t>(std::floor(P / root));
  while (r.lo > 0 && aq * r.lo * r.lo > lo2) --r.lo;
  while (!(aq * r.lo * r.lo > lo2)) ++r.lo;
  r.hi = static_cast<std::int64_t>(std::ceil(2.0L * d * P / root));
  while (!(aq * r.hi * r.hi < hi2)) --r.hi;
  while (aq * (r.hi + 1) * (r.hi + 1) < hi2) ++r.hi;
  return r;
}

Complex weyl_sum(long double q, long double alpha, long double P, int d) {
  const WeylRange r = weyl_range(q, P, d);
  const long double theta = fractional(alpha * q);
  long double re = 0, im = 0;
  for (std::int64_t m = r.lo; m <= r.hi; ++m) {
    auto mm = static_cast<long double>(m) * static_cast<long double>(m);
    Complex z = unit(fractional(theta * mm));
    re += z.real();
    im += z.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

Complex quadratic_phase_integral(long double alpha, long double a, long double b, std::int64_t max_panels) {
  if (!std::isfinite(alpha) || !std::isfinite(a) || !std::isfinite(b)) throw std::domain_error("oscillatory_integral needs finite arguments");
  if (a > b) return -quadratic_phase_integral(alpha, b, a, max_panels);
  if (a < 0) {
    // the integrand is even in xi
    if (b <= 0) return quadratic_phase_integral(alpha, -b, -a, max_panels);
    return quadratic_phase_integral(alpha, 0, -a, max_panels) + quadratic_phase_integral(alpha, 0, b, max_panels);
  }
  if (alpha == 0 || a == b) return {static_cast<double>(b - a), 0.0};

  using Rule = boost::math::quadrature::gauss<long double, 16>;
  static const auto& x = Rule::abscissa();
  static const auto& w = Rule::weights();

  // breakpoints where the phase |alpha| xi^2 crosses a multiple of 1/2
  const long double s = 2.0L * std::fabs(alpha);
  const long double k_lo = std::ceil(s * a * a), k_hi = std::floor(s * b * b);
  if (k_hi - k_lo + 2 > static_cast<long double>(max_panels))
    throw std::runtime_error("oscillatory_integral needs more than " + std::to_string(max_panels) + " panels");

  long double re = 0, im = 0;
  auto panel = [&](long double u, long double v) {
    if (v <= u) return;
    const long double mid = (u + v) / 2, half = (v - u) / 2;
    long double pr = 0, pi = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (int sign : {-1, 1}) {
        long double xi = mid + sign * half * x[i];
        Complex z = unit(fractional(alpha * xi * xi));
        pr += w[i] * z.real();
        pi += w[i] * z.imag();
      }
    }
    re += half * pr;
    im += half * pi;
  };

  long double left = a;
  for (long double k = k_lo; k <= k_hi; k += 1) {
    long double right = std::sqrt(k / s);
    if (right > b) right = b;
    panel(left, right);
    left = right;
  }
  panel(left, b);
  return {static_cast<double>(re), static_cast<double>(im)};
}

Complex oscillatory_integral(long double alpha, long double P, int d) {
  require_positive_P(P);
  if (d < 1) throw std::domain_error("d must be positive");
  return quadratic_phase_integral(alpha, P, 2.0L * d * P);
}

double envelope_ratio(long double alpha, long double P, int d) {
  const double value = std::abs(oscillatory_integral(alpha, P, d));
  long double scale = alpha == 0 ? P : std::min(P, 1.0L / (P * std::fabs(alpha)));
  return value / static_cast<double>(scale);
}

long double vdc_limit(long double q, long double P, int d) {
  require_q(q);
  require_positive_P(P);
  return 1.0L / (8.0L * d * P * std::sqrt(std::fabs(q)));
}

double vdc_residual(long double q, long double alpha, long double P, int d) {
  const long double top = vdc_limit(q, P, d);
  if (!(alpha > 0 && alpha < top)) throw std::domain_error("alpha outside the van der Corput range (0, 1/(8 d P |q|^{1/2}))");
  Complex S = weyl_sum(q, alpha, P, d);
  Complex I = oscillatory_integral(q > 0 ? alpha : -alpha, P, d);
  return std::abs(S - I / static_cast<double>(std::sqrt(std::fabs(q))));
}

Complex gauss_sum(std::int64_t a, std::int64_t y) {
  if (y < 1) throw std::domain_error("gauss_sum needs y >= 1");
  const int128 mod = y;
  int128 base = a % mod;
  if (base < 0) base += mod;
  long double re = 0, im = 0;
  for (std::int64_t m = 1; m <= y; ++m) {
    auto r = static_cast<std::int64_t>(base * m % mod * m % mod);
    long double t = boost::math::constants::two_pi<long double>() * r / y;
    re += std::cos(t);
    im += std::sin(t);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::int64_t approximation_bound(long double q, long double P, int d) {
  require_q(q);
  require_positive_P(P);
  auto N = static_cast<std::int64_t>(std::floor(8.0L * d * P / std::sqrt(std::fabs(q))));
  return N < 1 ? 1 : N;
}

double weyl_bound_ratio(long double q, long double alpha, long double P, int d, const ApproximationPair& pair) {
  require_q(q);
  if (!(P > 1)) throw std::domain_error("weyl_bound_ratio needs P > 1 so that log P > 0");
  if (pair.y < 1) throw std::domain_error("pair denominator must be positive");
  const long double root = std::sqrt(std::fabs(q));
  long double scale = P / root;
  if (pair.rho != 0) scale = std::min(scale, root / (P * std::fabs(pair.rho)));
  const long double bound = scale * std::log(P) / std::sqrt(static_cast<long double>(pair.y));
  return static_cast<double>(std::abs(weyl_sum(q, alpha, P, d)) / bound);
}

long double growth_u(long double P) {
  long double l = std::log(P + boost::math::constants::e<long double>());
  return l * l;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = n * t / threads; i < n * (t + 1) / threads; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

ScanMaximum reduce(const std::vector<ScanMaximum>& points) {
  ScanMaximum best;
  for (const auto& p : points)
    if (p.value > best.value) best = p;
  best.samples = points.size();
  return best;
}

}  // namespace

ScanMaximum vdc_scan(std::uint64_t seed, std::size_t samples, int d, long double P_max, unsigned threads) {
  if (!(P_max >= 1)) throw std::domain_error("P_max must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> unit01(0, 1);
  std::vector<ScanMaximum> points(samples);
  for (auto& p : points) {
    p.q = std::pow(10.0L, -1 + 3 * unit01(rng)) * (rng() % 2 ? 1 : -1);
    p.P = std::pow(P_max, unit01(rng));
    long double t = unit01(rng);
    p.alpha = vdc_limit(p.q, p.P, d) * (t > 0 ? t : 0.5L);
  }
  parallel_for(samples, threads, [&](std::size_t i) { points[i].value = vdc_residual(points[i].q, points[i].alpha, points[i].P, d); });
  return reduce(points);
}

ScanMaximum weyl_ratio_scan(std::uint64_t seed, long double q, long double P, std::size_t samples, int d, unsigned threads) {
  const long double lo = vdc_limit(q, P, d), hi = growth_u(P);
  const std::int64_t N = approximation_bound(q, P, d);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<long double> span(lo, hi);
  std::vector<ScanMaximum> points(samples);
  for (auto& p : points) {
    p.q = q;
    p.P = P;
    p.alpha = span(rng);
  }
  parallel_for(samples, threads, [&](std::size_t i) {
    auto& p = points[i];
    p.value = weyl_bound_ratio(q, p.alpha, P, d, dirichlet_pair(p.alpha * q, N));
  });
  return reduce(points);
}

}  // namespace oppenheim::analysis
