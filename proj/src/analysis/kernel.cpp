#include "oppenheim/analysis/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

namespace oppenheim::analysis {

namespace {

constexpr long double pi = boost::math::constants::pi<long double>();
constexpr long double period = 8;       // psi is evaluated through its period-8 cosine series
constexpr long double series_cut = 1e-40L;
constexpr long double largest_alpha = 1e6L;

// int_{s0}^inf ds / w(e^s) over doubling segments; the remainder past the last segment is extrapolated
// geometrically. last_ratio receives the ratio of the last two segment integrals.
long double log_tail(const GrowthFunction& w, long double s0, long double* last_ratio = nullptr) {
  using GK = boost::math::quadrature::gauss_kronrod<long double, 31>;
  auto f = [&](long double s) { return 1.0L / w(std::exp(s)); };
  long double total = 0, prev = 0, last = 0, ratio = 0;
  for (long double lo = s0; 2 * lo <= 11000; lo *= 2) {
    last = GK::integrate(f, lo, 2 * lo, 12, 1e-16L);
    if (prev > 0) ratio = last / prev;
    total += last;
    prev = last;
  }
  if (last_ratio) *last_ratio = ratio;
  if (ratio > 0 && ratio < 1) total += last * ratio / (1 - ratio);
  return total;
}

// double precision is enough per factor: the product keeps ~1e-14 relative accuracy over a few thousand factors
long double sinc(long double x) {
  if (x == 0) return 1.0L;
  auto y = static_cast<double>(x);
  return std::sin(y) / y;
}

}  // namespace

KernelSpec make_kernel(const GrowthFunction& weight, const GrowthFunction& u, long double tolerance, std::int64_t terms, bool is_default) {
  if (!(tolerance > 0 && tolerance < 1)) throw std::domain_error("truncation tolerance must lie in (0, 1)");
  if (terms < 100) throw std::domain_error("at least 100 explicit kernel terms are required");
  KernelSpec k;
  k.weight_ = weight;
  k.u_ = u;
  k.default_ = is_default;
  k.tolerance_ = tolerance;
  k.terms_ = terms;

  long double ratio = 0;
  const auto K = static_cast<long double>(terms);
  long double head = 0;
  for (std::int64_t j = terms; j >= 1; --j) head += 1.0L / (j * weight(static_cast<long double>(j)));
  const long double tail = log_tail(weight, std::log(K + 0.5L), &ratio);
  if (!is_default && !(ratio > 0 && ratio <= 0.9L))
    throw std::domain_error("growth function fails the integrability condition: tail increments shrink by a factor " +
                            std::to_string(static_cast<double>(ratio)) + " per doubling");
  k.c_ = 1.0L / (head + tail);
  // integral test: int_{K+1}^inf <= sum_{k > K} <= int_K^inf
  k.mass_bracket_ = {k.c_ * (head + log_tail(weight, std::log(K + 1))), k.c_ * (head + log_tail(weight, std::log(K)))};

  k.a_.resize(static_cast<std::size_t>(terms));
  for (std::int64_t j = 1; j <= terms; ++j) k.a_[static_cast<std::size_t>(j - 1)] = k.c_ / (j * weight(static_cast<long double>(j)));
  for (std::int64_t j = 1; j < terms; ++j)
    if (!(k.a(j + 1) < k.a(j))) throw std::domain_error("kernel sequence a_k is not strictly decreasing at k = " + std::to_string(j));

  const auto n = static_cast<std::size_t>(terms);
  k.suffix2_.assign(n + 1, 0);
  k.suffix4_.assign(n + 1, 0);
  k.suffix6_.assign(n + 1, 0);
  k.suffix2_[n] = k.power_tail(2, terms + 1);
  k.suffix4_[n] = k.power_tail(4, terms + 1);
  k.suffix6_[n] = k.power_tail(6, terms + 1);
  for (std::size_t i = n; i-- > 0;) {
    long double a = k.a(static_cast<std::int64_t>(i + 1)), a2 = a * a;
    k.suffix2_[i] = k.suffix2_[i + 1] + a2;
    k.suffix4_[i] = k.suffix4_[i + 1] + a2 * a2;
    k.suffix6_[i] = k.suffix6_[i + 1] + a2 * a2 * a2;
  }

  for (std::int64_t j = 0;; ++j) {
    long double alpha = j / period;
    if (j > 0 && k.envelope(alpha) < series_cut) break;
    k.series_.push_back(k.hat(alpha));
  }
  return k;
}

KernelSpec ingham_kernel(long double tolerance, std::int64_t explicit_terms) {
  auto weight = [](long double k) {
    long double l = std::log(k + 2);
    return l * l;
  };
  auto u = [](long double alpha) {
    long double l = std::log(alpha + boost::math::constants::e<long double>());
    return l * l;
  };
  return make_kernel(weight, u, tolerance, explicit_terms, true);
}

KernelSpec ingham_kernel(const GrowthFunction& u, long double tolerance, std::int64_t explicit_terms) {
  if (!u) throw std::domain_error("growth function is empty");
  long double prev = 0;
  for (long double alpha = 1; alpha < 1e300L; alpha *= 4) {
    long double v = u(alpha);
    if (!(v > 0) || !std::isfinite(v)) throw std::domain_error("growth function must be positive and finite");
    if (!(v > prev)) throw std::domain_error("growth function must be increasing");
    prev = v;
  }
  return make_kernel(u, u, tolerance, explicit_terms, false);
}

long double KernelSpec::a(std::int64_t k) const {
  if (k < 1) throw std::domain_error("kernel index starts at 1");
  if (k <= static_cast<std::int64_t>(a_.size())) return a_[static_cast<std::size_t>(k - 1)];
  const auto x = static_cast<long double>(k);
  return c_ / (x * weight(x));
}

long double KernelSpec::power_tail(int p, std::int64_t k0) const {
  if (k0 <= terms_ && !suffix2_.empty()) {
    const auto i = static_cast<std::size_t>(k0 - 1);
    return p == 2 ? suffix2_[i] : p == 4 ? suffix4_[i] : suffix6_[i];
  }
  // sum_{k >= k0} a_k^p ~ int_{k0 - 1/2}^inf (c / (x w(x)))^p dx, in s = log x
  using GK = boost::math::quadrature::gauss_kronrod<long double, 31>;
  const long double s0 = std::log(static_cast<long double>(k0) - 0.5L);
  auto f = [&](long double s) { return std::pow(c_ / weight(std::exp(s)), p) * std::exp((1 - p) * s); };
  return GK::integrate(f, s0, s0 + 60.0L / (p - 1), 15, 1e-18L);
}

HatValue KernelSpec::hat_with_bound(long double alpha) const {
  alpha = std::fabs(alpha);
  HatValue out;
  if (alpha == 0) return out;
  if (alpha > largest_alpha) {
    out.value = 0;
    out.remainder_bound = envelope(alpha);
    return out;
  }
  const long double y = pi * alpha;
  long double prod = 1;
  std::int64_t k = 1;
  for (;; ++k) {
    long double x = y * a(k);
    if (x < tolerance_) break;
    prod *= sinc(x);
  }
  out.explicit_factors = k - 1;
  const long double y2 = y * y;
  const long double t2 = power_tail(2, k), t4 = power_tail(4, k), t6 = power_tail(6, k);
  // log sinc x = -x^2/6 - x^4/180 - x^6/2835 - x^8/37800 - ...
  const long double log_rest = -y2 * t2 / 6 - y2 * y2 * t4 / 180 - y2 * y2 * y2 * t6 / 2835;
  out.value = prod * std::exp(log_rest);
  const long double tol2 = tolerance_ * tolerance_;
  const long double dropped = 1.01L * tol2 * tol2 * tol2 * y2 * t2 / 37800;
  out.remainder_bound = std::fabs(out.value) * std::expm1(dropped);
  return out;
}

long double KernelSpec::envelope(long double alpha) const {
  alpha = std::fabs(alpha);
  long double out = 1;
  for (std::int64_t k = 1;; ++k) {
    long double x = pi * a(k) * alpha;
    if (x <= 1) break;
    out /= x;
  }
  return out;
}

long double KernelSpec::psi(long double x) const {
  x = std::fabs(x);
  if (x >= support_radius()) return 0;
  // cos(j t) by repeated rotation
  const long double t = 2 * pi * x / period;
  const std::complex<long double> step(std::cos(t), std::sin(t));
  std::complex<long double> z = step;
  long double sum = series_[0];
  for (std::size_t j = 1; j < series_.size(); ++j) {
    sum += 2 * series_[j] * z.real();
    z *= step;
  }
  return sum / period;
}

PsiGrid KernelSpec::psi_grid(std::size_t points, long double half_width) const {
  if (points < 16 || (points & (points - 1)) != 0) throw std::domain_error("psi_grid needs a power-of-two point count >= 16");
  if (!(half_width >= 1)) throw std::domain_error("psi_grid half width must be >= 1 to contain the support");
  const long double L = 2 * half_width;
  std::vector<std::complex<double>> spectrum(points, 0.0), values;
  const auto half = static_cast<std::int64_t>(points / 2);
  for (std::int64_t j = 0; j < half; ++j) {
    long double alpha = j / L;
    if (j > 0 && envelope(alpha) < 1e-60L) break;
    double v = static_cast<double>(hat(alpha)) * (j % 2 ? -1.0 : 1.0);
    spectrum[static_cast<std::size_t>(j)] = v;
    if (j > 0) spectrum[points - static_cast<std::size_t>(j)] = v;
  }
  Eigen::FFT<double> fft;
  fft.inv(values, spectrum);
  PsiGrid grid;
  grid.spacing = static_cast<double>(L / points);
  grid.x.resize(points);
  grid.psi.resize(points);
  const double scale = static_cast<double>(points / L);
  for (std::size_t n = 0; n < points; ++n) {
    grid.x[n] = static_cast<double>(-half_width + n * (L / points));
    grid.psi[n] = values[n].real() * scale;
  }
  return grid;
}

long double KernelSpec::delta() const {
  const int steps = 4000;
  const long double h = support_radius() / steps;
  long double lo = 0, hi = support_radius();
  for (int i = 1; i <= steps; ++i) {
    if (psi(i * h) <= 0.25L) {
      lo = (i - 1) * h;
      hi = i * h;
      break;
    }
  }
  for (int it = 0; it < 60; ++it) {
    long double mid = (lo + hi) / 2;
    (psi(mid) > 0.25L ? lo : hi) = mid;
  }
  return lo;
}

long double KernelSpec::decay_maximum(long double lo, long double hi, std::size_t samples) const {
  if (!(hi > lo) || samples < 2) throw std::domain_error("decay_maximum needs lo < hi and at least two samples");
  long double best = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    long double alpha = lo + (hi - lo) * i / (samples - 1);
    best = std::max(best, std::fabs(hat(alpha)) * std::exp(alpha / u(alpha)));
  }
  return best;
}

}  // namespace oppenheim::analysis
