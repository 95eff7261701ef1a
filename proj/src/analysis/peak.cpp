#include "oppenheim/analysis/peak.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/FFT>

namespace oppenheim::analysis {

double peak_exponent(int k, int d) {
  if (d < 5) throw std::domain_error("peak exponent needs d >= 5");
  if (k < 1 || k > d) throw std::domain_error("peak index out of range");
  return 1.0 / std::min(k, d - 4);
}

namespace {

struct Extents {
  long double q_min, q_max, abs_det;
  int positive, negative;
};

Extents extents_of(const FloatForm& form) {
  Extents e{std::numeric_limits<long double>::infinity(), 0, 1, 0, 0};
  for (Eigen::Index j = 0; j < form.dim(); ++j) {
    long double a = std::fabs(form[j]);
    if (a == 0) throw std::domain_error("zero coefficients are not allowed here");
    e.q_min = std::min(e.q_min, a);
    e.q_max = std::max(e.q_max, a);
    e.abs_det *= a;
    (form[j] > 0 ? e.positive : e.negative) += 1;
  }
  return e;
}

int dyadic_exponent(long double v) {
  // smallest t with v <= 2^t
  int e = 0;
  long double f = std::frexp(v, &e);
  return f == 0.5L ? e - 1 : e;
}

}  // namespace

std::vector<PeakProfile> peak_profile(const FloatForm& form, long double P, const std::vector<long double>& alphas) {
  const int d = static_cast<int>(form.dim());
  const Extents ext = extents_of(form);
  const long double uP = growth_u(P);
  const long double j_lo = vdc_limit(ext.q_min, P, d);
  const long double logP = std::log(P);
  std::vector<PeakProfile> out;
  for (long double alpha : alphas) {
    if (!(alpha > 0)) throw std::domain_error("peak_profile needs alpha > 0");
    PeakProfile p;
    p.alpha = alpha;
    p.in_J = j_lo < alpha && alpha < uP;
    std::vector<long double> peaks;
    for (Eigen::Index j = 0; j < form.dim(); ++j) {
      const long double q = form[j];
      Complex S = weyl_sum(q, alpha, P, d);
      p.S_values.push_back(S);
      ApproximationPair pair = dirichlet_pair(q * alpha, approximation_bound(q, P, d));
      if (p.in_J && pair.x == 0) throw std::logic_error("numerator x_j vanished inside J at alpha = " + std::to_string(static_cast<double>(alpha)));
      p.dirichlet.push_back(pair);
      const long double v = std::sqrt(std::fabs(q)) * std::abs(S);
      peaks.push_back(v);
      if (v > 0) {
        int t = dyadic_exponent(v / P);
        p.T_exponent.emplace_back(t);
        if (std::ldexp(1.0L, t) >= 4.0L * d) p.diagnostics.push_back("T_" + std::to_string(j + 1) + " >= 4d");
      } else {
        p.T_exponent.emplace_back(std::nullopt);
      }
      int u = 0;
      while ((std::int64_t{1} << u) < pair.y) ++u;
      p.U_exponent.push_back(u);
      if (v > 0 && logP > 0) {
        long double T = std::ldexp(1.0L, *p.T_exponent.back());
        p.U_ratio.push_back(static_cast<double>(std::ldexp(1.0L, u) * T * T / (logP * logP)));
      } else {
        p.U_ratio.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    p.order.resize(peaks.size());
    std::iota(p.order.begin(), p.order.end(), 0);
    std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) { return peaks[a] < peaks[b]; });
    if (d >= 5 && p.in_J) {
      p.in_F = p.in_F_alt = true;
      for (int k = 1; k <= d; ++k) {
        const long double v = peaks[p.order[static_cast<std::size_t>(k - 1)]];
        const long double e = peak_exponent(k, d);
        if (!(v > P * std::pow(uP * uP * ext.q_max, -e))) p.in_F = false;
        if (!(v > P * std::pow(uP * ext.q_max, -e))) p.in_F_alt = false;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// 1/2 |Q|^{-1/2} int over [P, 2dP]^d of psi(sum_j sign_j xi_j^2), by convolving the cell masses of xi^2.
long double main_term(const Extents& ext, long double P, int d, const KernelSpec& kernel) {
  const long double a2 = P * P, b2 = 4.0L * d * d * P * P;
  const long double span = d * (b2 - a2);
  const std::size_t max_points = std::size_t{1} << 21;
  const long double tau = std::max(1.0L / 256, 1.01L * span / max_points);
  const auto bins = static_cast<std::size_t>(std::ceil((b2 - a2) / tau));
  std::size_t M = 1;
  while (M < static_cast<std::size_t>(d) * bins + 1) M *= 2;

  // xi-measure of each eta-cell: sqrt(eta_hi) - sqrt(eta_lo)
  std::vector<std::complex<double>> up(M, 0.0), down(M, 0.0);
  for (std::size_t k = 0; k < bins; ++k) {
    long double lo = a2 + k * tau, hi = std::min(b2, lo + tau);
    auto mass = static_cast<double>(std::sqrt(hi) - std::sqrt(lo));
    up[k] = mass;
    down[bins - 1 - k] = mass;
  }
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> U, D, prod(M), conv;
  fft.fwd(U, up);
  fft.fwd(D, down);
  for (std::size_t i = 0; i < M; ++i) prod[i] = std::pow(U[i], ext.positive) * std::pow(D[i], ext.negative);
  fft.inv(conv, prod);

  // the sum of d cells with indices k_j has center base + (sum k_j + d/2) tau
  const long double base = ext.positive * a2 - ext.negative * (a2 + bins * tau);
  long double acc = 0;
  for (std::size_t k = 0; k < M; ++k) {
    long double t = base + (k + d / 2.0L) * tau;
    if (std::fabs(t) < kernel.support_radius()) acc += conv[k].real() * kernel.psi(t);
  }
  return acc / (2 * std::sqrt(ext.abs_det));
}

}  // namespace

IntegralDecomposition integral_decomposition(const FloatForm& form, long double P, const KernelSpec& kernel, long double quad_tolerance) {
  const int d = static_cast<int>(form.dim());
  if (d < 2) throw std::domain_error("integral_decomposition needs d >= 2");
  const Extents ext = extents_of(form);
  const Box box = lattice_box(form, P);
  IntegralDecomposition out;
  out.cuts = {vdc_limit(ext.q_max, P, d), vdc_limit(ext.q_min, P, d), growth_u(P)};
  out.truncation = std::max(out.cuts[2], truncation_point(kernel, std::max<long double>(box.points, 1), quad_tolerance, &out.tail_bound));
  const std::array<long double, 5> edges{0, out.cuts[0], out.cuts[1], out.cuts[2], out.truncation};

  using Rule = boost::math::quadrature::gauss<long double, 16>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  const long double width = 1.0L / (box.value_bound() + 1);
  for (std::size_t r = 0; r < 4; ++r) {
    RangeContribution& c = out.ranges[r];
    c.lo = edges[r];
    c.hi = std::max(edges[r], edges[r + 1]);
    if (box.empty() || c.hi <= c.lo) continue;
    const auto panels = static_cast<std::int64_t>(std::ceil((c.hi - c.lo) / width));
    const long double h = (c.hi - c.lo) / panels;
    long double re = 0, ab = 0, bare = 0;
    for (std::int64_t i = 0; i < panels; ++i) {
      const long double mid = c.lo + (i + 0.5L) * h;
      for (std::size_t k = 0; k < x.size(); ++k) {
        for (int sign : {-1, 1}) {
          long double alpha = mid + sign * x[k] * h / 2;
          Complex F = weyl_product(form, alpha, P);
          long double K = kernel.hat(alpha);
          re += w[k] * F.real() * K;
          ab += w[k] * std::abs(F) * std::fabs(K);
          bare += w[k] * std::abs(F);
        }
      }
    }
    c.real_part = re * h / 2;
    c.absolute = ab * h / 2;
    if (r == 1) out.R2 = bare * h / 2;
  }

  out.M1 = box.empty() ? 0 : main_term(ext, P, d, kernel);
  if (ext.positive > 0 && ext.negative > 0)
    out.M1_lower = kernel.delta() / 16 / std::sqrt(ext.abs_det) * (std::sqrt(4.0L * d * (d - 1) + 7) - std::sqrt(4.0L * (d - 1))) / d *
                   std::pow(P, d - 2);
  out.R1 = out.ranges[0].real_part - out.M1;
  out.M2 = out.ranges[2].real_part;
  out.R3 = out.ranges[3].real_part;
  for (const auto& c : out.ranges) out.total_real += c.real_part;
  return out;
}

}  // namespace oppenheim::analysis
