#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "oppenheim/analysis/calibration.hpp"
#include "oppenheim/analysis/weyl.hpp"

using namespace oppenheim;
using namespace oppenheim::analysis;

namespace {

bool near(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

TEST_SUITE("weyl") {

TEST_CASE("weyl_range boundaries are strict") {
  WeylRange r = weyl_range(1, 4, 5);
  CHECK(r.lo == 5);
  CHECK(r.hi == 39);
  CHECK(weyl_range(4, 4, 5).lo == 3);
  CHECK(weyl_range(4, 4, 5).hi == 19);
  CHECK(weyl_range(2, 50, 5).lo == 36);
  CHECK(weyl_range(2, 50, 5).hi == 353);
  CHECK(weyl_range(1, 0.05L, 5).size() == 0);
}

TEST_CASE("weyl_sum examples") {
  CHECK(weyl_sum(1, 0, 4, 5) == Complex(35, 0));
  CHECK(weyl_sum(-3, 0, 10, 5).real() == weyl_range(-3, 10, 5).size());
  CHECK(near(weyl_sum(1, 1, 4, 5), weyl_sum(1, 0, 4, 5), 1e-12));
  CHECK(weyl_sum(1, 0.3L, 0.05L, 5) == Complex(0, 0));
  // high-precision oracle: direct summation at 40 digits
  Complex oracle(1.8678964750811974758, -4.3965148319487043332);
  CHECK(near(weyl_sum(2, 0.37L, 50, 5), oracle, 1e-10));
}

TEST_CASE("weyl_sum symmetry and periodicity") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 50; ++i) {
    long double alpha = u(rng);
    long double q = static_cast<long double>(1 + rng() % 9) * (rng() % 2 ? 1 : -1);
    Complex s = weyl_sum(q, alpha, 20, 5);
    CHECK(near(weyl_sum(q, -alpha, 20, 5), std::conj(s), 1e-9));
    CHECK(near(weyl_sum(q, alpha + 1, 20, 5), s, 1e-9));
  }
}

TEST_CASE("oscillatory_integral against Fresnel oracles") {
  CHECK(oscillatory_integral(0, 4, 5) == Complex(36, 0));
  Complex fresnel = quadratic_phase_integral(1, 0, 1000);
  CHECK(near(fresnel, Complex(0.24999999999366742602, 0.24992042252845405384), 1e-9 * std::abs(fresnel)));
  CHECK(near(fresnel, Complex(0.25, 0.25), 1e-3));
  Complex a = quadratic_phase_integral(0.01L, 3, 30);
  CHECK(near(a, Complex(-0.40781989568075603441, 1.6821027693877165815), 1e-9 * std::abs(a)));
  Complex b = quadratic_phase_integral(2.5L, 1, 10);
  CHECK(near(b, Complex(-0.00099969361176299199952, -0.034920471406927471592), 1e-9 * std::abs(b)));
  CHECK(near(quadratic_phase_integral(-2.5L, 1, 10), std::conj(b), 1e-15));
  CHECK(near(quadratic_phase_integral(2.5L, 10, 1), -b, 1e-15));
  CHECK_THROWS_AS(quadratic_phase_integral(1e6L, 0, 1e3L, 1000), std::runtime_error);
}

TEST_CASE("oscillatory_integral stays under the recorded envelope") {
  for (long double P : {2.0L, 10.0L, 50.0L}) {
    for (long double alpha = 1e-6L; alpha < 10; alpha *= 1.7L) {
      CHECK(envelope_ratio(alpha, P, 5) <= 9 * calibration::integral_envelope);
      CHECK(envelope_ratio(-alpha, P, 5) <= 9 * calibration::integral_envelope);
    }
    CHECK(envelope_ratio(0, P, 5) == doctest::Approx(9.0));
  }
  // far from the origin |I| ~ 1/(2 pi alpha P), well below the constant
  CHECK(envelope_ratio(5, 10, 5) < 1);
}

TEST_CASE("vdc_residual examples") {
  const long double top = vdc_limit(1, 100, 5);
  CHECK(vdc_residual(1, top * 1e-9L, 100, 5) <= 1.0 + 1e-9);
  CHECK(vdc_residual(1, top * (1 - 1e-12L), 100, 5) <= calibration::vdc_residual);
  double neg = vdc_residual(-3, vdc_limit(-3, 200, 5) / 2, 200, 5);
  CHECK(neg <= calibration::vdc_residual);
  CHECK_THROWS_AS(vdc_residual(1, top, 100, 5), std::domain_error);
  CHECK_THROWS_AS(vdc_residual(1, 0, 100, 5), std::domain_error);
  CHECK_THROWS_AS(vdc_residual(1, -top / 2, 100, 5), std::domain_error);
}

TEST_CASE("vdc scan is deterministic and independent of threads") {
  ScanMaximum a = vdc_scan(17, 300, 5, 100);
  ScanMaximum b = vdc_scan(17, 300, 5, 100, 3);
  CHECK(a.value == b.value);
  CHECK(a.alpha == b.alpha);
  CHECK(a.samples == 300);
  CHECK(a.value <= calibration::vdc_residual);
}

TEST_CASE("gauss_sum examples and magnitude law") {
  CHECK(near(gauss_sum(1, 1), Complex(1, 0), 1e-15));
  CHECK(near(gauss_sum(1, 3), Complex(1, 0) + 2.0 * std::polar(1.0, 2 * M_PI / 3), 1e-12));
  CHECK(std::abs(gauss_sum(1, 3)) == doctest::Approx(std::sqrt(3.0)));
  CHECK(near(gauss_sum(1, 4), Complex(2, 2), 1e-12));
  CHECK(near(gauss_sum(-1, 7), std::conj(gauss_sum(1, 7)), 1e-12));
  CHECK(near(gauss_sum(9, 7), gauss_sum(2, 7), 1e-12));
  CHECK_THROWS_AS(gauss_sum(1, 0), std::domain_error);
  for (std::int64_t y : {5, 11, 101, 499})
    for (std::int64_t a = 1; a < y; a += 7) CHECK(std::fabs(std::abs(gauss_sum(a, y)) - std::sqrt(double(y))) < 1e-9);
}

TEST_CASE("weyl_bound_ratio") {
  const long double P = 1000;
  const std::int64_t N = approximation_bound(1, P, 5);
  CHECK(N == 40000);
  ApproximationPair exact = dirichlet_pair(Rational(1, 7), N);
  double r0 = weyl_bound_ratio(1, 1.0L / 7, P, 5, exact);
  CHECK(std::isfinite(r0));
  CHECK(r0 > 0);
  long double alpha = 1.0L / 7 + 1e-6L;
  ApproximationPair p = dirichlet_pair(alpha, N);
  CHECK(p.y == 7);
  double r1 = weyl_bound_ratio(1, alpha, P, 5, p);
  CHECK(r1 <= calibration::weyl_ratio);
  CHECK_THROWS_AS(weyl_bound_ratio(1, alpha, 1, 5, p), std::domain_error);

  ScanMaximum s = weyl_ratio_scan(2024, 1, P, 200);
  CHECK(s.value <= calibration::weyl_ratio);
  CHECK(weyl_ratio_scan(2024, 1, P, 200).value == s.value);
}

}  // TEST_SUITE
