#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "oppenheim/analysis/calibration.hpp"
#include "oppenheim/analysis/kernel.hpp"

using namespace oppenheim::analysis;

namespace {

const KernelSpec& kernel() {
  static const KernelSpec k = ingham_kernel();
  return k;
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("sequence and normalization") {
  const KernelSpec& k = kernel();
  CHECK(k.normalizer() == doctest::Approx(0.529660490393711752).epsilon(1e-12));
  auto [lo, hi] = k.mass_bracket();
  CHECK(lo <= 1);
  CHECK(hi >= 1);
  CHECK(hi - lo < 1e-7);
  CHECK(k.a(1) == doctest::Approx(k.normalizer() / std::pow(std::log(3.0L), 2)));
  for (std::int64_t j = 1; j < 1000; ++j) CHECK(k.a(j + 1) < k.a(j));
  CHECK_THROWS_AS(k.a(0), std::domain_error);
}

TEST_CASE("hat values against the high-precision product") {
  const KernelSpec& k = kernel();
  CHECK(k.hat(0) == 1);
  CHECK(std::fabs(k.hat(1e-9L) - 1) < 1e-12);
  // mpmath: 10^6 explicit factors at 30 digits plus the quadratic tail
  CHECK(k.hat(1) == doctest::Approx(0.680459306721268887).epsilon(1e-12));
  CHECK(k.hat(10) == doctest::Approx(-0.00301367544002922405).epsilon(1e-12));
  for (long double alpha : {0.3L, 2.0L, 7.5L, 40.0L, 333.0L}) {
    CHECK(k.hat(-alpha) == k.hat(alpha));
    HatValue h = k.hat_with_bound(alpha);
    CHECK(h.remainder_bound <= 1e-12 * std::fabs(h.value));
    CHECK(std::fabs(h.value) <= k.envelope(alpha));
  }
}

TEST_CASE("truncation tolerance only moves the remainder") {
  KernelSpec coarse = ingham_kernel(0.2L);
  for (long double alpha : {0.5L, 3.0L, 20.0L}) {
    HatValue a = kernel().hat_with_bound(alpha), b = coarse.hat_with_bound(alpha);
    CHECK(b.explicit_factors <= a.explicit_factors);
    CHECK(std::fabs(a.value - b.value) <= a.remainder_bound + b.remainder_bound + 1e-15L * std::fabs(a.value));
  }
}

TEST_CASE("decay below the recorded constant") {
  const KernelSpec& k = kernel();
  CHECK(k.decay_maximum(1, 1000, 20000) <= calibration::kernel_decay);
  for (long double alpha = 1; alpha < 1000; alpha *= 1.5L) CHECK(k.envelope(alpha * 1.5L) <= k.envelope(alpha));
}

TEST_CASE("psi on the grid") {
  const KernelSpec& k = kernel();
  PsiGrid g = k.psi_grid();
  REQUIRE(g.x.size() == 65536);
  CHECK(g.x.front() == -4.0);
  double mass = 0, low = 0, far = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    mass += g.psi[i] * g.spacing;
    low = std::min(low, g.psi[i]);
    if (std::fabs(g.x[i]) >= 1.05) far = std::max(far, std::fabs(g.psi[i]));
  }
  CHECK(std::fabs(mass - 1) < 1e-3);
  CHECK(low >= -1e-6);
  CHECK(far <= 1e-6);
  // the series evaluator agrees with the FFT grid
  for (std::size_t i = 0; i < g.x.size(); i += 997) CHECK(std::fabs(g.psi[i] - static_cast<double>(k.psi(g.x[i]))) < 1e-10);
  PsiGrid narrow = k.psi_grid(1 << 12, 2);
  CHECK(narrow.x.front() == -2.0);
}

TEST_CASE("psi shape") {
  const KernelSpec& k = kernel();
  CHECK(k.psi(0) >= 0.5);
  CHECK(k.psi(0.5L) == 0);
  CHECK(k.psi(-0.7L) == 0);
  CHECK(k.psi(0.3L) == k.psi(-0.3L));
  long double delta = k.delta();
  CHECK(delta > 0);
  CHECK(delta < 0.5);
  CHECK(k.psi(delta * 0.999L) > 0.25L);
  CHECK(k.psi(delta * 1.001L) <= 0.25L);
}

TEST_CASE("custom growth functions") {
  KernelSpec cube = ingham_kernel([](long double a) { return std::pow(std::log(a + 3), 3.0L); });
  CHECK(cube.hat(0) == 1);
  CHECK_FALSE(cube.default_sequence());
  auto [lo, hi] = cube.mass_bracket();
  CHECK(lo <= 1);
  CHECK(hi >= 1);
  CHECK_THROWS_AS(ingham_kernel([](long double a) { return std::log(a + 3); }), std::domain_error);
  CHECK_THROWS_AS(ingham_kernel([](long double) { return 2.0L; }), std::domain_error);
  CHECK_THROWS_AS(ingham_kernel([](long double a) { return -a; }), std::domain_error);
  CHECK_THROWS_AS(ingham_kernel(0), std::domain_error);
}

}  // TEST_SUITE
