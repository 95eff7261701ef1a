#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "oppenheim/analysis/peak.hpp"

using namespace oppenheim;
using namespace oppenheim::analysis;

TEST_SUITE("peak") {

TEST_CASE("peak exponent") {
  CHECK(peak_exponent(1, 5) == 1);
  CHECK(peak_exponent(5, 5) == 1);
  CHECK(peak_exponent(2, 7) == 0.5);
  CHECK(peak_exponent(6, 7) == doctest::Approx(1.0 / 3));
  CHECK_THROWS_AS(peak_exponent(1, 4), std::domain_error);
  CHECK_THROWS_AS(peak_exponent(0, 5), std::domain_error);
}

TEST_CASE("profile at P = 100") {
  FloatForm f{1, 1, 1, 1, -1};
  auto prof = peak_profile(f, 100, {0.25L, 1e-4L, 1.0L / 7});
  REQUIRE(prof.size() == 3);

  const PeakProfile& p = prof[0];
  CHECK(p.in_J);
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(p.dirichlet[j].x != 0);
    CHECK(p.dirichlet[j].y == 4);
    REQUIRE(p.T_exponent[j].has_value());
    long double T = std::ldexp(1.0L, *p.T_exponent[j]);
    long double v = std::abs(p.S_values[j]) / 100.0L;
    CHECK(T / 2 < v);
    CHECK(v <= T);
    long double U = std::ldexp(1.0L, p.U_exponent[j]);
    CHECK(U / 2 < p.dirichlet[j].y);
    CHECK(p.dirichlet[j].y <= U);
  }
  CHECK(p.dirichlet[4].x == -1);

  CHECK_FALSE(prof[1].in_J);
  CHECK_FALSE(prof[1].in_F);
  CHECK(prof[2].in_J);

  auto again = peak_profile(f, 100, {0.25L});
  CHECK(again[0].T_exponent == p.T_exponent);
  CHECK(again[0].U_exponent == p.U_exponent);
  CHECK(again[0].in_F == p.in_F);

  CHECK_THROWS_AS(peak_profile(f, 100, {0}), std::domain_error);
  CHECK_THROWS_AS(peak_profile(f, 100, {-0.5L}), std::domain_error);
}

TEST_CASE("numerators never vanish inside J") {
  FloatForm f{2, 3, -5, 7, -7};
  std::vector<long double> alphas;
  const long double lo = vdc_limit(2, 20, 5), hi = growth_u(20);
  for (int i = 1; i < 400; ++i) alphas.push_back(lo + (hi - lo) * std::pow(i / 400.0L, 3));
  auto prof = peak_profile(f, 20, alphas);
  for (const auto& p : prof) {
    CHECK(p.in_J);
    for (const auto& pair : p.dirichlet) CHECK(pair.x != 0);
    // u >= 1 makes the squared threshold the lower one
    if (p.in_F_alt) CHECK(p.in_F);
    for (std::size_t k = 1; k < p.order.size(); ++k) {
      long double prev = std::sqrt(std::fabs(f[p.order[k - 1]])) * std::abs(p.S_values[p.order[k - 1]]);
      long double next = std::sqrt(std::fabs(f[p.order[k]])) * std::abs(p.S_values[p.order[k]]);
      CHECK(prev <= next);
    }
  }
}

TEST_CASE("decomposition adds up to the identity") {
  const KernelSpec k = ingham_kernel();
  FloatForm f{2, 3, -5, 7, -7};
  IntegralDecomposition D = integral_decomposition(f, 2, k);
  IdentityResult I = smoothed_count_identity(f, 2, k);
  CHECK(D.cuts[0] < D.cuts[1]);
  CHECK(D.cuts[1] < D.cuts[2]);
  CHECK(D.ranges[0].lo == 0);
  for (std::size_t r = 1; r < 4; ++r) CHECK(D.ranges[r].lo == D.ranges[r - 1].hi);
  CHECK(std::fabs(D.total_real - I.lhs) < 1e-6 * I.lhs);
  for (const auto& r : D.ranges) CHECK(std::fabs(r.real_part) <= r.absolute + 1e-9);
  CHECK(D.M1 >= D.M1_lower);
  CHECK(D.R1 == doctest::Approx(D.ranges[0].real_part - D.M1));
  CHECK(D.R2 >= D.ranges[1].absolute);
}

TEST_CASE("main term against a Fresnel quadrature") {
  // scipy: Fresnel integrals for I(alpha), Simpson on [0, 30] with the same kernel sequence
  IntegralDecomposition D = integral_decomposition(FloatForm{1, 1, 1, 1, -1}, 2, ingham_kernel());
  CHECK(std::fabs(D.M1 - 353.47684751952005L) < 1e-3L * 353.47684751952005L);
}

}  // TEST_SUITE
