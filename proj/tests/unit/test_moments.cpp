#include "doctest.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "oppenheim/analysis/calibration.hpp"
#include "oppenheim/analysis/moments.hpp"

using namespace oppenheim::analysis;

TEST_SUITE("moments") {

TEST_CASE("r2 examples") {
  auto r = r2_counts(26);
  CHECK(r[0] == 1);
  CHECK(r[1] == 4);
  CHECK(r[2] == 4);
  CHECK(r[3] == 0);
  CHECK(r[5] == 8);
  CHECK(r[25] == 12);
  CHECK(r2_moment(2) == 16);
  CHECK(r2_moment(6) == 112);
  CHECK_THROWS_AS(r2_moment(1), std::domain_error);
}

TEST_CASE("r2 counts agree with a direct lattice scan") {
  const std::int64_t N = 400;
  auto r = r2_counts(N);
  std::vector<std::int64_t> slow(N, 0);
  for (std::int64_t a = -20; a <= 20; ++a)
    for (std::int64_t b = -20; b <= 20; ++b)
      if (a * a + b * b < N) ++slow[a * a + b * b];
  CHECK(r == slow);
  std::int64_t total = 0;
  for (std::int64_t n = 1; n < N; ++n) total += r[n];
  // Gauss circle: sum r(n) ~ pi N
  CHECK(std::fabs(total - M_PI * N) < 4 * std::sqrt(double(N)));
}

TEST_CASE("r2 growth stays below the recorded constant") {
  for (std::int64_t N : {1000, 10000, 100000}) CHECK(r2_growth_ratio(N) <= calibration::r2_growth);
}

TEST_CASE("fourth moment examples") {
  CHECK(fourth_moment_count(1, 1) == 1);
  CHECK(fourth_moment_count(1, 2) == 6);
  CHECK(fourth_moment_integral(1, 2) == doctest::Approx(6.0).epsilon(1e-12));
  CHECK_THROWS_AS(fourth_moment_count(0, 2), std::domain_error);
  CHECK_THROWS_AS(fourth_moment_count(3, 2), std::domain_error);
}

TEST_CASE("fourth moment count equals the theta integral") {
  std::int64_t n50 = fourth_moment_count(1, 50);
  CHECK(std::fabs(fourth_moment_integral(1, 50) - n50) <= 1e-6 * n50);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    std::int64_t lo = 1 + static_cast<std::int64_t>(rng() % 1000);
    std::int64_t hi = lo + static_cast<std::int64_t>(rng() % 200);
    std::int64_t n = fourth_moment_count(lo, hi);
    CAPTURE(lo);
    CAPTURE(hi);
    CHECK(std::fabs(fourth_moment_integral(lo, hi) - n) <= 1e-6 * n);
    // trivial solutions alone give 2 L^2 - L
    std::int64_t L = hi - lo + 1;
    CHECK(n >= 2 * L * L - L);
  }
}

}  // TEST_SUITE
