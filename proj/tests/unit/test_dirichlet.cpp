#include "doctest.h"

#include <cmath>
#include <numeric>
#include <random>

#include "oppenheim/dirichlet.hpp"

using namespace oppenheim;

namespace {

Coefficient c(const char* text) { return Coefficient::parse(text); }

using Pairs = std::vector<std::pair<std::int64_t, std::int64_t>>;

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("dirichlet_pair examples") {
  ApproximationPair a = dirichlet_pair(Rational(1, 2), 10);
  CHECK(a.x == 1);
  CHECK(a.y == 2);
  CHECK(a.exact);
  CHECK(a.rho == 0);

  ApproximationPair b = dirichlet_pair(c("pi"), 10);
  CHECK(b.x == 22);
  CHECK(b.y == 7);
  CHECK(std::fabs(b.rho + 0.00126448926734968L) < 1e-15L);
  CHECK(check_pair(c("pi"), b));

  ApproximationPair d = dirichlet_pair(c("0.3"), 3);
  CHECK(d.x == 1);
  CHECK(d.y == 3);
  CHECK(d.rho == doctest::Approx(-1.0 / 30));

  CHECK(dirichlet_pair(c("pi"), 1000).y == 113);
  CHECK(dirichlet_pair(c("pi"), 1000).x == 355);
  CHECK(dirichlet_pair(c("-7/3"), 100).x == -7);
  CHECK(dirichlet_pair(c("-sqrt(2)"), 12).x == -17);
  CHECK(dirichlet_pair(c("-sqrt(2)"), 12).y == 12);
  CHECK(dirichlet_pair(c("5"), 1).x == 5);
  CHECK_THROWS_AS(dirichlet_pair(c("pi"), 0), std::domain_error);
}

TEST_CASE("dirichlet_pair is a best approximation of the second kind") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 300; ++trial) {
    long double theta = u(rng);
    std::int64_t N = 1 + static_cast<std::int64_t>(rng() % 60);
    ApproximationPair p = dirichlet_pair(theta, N);
    Coefficient th(exact_rational(theta));
    REQUIRE(check_pair(th, p));
    // best approximation of the second kind: |y theta - x| is minimal over y <= N
    long double best = std::fabs(theta * p.y - p.x);
    for (std::int64_t y = 1; y <= N; ++y) {
      auto x = static_cast<std::int64_t>(std::llround(theta * y));
      CHECK(std::fabs(theta * y - x) >= best - 1e-17L);
    }
  }
}

TEST_CASE("check_pair rejects broken invariants") {
  Coefficient pi = c("pi");
  CHECK_FALSE(check_pair(pi, ApproximationPair{44, 14, 0, false, 20}));
  CHECK_FALSE(check_pair(pi, ApproximationPair{22, 7, 0, false, 5}));
  CHECK_FALSE(check_pair(pi, ApproximationPair{3, 1, 0, false, 10}));
  CHECK(check_pair(pi, ApproximationPair{3, 1, 0, false, 7}));
}

TEST_CASE("count_approximants examples") {
  ApproximantCount a = count_approximants(c("1/2"), c("0.1"), c("10"));
  CHECK(a.count == 8);
  CHECK(a.all_same_ratio);
  CHECK(a.dichotomy);
  for (auto [x, y] : a.pairs) CHECK(2 * y == x);

  ApproximantCount b = count_approximants(c("sqrt(2)"), c("0.01"), c("50"));
  std::int64_t brute = 0;
  for (std::int64_t x = -49; x <= 49; ++x)
    for (std::int64_t y = -80; y <= 80; ++y)
      if (x != 0 && std::fabs(std::sqrt(2.0L) * x - y) < 0.01L) ++brute;
  CHECK(b.count == brute);
  CHECK(b.dichotomy);
  CHECK(b.threshold == doctest::Approx(12.0));

  ApproximantCount g = count_approximants(c("(1+sqrt(5))/2"), c("0.3"), c("20"));
  CHECK(g.count < 144);
  CHECK(g.threshold == doctest::Approx(144.0));
  CHECK(g.dichotomy);
  CHECK_FALSE(g.all_same_ratio);

  CHECK_THROWS_AS(count_approximants(c("1/2"), c("0"), c("10")), std::domain_error);
  CHECK_THROWS_AS(count_approximants(c("1/2"), c("1"), c("1e9"), 1000), std::length_error);
}

TEST_CASE("count_approximants boundaries are strict") {
  // |x/4 - y| < 1/4 excludes x odd with distance exactly 1/4
  ApproximantCount a = count_approximants(c("1/4"), c("1/4"), c("4"));
  for (auto [x, y] : a.pairs) CHECK(std::abs(x - 4 * y) < 1);
  CHECK(a.count == 0);
  // X = 3 exactly excludes |x| = 3
  ApproximantCount b = count_approximants(c("1"), c("1/2"), c("3"));
  CHECK(b.count == 4);
}

TEST_CASE("dichotomy holds on random trials") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    Coefficient theta(exact_rational(static_cast<long double>(u(rng) * 4 - 2)));
    Coefficient eta(exact_rational(static_cast<long double>(0.001 + u(rng) * 0.5)));
    Coefficient X(static_cast<long long>(1 + rng() % 100));
    CHECK(count_approximants(theta, eta, X).dichotomy);
  }
}

TEST_CASE("coupling_factorize examples") {
  CouplingFactorization same = coupling_factorize(Pairs{{3, 2}, {3, 2}, {3, 2}}, 0);
  CHECK(same.coupled());
  CHECK(same.x == 3);
  CHECK(same.y == 2);
  CHECK(same.L == 1);
  for (const auto& [a, b] : same.ratios) CHECK((a == 1 && b == 1));
  for (const auto& [xp, yp] : same.primed) CHECK((xp == 1 && yp == 1));

  CouplingFactorization f1 = coupling_factorize(Pairs{{6, 1}, {3, 2}}, 0, FactorOrder::displayed);
  CHECK(f1.ratios[1].first == 1);
  CHECK(f1.ratios[1].second == 4);
  CHECK(f1.x == 6);
  CHECK(f1.y == 1);
  CHECK_FALSE(f1.reconstructed);
  CHECK_FALSE(f1.failure.empty());

  CouplingFactorization f2 = coupling_factorize(Pairs{{4, 3}, {8, 3}}, 1, FactorOrder::displayed);
  CHECK(f2.ratios[0].first == 1);
  CHECK(f2.ratios[0].second == 2);
  CHECK(f2.x == 8);
  CHECK(f2.y == 3);
  CHECK_FALSE(f2.reconstructed);

  CouplingFactorization g1 = coupling_factorize(Pairs{{6, 1}, {3, 2}}, 0);
  CHECK(g1.coupled());
  CHECK(g1.x == 3);
  CHECK(g1.y == 1);
  CHECK(g1.L == 4);
  CouplingFactorization g2 = coupling_factorize(Pairs{{4, 3}, {8, 3}}, 1);
  CHECK(g2.coupled());
  CHECK(g2.x == 4);
  CHECK(g2.primed[1].first == 2);

  CouplingFactorization neg = coupling_factorize(Pairs{{-6, 5}, {3, 10}}, 0);
  CHECK(neg.ratios[1].first == -1);
  CHECK(neg.coupled());
  CHECK(neg.primed[0].first == -2);
  CHECK(neg.primed[1].second == 2);

  CHECK_THROWS_AS(coupling_factorize(Pairs{{0, 1}}, 0), std::invalid_argument);
  CHECK_THROWS_AS(coupling_factorize(Pairs{}, 0), std::invalid_argument);
  CHECK_THROWS_AS(coupling_factorize(Pairs{{1, 1}}, 3), std::invalid_argument);
}

TEST_CASE("consistent coupling reconstructs random coprime pairs") {
  std::mt19937_64 rng(5);
  int fails = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::size_t k = 2 + rng() % 4;
    while (pairs.size() < k) {
      std::int64_t x = 1 + static_cast<std::int64_t>(rng() % 40), y = 1 + static_cast<std::int64_t>(rng() % 40);
      if (std::gcd(x, y) != 1) continue;
      pairs.emplace_back(rng() % 2 ? x : -x, y);
    }
    CouplingFactorization f = coupling_factorize(pairs, rng() % k);
    fails += !f.coupled();
    for (std::size_t i = 0; i < k && f.reconstructed; ++i) {
      CHECK(mp::abs(f.primed[i].first) * f.x == BigInt(std::abs(pairs[i].first)));
      CHECK(f.primed[i].second * f.y == BigInt(pairs[i].second));
    }
  }
  CHECK(fails == 0);
}

}  // TEST_SUITE
