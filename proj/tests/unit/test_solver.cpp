#include "doctest.h"

#include <random>

#include "oppenheim/solver.hpp"
#include "support/oracles.hpp"

using namespace oppenheim;

namespace {

IntVector vec(std::initializer_list<std::int64_t> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v[i++] = x;
  return v;
}

Coefficient c(const char* text) { return Coefficient::parse(text); }

RealForm random_rational_form(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> num(1, 40), den(1, 9);
  for (;;) {
    RealForm::Vector q(d);
    for (int i = 0; i < d; ++i) q[i] = Coefficient(Rational(num(rng) * (rng() % 2 ? 1 : -1), den(rng)));
    RealForm f(q);
    if (f.indefinite()) return f;
  }
}

}  // namespace

TEST_SUITE("solver") {

TEST_CASE("solve examples") {
  SolutionCertificate a = solve(parse_form("1, -1"), c("0.5"));
  CHECK(a.m == vec({1, 1}));
  CHECK(a.q_value == 0);
  CHECK(a.weighted_norm == 2);
  CHECK_FALSE(a.bound.has_value());
  CHECK_FALSE(a.within_theorem_bound.has_value());

  SolutionCertificate b = solve(parse_form("1, 1, 1, 1, -2"), c("0.5"));
  CHECK(b.m == vec({1, 1, 0, 0, 1}));
  CHECK(b.q_value == 0);
  CHECK(b.weighted_norm == 4);
  CHECK(b.method == CertificateMethod::shell_enumeration);
  REQUIRE(b.within_theorem_bound.has_value());
  CHECK(*b.within_theorem_bound);

  SolutionCertificate r = solve(parse_form("1, sqrt(2), sqrt(3), -1, -sqrt(5)"), c("0.1"));
  CHECK(r.m == vec({1, 0, 0, 1, 0}));
  CHECK(r.q_value == 0);
  CHECK(r.weighted_norm == 2);
}

TEST_CASE("irrational regression anchor") {
  // cross-checked by an independent 50-digit enumeration
  RealForm f = parse_form("pi, e, -sqrt(7), 10, -exp(2)");
  SolutionCertificate a = solve(f, c("0.001"));
  CHECK(a.m == vec({2, 19, 19, 11, 13}));
  CHECK(abs(a.q_value - Float50("-0.0005933255225886541111772095")) < Float50("1e-27"));
  CHECK(abs(a.weighted_norm - Float50("4407.73281470167159449194")) < Float50("1e-19"));
  CHECK(verify_certificate(a, f, c("0.001")).valid);
  SolutionCertificate again = solve(f, c("0.001"));
  CHECK(again.m == a.m);
  CHECK(again.stats.nodes == a.stats.nodes);
}

TEST_CASE("strategy A matches the naive oracle on rational forms") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    RealForm f = random_rational_form(rng, 3 + trial % 3);
    Rational eps(1 + static_cast<int>(rng() % 4), 4);
    auto ex = exact(f);
    REQUIRE(ex);
    SolveOptions opt;
    opt.budget = 300;
    SolutionCertificate s;
    try {
      s = solve(f, Coefficient(eps), opt);
    } catch (const CertifiedEmpty&) {
      CHECK_FALSE(oracle::min_small_value(*ex, eps, Rational(300)));
      continue;
    }
    Rational norm = weighted_norm(*ex, s.m);
    auto slow = oracle::min_small_value(*ex, eps, norm);
    REQUIRE(slow);
    CHECK(slow->first == norm);
    CHECK(slow->second == s.m);
    CHECK(verify_certificate(s, f, Coefficient(eps)).valid);
  }
}

TEST_CASE("epsilon monotonicity and scaling") {
  RealForm f = parse_form("sqrt(2), 3/2, -sqrt(3), -5/7, 1");
  Float50 prev = -1;
  for (const char* e : {"1/2", "1/4", "1/8", "1/16", "1/32"}) {
    SolutionCertificate s = solve(f, c(e));
    CHECK(s.weighted_norm >= prev);
    prev = s.weighted_norm;
  }
  SolutionCertificate base = solve(f, c("1/16"));
  for (const char* k : {"3", "1/7", "sqrt(5)"}) {
    RealForm::Vector q(f.dim());
    for (Eigen::Index i = 0; i < f.dim(); ++i) q[i] = c(k) * f[i];
    SolutionCertificate scaled = solve(RealForm(q), c(k) * c("1/16"));
    CHECK(scaled.m == base.m);
    CHECK(abs(scaled.weighted_norm - c(k).approx50() * base.weighted_norm) < Float50("1e-30") * scaled.weighted_norm);
  }
}

TEST_CASE("strategy B and fallback") {
  RealForm f = parse_form("pi, e, -sqrt(7), 10, -exp(2)");
  SolveOptions opt;
  opt.method = SolveMethod::rational;
  SolutionCertificate b = solve(f, c("0.5"), opt);
  CHECK(verify_certificate(b, f, c("0.5")).valid);
  SolutionCertificate a = solve(f, c("0.5"));
  CHECK(a.weighted_norm <= b.weighted_norm);

  // 0.2 / 0.5 rounds to a zero coefficient at D = 1, so A takes over
  opt.denominator = 1;
  SolutionCertificate fb = solve(parse_form("0.2, 1, 1, 1, -3"), c("0.5"), opt);
  CHECK(fb.stats.fallback);
  CHECK(fb.method == CertificateMethod::shell_enumeration);
}

TEST_CASE("certified empty within budget") {
  SolveOptions opt;
  opt.budget = 1000;
  try {
    solve(parse_form("3, -5"), c("1/2"), opt);
    FAIL("expected CertifiedEmpty");
  } catch (const CertifiedEmpty& e) {
    CHECK(e.radius == doctest::Approx(1000));
    CHECK(e.stats.undecided == 0);
  }
  CHECK_THROWS_AS(solve(parse_form("1, 2, 3"), c("1")), DefiniteFormError);
  CHECK_THROWS_AS(solve(parse_form("1, -1"), c("0")), std::domain_error);
  CHECK_THROWS_AS(solve(RealForm(RealForm::Vector::Constant(2, Coefficient(1)), false), c("1")), DefiniteFormError);
}

TEST_CASE("verify_certificate flags tampering") {
  RealForm f = parse_form("1, 1, 1, 1, -2");
  SolutionCertificate good = solve(f, c("0.5"));
  CHECK(verify_certificate(good, f, c("0.5")).valid);

  SolutionCertificate zero = good;
  zero.m.setZero();
  Verification z = verify_certificate(zero, f, c("0.5"));
  CHECK_FALSE(z.valid);
  REQUIRE_FALSE(z.issues.empty());
  CHECK(z.issues[0].find("zero vector") != std::string::npos);

  SolutionCertificate drift = good;
  drift.q_value = Float50("1e-3");
  CHECK_FALSE(verify_certificate(drift, f, c("0.5")).valid);

  SolutionCertificate norm = good;
  norm.weighted_norm += 1;
  CHECK_FALSE(verify_certificate(norm, f, c("0.5")).valid);

  SolutionCertificate flag = good;
  flag.within_theorem_bound = false;
  CHECK_FALSE(verify_certificate(flag, f, c("0.5")).valid);

  SolutionCertificate off = good;
  off.m = vec({1, 0, 0, 0, 0});
  Verification o = verify_certificate(off, f, c("0.5"));
  CHECK_FALSE(o.valid);
  CHECK_FALSE(o.indeterminate);
}

TEST_CASE("borderline values escalate precision") {
  // Q[(1, 1)] = 1 and epsilon exceeds 1 by about 2^-404 or 2^-664
  RealForm f = parse_form("2, -1");
  SolutionCertificate cert;
  cert.m = vec({1, 1});
  cert.q_value = 1;
  cert.weighted_norm = 3;

  Verification near = verify_certificate(cert, f, c("1 + exp(-280)"));
  CHECK(near.valid);
  CHECK(near.bits == 512);

  Verification edge = verify_certificate(cert, f, c("1 + exp(-460)"));
  CHECK_FALSE(edge.valid);
  CHECK(edge.indeterminate);

  Verification exact_edge = verify_certificate(cert, f, c("1"));
  CHECK_FALSE(exact_edge.valid);
  CHECK_FALSE(exact_edge.indeterminate);
}

}  // TEST_SUITE
