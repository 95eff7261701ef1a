#include "oppenheim/dirichlet.hpp"

#include <cmath>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace oppenheim {

namespace {

struct Convergent {
  BigInt p;
  BigInt q;
  bool terminated = false;  // the expansion ended here: theta == p / q
};

// Last convergent with q <= N of every number in [lo, hi], or nothing if the enclosure is too wide to tell.
std::optional<Convergent> last_convergent(Rational lo, Rational hi, const BigInt& N) {
  // (p_prev, q_prev) and (p, q) start as the formal convergents of index -2 and -1
  BigInt p_prev = 0, q_prev = 1, p = 1, q = 0;
  for (;;) {
    BigInt a_lo = floor(lo), a_hi = floor(hi);
    if (a_lo != a_hi) {
      // every admissible partial quotient already overshoots N
      if (q > 0 && a_lo * q + q_prev > N) return Convergent{p, q, false};
      return std::nullopt;
    }
    const BigInt& a = a_lo;
    BigInt p_next = a * p + p_prev, q_next = a * q + q_prev;
    if (q_next > N) return Convergent{p, q, false};
    p_prev = p;
    q_prev = q;
    p = p_next;
    q = q_next;
    Rational f_lo = lo - Rational(a), f_hi = hi - Rational(a);
    if (f_hi == 0) return Convergent{p, q, true};
    if (f_lo == 0) return std::nullopt;
    lo = 1 / f_hi;
    hi = 1 / f_lo;
  }
}

ApproximationPair finish(const Convergent& c, std::int64_t N, long double rho) {
  ApproximationPair out;
  out.x = to_int64(c.p);
  out.y = to_int64(c.q);
  out.exact = c.terminated;
  out.rho = c.terminated ? 0.0L : rho;
  out.bound_N = N;
  return out;
}

void require_N(std::int64_t N) {
  if (N < 1) throw std::domain_error("N must be >= 1");
}

}  // namespace

ApproximationPair dirichlet_pair(const Rational& theta, std::int64_t N) {
  require_N(N);
  auto c = last_convergent(theta, theta, BigInt(N));
  if (!c) throw std::logic_error("exact continued fraction did not resolve");
  return finish(*c, N, to_long_double(theta - Rational(c->p) / Rational(c->q)));
}

ApproximationPair dirichlet_pair(long double theta, std::int64_t N) { return dirichlet_pair(exact_rational(theta), N); }

ApproximationPair dirichlet_pair(const Coefficient& theta, std::int64_t N) {
  if (theta.is_rational()) return dirichlet_pair(theta.rational(), N);
  require_N(N);
  for (mpfr_prec_t bits = 128; bits <= 4096; bits *= 2) {
    Interval t = theta.enclose(bits);
    auto c = last_convergent(t.lower_exact(), t.upper_exact(), BigInt(N));
    if (!c) continue;
    // an irrational value never terminates; a terminated expansion means the enclosure was degenerate
    if (c->terminated) continue;
    Interval rho = theta.enclose(bits) - Interval(Rational(c->p) / Rational(c->q), bits);
    return finish(*c, N, rho.mid());
  }
  throw std::domain_error("continued fraction of '" + theta.text() + "' undecidable at 4096 bits");
}

bool check_pair(const Coefficient& theta, const ApproximationPair& pair) {
  if (pair.y < 1 || pair.y > pair.bound_N) return false;
  if (std::gcd(pair.x < 0 ? -pair.x : pair.x, pair.y) != 1) return false;
  Rational approx = Rational(pair.x) / Rational(pair.y);
  Rational limit = Rational(1) / (Rational(pair.y) * Rational(pair.bound_N));
  if (theta.is_rational()) return mp::abs(theta.rational() - approx) < limit;
  for (mpfr_prec_t bits = 128; bits <= 4096; bits *= 2) {
    Interval gap = abs(theta.enclose(bits) - Interval(approx, bits));
    Interval lim(limit, bits);
    if (gap.certainly_less(lim)) return true;
    if (lim.certainly_less(gap)) return false;
  }
  return false;
}

namespace {

// sign of eta - |theta x - y|, certified
int inside_sign(const Coefficient& theta, const Coefficient& eta, std::int64_t x, std::int64_t y) {
  Coefficient gap = eta - abs(theta * Coefficient(static_cast<long long>(x)) - Coefficient(static_cast<long long>(y)));
  return gap.sign();
}

std::int64_t largest_below(const Coefficient& X) {
  // largest integer k with k < X
  long double a = X.approx();
  if (!std::isfinite(a)) throw std::domain_error("X is not finite");
  auto k = static_cast<std::int64_t>(std::ceil(a)) - 1;
  while ((Coefficient(static_cast<long long>(k + 1)) - X).sign() < 0) ++k;
  while ((Coefficient(static_cast<long long>(k)) - X).sign() >= 0) --k;
  return k;
}

}  // namespace

ApproximantCount count_approximants(const Coefficient& theta, const Coefficient& eta, const Coefficient& X, std::int64_t max_x) {
  if (eta.sign() <= 0) throw std::domain_error("eta must be positive");
  if (X.sign() <= 0) throw std::domain_error("X must be positive");
  const std::int64_t top = largest_below(X);
  if (top > max_x) throw std::length_error("enumeration over |x| < X is too large (" + std::to_string(top) + " values)");

  const long double th = theta.approx(), et = eta.approx();
  ApproximantCount out;
  for (std::int64_t x = -top; x <= top; ++x) {
    if (x == 0) continue;
    long double t = th * static_cast<long double>(x);
    long double slack = 1e-16L * (std::fabs(t) + et + 1);
    auto y_lo = static_cast<std::int64_t>(std::ceil(t - et - slack));
    auto y_hi = static_cast<std::int64_t>(std::floor(t + et + slack));
    for (std::int64_t y = y_lo; y <= y_hi; ++y) {
      long double gap = std::fabs(t - static_cast<long double>(y));
      bool in = gap < et - slack ? true : gap > et + slack ? false : inside_sign(theta, eta, x, y) > 0;
      if (!in) continue;
      if (!out.pairs.empty()) {
        auto [x0, y0] = out.pairs.front();
        if (int128(y) * x0 != int128(y0) * x) out.all_same_ratio = false;
      }
      out.pairs.emplace_back(x, y);
    }
  }
  out.count = static_cast<std::int64_t>(out.pairs.size());
  Coefficient bound = Coefficient(24) * eta * X;
  out.threshold = bound.approx();
  out.dichotomy = out.all_same_ratio || (bound - Coefficient(static_cast<long long>(out.count))).sign() > 0;
  return out;
}

CouplingFactorization coupling_factorize(const std::vector<std::pair<std::int64_t, std::int64_t>>& pairs, std::size_t ref_index,
                                         FactorOrder order) {
  if (pairs.empty()) throw std::invalid_argument("coupling needs at least one pair");
  if (ref_index >= pairs.size()) throw std::invalid_argument("reference index out of range");
  for (const auto& [x, y] : pairs) {
    if (x == 0) throw std::invalid_argument("coupling needs every x_i nonzero");
    if (y < 1) throw std::invalid_argument("coupling needs every y_i positive");
  }

  CouplingFactorization out;
  out.ref_index = ref_index;
  out.order = order;
  const BigInt x_ref = pairs[ref_index].first, y_ref = pairs[ref_index].second;
  BigInt prod_A = 1, prod_B = 1;
  for (const auto& [xi, yi] : pairs) {
    Rational ratio = Rational(BigInt(xi) * y_ref) / Rational(BigInt(yi) * x_ref);
    BigInt A = mp::numerator(ratio), B = mp::denominator(ratio);
    out.ratios.emplace_back(A, B);
    prod_A *= mp::abs(A);
    prod_B *= B;
    out.L *= mp::abs(A * B);
  }

  const BigInt& for_x = order == FactorOrder::consistent ? prod_B : prod_A;
  const BigInt& for_y = order == FactorOrder::consistent ? prod_A : prod_B;
  out.x = mp::abs(x_ref) / mp::gcd(mp::abs(x_ref), for_x);
  out.y = y_ref / mp::gcd(y_ref, for_y);
  out.coprime = mp::gcd(out.x, out.y) == 1;

  out.reconstructed = true;
  out.divides_L = true;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    BigInt xi = pairs[i].first, yi = pairs[i].second;
    if (xi % out.x != 0 || yi % out.y != 0) {
      out.reconstructed = false;
      out.divides_L = false;
      if (out.failure.empty())
        out.failure = "pair " + std::to_string(i) + " = (" + to_string(xi) + ", " + to_string(yi) + ") is not a multiple of (x, y) = (" +
                      to_string(out.x) + ", " + to_string(out.y) + ")";
      out.primed.emplace_back(0, 0);
      continue;
    }
    BigInt xp = xi / out.x, yp = yi / out.y;
    if (out.L % mp::abs(xp) != 0 || out.L % yp != 0) {
      out.divides_L = false;
      if (out.failure.empty()) out.failure = "primed part of pair " + std::to_string(i) + " does not divide L = " + to_string(out.L);
    }
    out.primed.emplace_back(xp, yp);
  }
  return out;
}

CouplingFactorization coupling_factorize(const std::vector<ApproximationPair>& pairs, std::size_t ref_index, FactorOrder order) {
  std::vector<std::pair<std::int64_t, std::int64_t>> xy;
  xy.reserve(pairs.size());
  for (const auto& p : pairs) xy.emplace_back(p.x, p.y);
  return coupling_factorize(xy, ref_index, order);
}

}  // namespace oppenheim
