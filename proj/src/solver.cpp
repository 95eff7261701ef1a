#include "oppenheim/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

namespace oppenheim {

namespace {

constexpr mpfr_prec_t kStartBits = 256;
constexpr mpfr_prec_t kCapBits = 512;

enum class Side { inside, outside, undecided };

struct Enclosed {
  Interval value;
  Interval norm;
};

Enclosed enclose(const RealForm& form, const IntVector& m, mpfr_prec_t bits) {
  Interval q(0.0L, bits), n(0.0L, bits);
  for (Eigen::Index i = 0; i < form.dim(); ++i) {
    Interval c = form[i].enclose(bits);
    Interval sq(Rational(BigInt(m[i]) * BigInt(m[i])), bits);
    q = q + c * sq;
    n = n + abs(c) * sq;
  }
  return {q, n};
}

Side compare(const Interval& value, const Interval& eps) {
  Interval gap = eps - abs(value);
  if (gap.certainly_positive()) return Side::inside;
  if (!gap.contains_zero() || gap.upper() <= 0) return Side::outside;
  return Side::undecided;
}

// |Q[m]| < epsilon, exact for rational data, escalating otherwise.
Side decide(const RealForm& form, const Coefficient& eps, const IntVector& m, mpfr_prec_t* used = nullptr,
            mpfr_prec_t start = kStartBits, mpfr_prec_t cap = kCapBits) {
  auto ex = exact(form);
  if (ex && eps.is_rational()) {
    Rational v = evaluate(*ex, m);
    if (used) *used = 0;
    return mp::abs(v) < eps.rational() ? Side::inside : Side::outside;
  }
  for (mpfr_prec_t bits = start; bits <= cap; bits *= 2) {
    if (used) *used = bits;
    Side s = compare(enclose(form, m, bits).value, eps.enclose(bits));
    if (s != Side::undecided) return s;
  }
  return Side::undecided;
}

// Nonnegative vectors on one sign class with value <= limit, sorted by value.
template <typename T>
struct HalfList {
  std::vector<T> value;
  std::vector<std::int32_t> coords;
  std::size_t width = 0;

  std::size_t size() const { return value.size(); }
  const std::int32_t* at(std::size_t i) const { return coords.data() + i * width; }
};

template <typename T>
void collect(const std::vector<T>& c, T limit, std::size_t i, T used, std::vector<std::int32_t>& m, std::vector<T>& values,
             std::vector<std::int32_t>& coords, std::int64_t cap) {
  if (i == c.size()) {
    values.push_back(used);
    coords.insert(coords.end(), m.begin(), m.end());
    if (static_cast<std::int64_t>(values.size()) > cap)
      throw std::length_error("half list exceeds " + std::to_string(cap) + " entries");
    return;
  }
  for (std::int32_t k = 0;; ++k) {
    T next = used + c[i] * T(k) * T(k);
    if (next > limit) break;
    m[i] = k;
    collect(c, limit, i + 1, next, m, values, coords, cap);
  }
  m[i] = 0;
}

template <typename T>
HalfList<T> half_list(const std::vector<T>& c, T limit, std::int64_t cap) {
  std::vector<T> values;
  std::vector<std::int32_t> coords, m(c.size(), 0);
  collect(c, limit, 0, T(0), m, values, coords, cap);
  const std::size_t w = c.size();
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (values[a] != values[b]) return values[a] < values[b];
    return std::lexicographical_compare(coords.begin() + a * w, coords.begin() + (a + 1) * w, coords.begin() + b * w,
                                        coords.begin() + (b + 1) * w);
  });
  HalfList<T> out;
  out.width = w;
  out.value.reserve(values.size());
  out.coords.reserve(coords.size());
  for (std::size_t k : order) {
    out.value.push_back(values[k]);
    out.coords.insert(out.coords.end(), coords.begin() + k * w, coords.begin() + (k + 1) * w);
  }
  return out;
}

// Normalized search data: Q / epsilon = (P - N) / scale with P, N the positive and negative parts.
template <typename T>
struct Problem {
  std::vector<T> pos, neg;
  std::vector<Eigen::Index> pos_at, neg_at;
  T window;        // |P - N| < window
  T unit;          // weighted norm / epsilon = (P + N) / unit
  bool exact = false;
};

long double to_ld(int128 x) { return static_cast<long double>(x); }
long double to_ld(long double x) { return x; }

template <typename T>
struct Candidate {
  T sum;
  std::uint32_t a;
  std::uint32_t b;
};

template <typename T>
IntVector assemble(const Problem<T>& p, const HalfList<T>& A, const HalfList<T>& B, const Candidate<T>& c, Eigen::Index d) {
  IntVector m = IntVector::Zero(d);
  for (std::size_t i = 0; i < p.pos.size(); ++i) m[p.pos_at[i]] = A.at(c.a)[i];
  for (std::size_t i = 0; i < p.neg.size(); ++i) m[p.neg_at[i]] = B.at(c.b)[i];
  return m;
}

struct Found {
  IntVector m;
  SearchStats stats;
};

// Strategy A: doubling radius, meet in the middle over P and N.
template <typename T>
Found shell_search(const RealForm& form, const Coefficient& eps, const Problem<T>& p, T limit, std::int64_t cap, long double to_input) {
  Found out;
  const long double tie = p.exact ? 0.0L : 1e-15L;
  const T smallest = std::min(*std::min_element(p.pos.begin(), p.pos.end()), *std::min_element(p.neg.begin(), p.neg.end()));
  T R = std::min(limit, smallest * T(4));
  for (;;) {
    ++out.stats.shells;
    out.stats.radius = to_ld(R) * to_input;
    HalfList<T> A = half_list(p.pos, R, cap), B = half_list(p.neg, R, cap);
    out.stats.nodes += static_cast<std::int64_t>(A.size() + B.size());

    // pairs with |a - b| < window; "sure" ones cannot be a rounding artefact
    std::vector<Candidate<T>> cands;
    T best = R + T(1);
    for (std::size_t ia = 0; ia < A.size(); ++ia) {
      const T a = A.value[ia];
      if (a > R || a > best) break;
      T lo = a - p.window;
      if (!p.exact) lo -= T(1e-15L) * (a + T(1));
      auto it = std::upper_bound(B.value.begin(), B.value.end(), lo);
      for (auto ib = static_cast<std::size_t>(it - B.value.begin()); ib < B.size(); ++ib) {
        const T b = B.value[ib];
        const T sum = a + b;
        if (sum > R || sum > best * (T(1) + T(tie))) break;
        const T gap = a > b ? a - b : b - a;
        if (gap >= p.window + (p.exact ? T(0) : T(1e-15L) * (sum + T(1)))) {
          if (b > a) break;
          continue;
        }
        if (ia == 0 && ib == 0) continue;
        ++out.stats.pairs;
        bool sure = p.exact || gap < p.window - T(1e-15L) * (sum + T(1));
        if (sure && sum < best) best = sum;
        cands.push_back({sum, static_cast<std::uint32_t>(ia), static_cast<std::uint32_t>(ib)});
      }
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate<T>& x, const Candidate<T>& y) { return x.sum < y.sum; });
    std::optional<T> group;
    for (const auto& c : cands) {
      if (group && to_ld(c.sum) > to_ld(*group) * (1 + tie)) break;
      IntVector m = assemble(p, A, B, c, form.dim());
      Side s = p.exact ? Side::inside : decide(form, eps, m);
      if (s == Side::undecided) ++out.stats.undecided;
      if (s != Side::inside) continue;
      if (!group) group = c.sum;
      if (out.m.size() == 0 || std::lexicographical_compare(out.m.begin(), out.m.end(), m.begin(), m.end())) out.m = m;
    }
    if (group) return out;
    if (!(R < limit)) break;
    R = R > limit / T(2) ? limit : R * T(2);
  }
  std::string what = "no m with weighted norm <= " + std::to_string(static_cast<double>(out.stats.radius)) + " has |Q[m]| < epsilon";
  if (out.stats.undecided > 0) what += " (" + std::to_string(out.stats.undecided) + " candidates undecided at the precision cap)";
  throw CertifiedEmpty(what, out.stats.radius, out.stats);
}

template <typename T>
void split(Problem<T>& p, const std::vector<T>& scaled, const std::vector<int>& sign) {
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    auto at = static_cast<Eigen::Index>(i);
    if (sign[i] > 0) {
      p.pos.push_back(scaled[i]);
      p.pos_at.push_back(at);
    } else {
      p.neg.push_back(scaled[i]);
      p.neg_at.push_back(at);
    }
  }
}

Found strategy_a(const RealForm& form, const Coefficient& eps, const SolveOptions& opt) {
  std::vector<int> sign(static_cast<std::size_t>(form.dim()));
  for (Eigen::Index i = 0; i < form.dim(); ++i) sign[static_cast<std::size_t>(i)] = form[i].sign();
  const long double eps_ld = eps.approx();

  auto ex = exact(form);
  if (ex && eps.is_rational()) {
    // integers c_i = |q_i| L / epsilon with L the common denominator
    std::vector<Rational> r;
    BigInt L = 1;
    for (Eigen::Index i = 0; i < form.dim(); ++i) {
      r.push_back(mp::abs((*ex)[i] / eps.rational()));
      L = mp::lcm(L, mp::denominator(r.back()));
    }
    Rational radius = exact_rational(opt.budget) * Rational(L) / eps.rational();
    BigInt top = floor(radius);
    const BigInt max_value = BigInt(1) << 100;
    if (L < max_value && top < max_value) {
      Problem<int128> p;
      p.exact = true;
      std::vector<int128> scaled;
      for (const auto& x : r) {
        BigInt c = mp::numerator(x) * (L / mp::denominator(x));
        if (c >= max_value) throw std::overflow_error("scaled coefficient exceeds 100 bits");
        scaled.push_back(static_cast<int128>(c));
      }
      split(p, scaled, sign);
      p.window = static_cast<int128>(L);
      p.unit = p.window;
      const int128 lim = static_cast<int128>(top);
      return shell_search(form, eps, p, lim, opt.max_entries, eps_ld / to_ld(p.window));
    }
  }

  Problem<long double> p;
  std::vector<long double> scaled;
  for (Eigen::Index i = 0; i < form.dim(); ++i) scaled.push_back(std::fabs((form[i] / eps).approx()));
  split(p, scaled, sign);
  p.window = 1;
  p.unit = 1;
  return shell_search(form, eps, p, opt.budget / eps_ld, opt.max_entries, eps_ld);
}

// Strategy B: round q_i / epsilon to n_i / D and search the integer form for an exact zero.
std::optional<Found> strategy_b(const RealForm& form, const Coefficient& eps, const SolveOptions& opt) {
  if (opt.denominator < 1) throw std::domain_error("denominator must be >= 1");
  IntVector n(form.dim());
  std::int64_t g = 0;
  for (Eigen::Index i = 0; i < form.dim(); ++i) {
    Float50 v = round((form[i] / eps).approx50() * Float50(opt.denominator));
    if (abs(v) > Float50(std::int64_t(1) << 62)) return std::nullopt;
    n[i] = static_cast<std::int64_t>(v);
    if (n[i] == 0) return std::nullopt;
    g = std::gcd(g, n[i] < 0 ? -n[i] : n[i]);
  }
  IntegerForm f(IntVector(n / g));
  if (!f.indefinite()) return std::nullopt;

  Found out;
  long double scale = static_cast<long double>(opt.denominator) / static_cast<long double>(g);
  long double budget = std::ceil(opt.budget / eps.approx() * scale * (1 + 1e-9L));
  budget = std::min(budget, static_cast<long double>(std::numeric_limits<std::int64_t>::max() / 4));
  std::optional<IsotropicWitness> w;
  try {
    w = min_isotropic(f, std::max<std::int64_t>(2, static_cast<std::int64_t>(budget)));
  } catch (const std::length_error&) {
    return std::nullopt;
  }
  out.stats.shells = 1;
  out.stats.radius = opt.budget;
  if (!w) return std::nullopt;
  out.stats.pairs = 1;
  Side s = decide(form, eps, w->m);
  if (s == Side::undecided) ++out.stats.undecided;
  if (s != Side::inside) return std::nullopt;
  if (enclose(form, w->m, kStartBits).norm.lower() > opt.budget) return std::nullopt;
  out.m = w->m;
  return out;
}

void fill_bound(SolutionCertificate& cert, const RealForm& form, const Coefficient& eps, const Float50& C_d) {
  cert.bound.reset();
  cert.within_theorem_bound.reset();
  cert.within_llcurly.reset();
  if (form.dim() < 5) return;
  try {
    cert.bound = theorem_bound(normalize_epsilon(form, eps), C_d);
  } catch (const std::domain_error&) {
    return;
  }
  Float50 scaled = cert.weighted_norm / eps.approx50();
  cert.within_theorem_bound = within_shell(*cert.bound, scaled);
  cert.within_llcurly = log(scaled) <= cert.bound->log_theorem_rhs;
}

}  // namespace

std::string to_string(CertificateMethod method) {
  return method == CertificateMethod::shell_enumeration ? "shell_enumeration" : "rational_reduction";
}

CertificateMethod parse_certificate_method(const std::string& text) {
  if (text == "shell_enumeration") return CertificateMethod::shell_enumeration;
  if (text == "rational_reduction") return CertificateMethod::rational_reduction;
  throw std::invalid_argument("unknown certificate method '" + text + "'");
}

SolutionCertificate solve(const RealForm& form, const Coefficient& epsilon, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  if (form.signature().t != 0) throw std::invalid_argument("zero coefficients are not allowed");
  if (form.dim() < 2) throw std::invalid_argument("solve needs d >= 2");
  if (!form.indefinite()) throw DefiniteFormError("definite form: |Q[m]| < epsilon has no small solutions to search for");
  if (epsilon.sign() <= 0) throw std::domain_error("epsilon must be positive");
  if (!(options.budget > 0)) throw std::domain_error("budget must be positive");

  SolutionCertificate cert;
  std::optional<Found> found;
  bool fell_back = false;
  try {
    if (options.method == SolveMethod::rational) {
      found = strategy_b(form, epsilon, options);
      if (found) {
        cert.method = CertificateMethod::rational_reduction;
      } else {
        fell_back = true;
        found = strategy_a(form, epsilon, options);
        found->stats.fallback = true;
      }
    } else if (options.method == SolveMethod::shell) {
      found = strategy_a(form, epsilon, options);
    } else {
      try {
        found = strategy_a(form, epsilon, options);
      } catch (const std::length_error&) {
        found = strategy_b(form, epsilon, options);
        if (!found) throw;
        cert.method = CertificateMethod::rational_reduction;
      }
    }
  } catch (CertifiedEmpty& e) {
    e.stats.fallback = fell_back;
    e.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    throw;
  }

  for (Eigen::Index i = 0; i < form.dim(); ++i) cert.coeffs.push_back(form[i].text());
  cert.epsilon = epsilon.text();
  cert.m = found->m;
  Enclosed e = enclose(form, cert.m, kStartBits);
  cert.q_value = e.value.mid_float50();
  cert.weighted_norm = e.norm.mid_float50();
  fill_bound(cert, form, epsilon, options.C_d);
  cert.below_ee = below_ee(form);
  cert.stats = found->stats;
  cert.stats.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return cert;
}

Verification verify_certificate(const SolutionCertificate& cert, const RealForm& form, const Coefficient& epsilon, const Float50& C_d,
                                mpfr_prec_t start_bits) {
  if (start_bits < 64) throw std::domain_error("verification needs at least 64 bits");
  const mpfr_prec_t cap = std::max(kCapBits, start_bits);
  Verification out;
  if (cert.m.size() != form.dim()) {
    out.issues.push_back("invariant: m has " + std::to_string(cert.m.size()) + " entries for a form of dimension " + std::to_string(form.dim()));
    return out;
  }
  if (cert.m.isZero()) {
    out.issues.push_back("invariant: m is the zero vector");
    return out;
  }

  Side s = decide(form, epsilon, cert.m, &out.bits, start_bits, cap);
  if (s == Side::undecided) {
    out.indeterminate = true;
    out.issues.push_back("value: |Q[m]| < epsilon undecided at " + std::to_string(cap) + " bits");
  } else if (s == Side::outside) {
    out.issues.push_back("value: |Q[m]| >= epsilon");
  }

  Enclosed e = enclose(form, cert.m, cap);
  const Float50 tol("1e-45");
  auto drift = [&](const Float50& claimed, const Interval& actual) {
    Float50 a = actual.mid_float50();
    return abs(claimed - a) > tol * (1 + abs(a));
  };
  if (drift(cert.q_value, e.value))
    out.issues.push_back("value drift: certificate has Q[m] = " + format_float(cert.q_value, 20) + ", recomputed " + e.value.str(20));
  if (drift(cert.weighted_norm, e.norm))
    out.issues.push_back("norm mismatch: certificate has " + format_float(cert.weighted_norm, 20) + ", recomputed " + e.norm.str(20));
  if (!(e.norm.mid_float50() > 0)) out.issues.push_back("invariant: weighted norm is not positive");

  SolutionCertificate again = cert;
  again.weighted_norm = e.norm.mid_float50();
  fill_bound(again, form, epsilon, C_d);
  if (again.within_theorem_bound != cert.within_theorem_bound || again.within_llcurly != cert.within_llcurly)
    out.issues.push_back("bound misflag: within_theorem_bound does not match the recomputed bound");
  else if (again.bound.has_value() != cert.bound.has_value() ||
           (again.bound && abs(again.bound->log_shell_radius - cert.bound->log_shell_radius) > tol * (1 + abs(again.bound->log_shell_radius))))
    out.issues.push_back("bound misflag: bound parameters differ from the recomputed bound");

  out.valid = out.issues.empty();
  return out;
}

}  // namespace oppenheim
