#include "oppenheim/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "oppenheim/exponents.hpp"

namespace oppenheim {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && int128(r) * r > n) --r;
  while (int128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

// reach[i] marks the values <= window taken by sum_{j >= i} c_j m_j^2; reach[k] = {0}.
std::vector<Bits> suffix_reach(const std::vector<std::int64_t>& c, std::int64_t window) {
  const auto size = static_cast<std::size_t>(window) + 1;
  std::vector<Bits> reach(c.size() + 1, Bits(size));
  reach[c.size()].set(0);
  for (std::size_t i = c.size(); i-- > 0;) {
    Bits acc = reach[i + 1];
    for (std::int64_t m = 1;; ++m) {
      int128 shift = int128(c[i]) * m * m;
      if (shift > window) break;
      acc |= reach[i + 1] << static_cast<std::size_t>(shift);
    }
    reach[i] = std::move(acc);
  }
  return reach;
}

// Lexicographically greatest nonnegative representation of value.
std::vector<std::int64_t> rebuild(const std::vector<std::int64_t>& c, const std::vector<Bits>& reach, std::int64_t value) {
  std::vector<std::int64_t> m(c.size(), 0);
  std::int64_t rest = value;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::int64_t k = isqrt(rest / c[i]); k >= 0; --k) {
      std::int64_t left = rest - c[i] * k * k;
      if (reach[i + 1].test(static_cast<std::size_t>(left))) {
        m[i] = k;
        rest = left;
        break;
      }
    }
  }
  return m;
}

void require_indefinite(const IntegerForm& form) {
  if (form.signature().t != 0) throw std::invalid_argument("zero coefficients are not allowed here");
  if (!form.indefinite()) throw DefiniteFormError("definite form: no nontrivial zeros exist");
}

std::int64_t gcd_all(const IntVector& m) {
  std::int64_t g = 0;
  for (Eigen::Index i = 0; i < m.size(); ++i) g = std::gcd(g, m[i] < 0 ? -m[i] : m[i]);
  return g;
}

}  // namespace

IsotropicWitness make_witness(const IntegerForm& form, const IntVector& m) {
  IsotropicWitness w;
  w.m = m;
  w.form_value = evaluate(form, m);
  w.weighted_norm = weighted_norm(form, m);
  w.content_reduced = gcd_all(m) == 1;
  return w;
}

std::optional<IsotropicWitness> min_isotropic(const IntegerForm& form, std::int64_t norm_budget, const IsotropicSearchOptions& options) {
  require_indefinite(form);
  if (form.dim() < 2) throw std::invalid_argument("min_isotropic needs d >= 2");
  if (norm_budget < 1) throw std::invalid_argument("norm budget must be >= 1");

  std::vector<std::int64_t> pos, neg;
  std::vector<Eigen::Index> pos_at, neg_at;
  for (Eigen::Index i = 0; i < form.dim(); ++i) {
    if (form[i] > 0) {
      pos.push_back(form[i]);
      pos_at.push_back(i);
    } else {
      neg.push_back(-form[i]);
      neg_at.push_back(i);
    }
  }

  // an isotropic vector splits as positive part = negative part = V, with norm 2V
  const std::int64_t limit = norm_budget / 2;
  std::int64_t window = std::min<std::int64_t>(limit, 64);
  while (window >= 1) {
    if (window > options.max_window)
      throw std::length_error("isotropic search window " + std::to_string(window) + " exceeds the cap " + std::to_string(options.max_window));
    auto pr = suffix_reach(pos, window);
    auto nr = suffix_reach(neg, window);
    Bits both = pr[0] & nr[0];
    both.reset(0);
    auto v = both.find_first();
    if (v != Bits::npos) {
      auto value = static_cast<std::int64_t>(v);
      auto mp = rebuild(pos, pr, value), mn = rebuild(neg, nr, value);
      IntVector m = IntVector::Zero(form.dim());
      for (std::size_t i = 0; i < pos.size(); ++i) m[pos_at[i]] = mp[i];
      for (std::size_t i = 0; i < neg.size(); ++i) m[neg_at[i]] = mn[i];
      IsotropicWitness w = make_witness(form, m);
      if (w.form_value != 0) throw std::logic_error("reconstructed vector is not isotropic");
      return w;
    }
    if (window == limit) break;
    window = std::min(limit, window * 2);
  }
  return std::nullopt;
}

SchlickeweiCheck verify_schlickewei(const IntegerForm& form, double c, std::int64_t budget_cap) {
  require_indefinite(form);
  const int d = static_cast<int>(form.dim());
  if (d < 5) throw std::domain_error("verify_schlickewei needs d >= 5");
  if (!(c > 0)) throw std::domain_error("budget factor must be positive");
  SchlickeweiCheck out;
  out.exponent = (2 * beta(form.signature().r, form.signature().s) + 1) / Rational(d);
  Float50 e = Float50(mp::numerator(out.exponent)) / Float50(mp::denominator(out.exponent));
  Float50 base = exp(e * log(Float50(extremes(form).detQ)));
  out.bound_base = to_long_double(base);

  Float50 start = ceil(Float50(c) * base);
  std::int64_t budget = start > Float50(budget_cap) ? budget_cap : std::max<std::int64_t>(2, static_cast<std::int64_t>(start));
  for (;;) {
    std::optional<IsotropicWitness> w;
    try {
      w = min_isotropic(form, budget);
    } catch (const std::length_error& err) {
      throw SearchExhausted(err.what(), budget);
    }
    if (w) {
      out.witness = *w;
      out.min_norm = static_cast<std::int64_t>(w->weighted_norm);
      out.budget = budget;
      out.ratio = static_cast<long double>(out.min_norm) / out.bound_base;
      return out;
    }
    if (budget >= budget_cap) throw SearchExhausted("no isotropic vector with weighted norm <= " + std::to_string(budget), budget);
    budget = budget > budget_cap / 2 ? budget_cap : budget * 2;
  }
}

int d0_lower_bound(int r, int s, int t) {
  if (r < 0 || s < 0 || t < 0) throw std::domain_error("signature counts must be nonnegative");
  if (r < s) std::swap(r, s);
  if (r + s < 5) throw std::domain_error("d0_lower_bound needs r + s >= 5");
  if (r >= s + 3) return s + t;
  if (r >= s + 1) return s + t - 1;
  return s + t - 2;
}

int128 polarization(const IntegerForm& form, const IntVector& u, const IntVector& v) {
  if (u.size() != form.dim() || v.size() != form.dim()) throw std::invalid_argument("vector length does not match the form dimension");
  int128 acc = 0;
  for (Eigen::Index i = 0; i < form.dim(); ++i) acc = checked_add(acc, checked_mul(form[i], checked_mul(u[i], v[i])));
  return acc;
}

namespace {

bool independent(const IntVector& u, const IntVector& v) {
  for (Eigen::Index i = 0; i < u.size(); ++i)
    for (Eigen::Index j = i + 1; j < u.size(); ++j)
      if (int128(u[i]) * v[j] != int128(u[j]) * v[i]) return true;
  return false;
}

struct Candidate {
  IntVector m;
  int128 norm;
};

// every sign-canonical isotropic vector with weighted norm <= budget
void collect(const IntegerForm& f, std::int64_t budget, std::int64_t cap, Eigen::Index i, int128 used, int128 value, bool leading,
             IntVector& m, std::vector<Candidate>& out) {
  if (i == f.dim()) {
    if (!leading && value == 0) {
      out.push_back({m, used});
      if (static_cast<std::int64_t>(out.size()) > cap) throw std::length_error("too many isotropic candidates within the budget");
    }
    return;
  }
  const std::int64_t c = f[i] < 0 ? -f[i] : f[i];
  const std::int64_t top = isqrt(static_cast<std::int64_t>((budget - used) / c));
  for (std::int64_t k = leading ? 0 : -top; k <= top; ++k) {
    m[i] = k;
    collect(f, budget, cap, i + 1, used + int128(c) * k * k, value + int128(f[i]) * k * k, leading && k == 0, m, out);
  }
  m[i] = 0;
}

}  // namespace

bool validate_subspace(const IntegerForm& form, const SubspaceWitness& w) {
  if (w.dim != static_cast<int>(w.basis.size()) || w.dim < 1) return false;
  for (std::size_t a = 0; a < w.basis.size(); ++a) {
    if (evaluate(form, w.basis[a]) != 0) return false;
    if (w.basis[a].isZero()) return false;
    for (std::size_t b = a + 1; b < w.basis.size(); ++b) {
      if (polarization(form, w.basis[a], w.basis[b]) != 0) return false;
      if (!independent(w.basis[a], w.basis[b])) return false;
    }
  }
  return w.dim <= 2;
}

std::optional<SubspaceWitness> isotropic_plane_witness(const IntegerForm& form, std::int64_t budget, std::int64_t max_candidates) {
  require_indefinite(form);
  if (form.dim() < 4) throw std::invalid_argument("isotropic_plane_witness needs d >= 4");
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");

  std::vector<Candidate> cands;
  IntVector m = IntVector::Zero(form.dim());
  collect(form, budget, max_candidates, 0, 0, 0, true, m, cands);
  if (cands.empty()) return std::nullopt;
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return std::lexicographical_compare(b.m.begin(), b.m.end(), a.m.begin(), a.m.end());
  });

  for (std::size_t i = 0; i < cands.size(); ++i)
    for (std::size_t j = i + 1; j < cands.size(); ++j)
      if (polarization(form, cands[i].m, cands[j].m) == 0 && independent(cands[i].m, cands[j].m))
        return SubspaceWitness{{cands[i].m, cands[j].m}, 2};
  return SubspaceWitness{{cands.front().m}, 1};
}

}  // namespace oppenheim
