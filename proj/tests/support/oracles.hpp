#pragma once

// Brute-force references used to cross-check the fast paths.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "oppenheim/forms.hpp"

namespace oracle {

using oppenheim::int128;
using oppenheim::IntegerForm;
using oppenheim::IntVector;

template <typename Visit>
void each_vector(const IntegerForm& f, std::int64_t budget, Eigen::Index i, int128 used, IntVector& m, Visit&& visit) {
  if (i == f.dim()) {
    visit(m, used);
    return;
  }
  std::int64_t c = f[i] < 0 ? -f[i] : f[i];
  for (std::int64_t k = 0; used + int128(c) * k * k <= budget; ++k)
    for (int sg : {1, -1}) {
      if (k == 0 && sg < 0) continue;
      m[i] = sg * k;
      each_vector(f, budget, i + 1, used + int128(c) * k * k, m, visit);
    }
  m[i] = 0;
}

/// Every nonzero m with weighted norm <= budget.
template <typename Visit>
void each_vector(const IntegerForm& f, std::int64_t budget, Visit&& visit) {
  IntVector m = IntVector::Zero(f.dim());
  each_vector(f, budget, 0, 0, m, [&](const IntVector& v, int128 norm) {
    if (norm > 0) visit(v, norm);
  });
}

/// Minimal isotropic norm, with the tie broken towards the lexicographically greatest |m|.
inline std::optional<std::pair<int128, IntVector>> min_isotropic(const IntegerForm& f, std::int64_t budget) {
  std::optional<std::pair<int128, IntVector>> best;
  each_vector(f, budget, [&](const IntVector& v, int128 norm) {
    if (oppenheim::evaluate(f, v) != 0) return;
    IntVector a = v.cwiseAbs();
    if (!best || norm < best->first ||
        (norm == best->first && std::lexicographical_compare(best->second.begin(), best->second.end(), a.begin(), a.end())))
      best = std::make_pair(norm, a);
  });
  return best;
}

/// Least weighted norm nonzero m with |Q[m]| < eps by full enumeration in exact rationals.
inline std::optional<std::pair<oppenheim::Rational, IntVector>> min_small_value(const oppenheim::RationalForm& f, const oppenheim::Rational& eps,
                                                                                 const oppenheim::Rational& budget) {
  using oppenheim::Rational;
  std::optional<std::pair<Rational, IntVector>> best;
  IntVector m = IntVector::Zero(f.dim());
  auto rec = [&](auto&& self, Eigen::Index i, const Rational& used, const Rational& value) -> void {
    if (i == f.dim()) {
      if (m.isZero() || !(boost::multiprecision::abs(value) < eps)) return;
      IntVector a = m.cwiseAbs();
      if (!best || used < best->first ||
          (used == best->first && std::lexicographical_compare(best->second.begin(), best->second.end(), a.begin(), a.end())))
        best = std::make_pair(used, a);
      return;
    }
    Rational c = boost::multiprecision::abs(f[i]);
    for (std::int64_t k = 0; used + c * k * k <= budget; ++k)
      for (int sg : {1, -1}) {
        if (k == 0 && sg < 0) continue;
        m[i] = sg * k;
        self(self, i + 1, used + c * k * k, value + f[i] * k * k);
      }
    m[i] = 0;
  };
  rec(rec, 0, Rational(0), Rational(0));
  return best;
}

}  // namespace oracle
