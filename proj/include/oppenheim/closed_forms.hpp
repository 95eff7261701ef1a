#pragma once

// Closed forms of the signature/exponent tables, one row per signature family.
// Entries are affine in d (and l); every value is stored as numerator/denominator pairs.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "oppenheim/numeric.hpp"

namespace oppenheim::closed_form {

struct Entry {
  long r2;  // 2 * r'
  long s2;  // 2 * s'
  Rational two_beta;
};

struct Row {
  std::string name;
  long r2 = 0, s2 = 0;
  Rational two_beta;
  std::vector<Entry> q[3];  // index k - 1
};

inline Rational fr(long p, long q) {
  if (q == 0) return Rational(0);  // only reached for entries filtered out as definite
  return Rational(p) / Rational(q);
}

// Even d; l = 0, 1, 2 and l >= 3 families.
inline Row even_row(long d, long l) {
  Row w;
  w.r2 = d + 2 * l;
  w.s2 = d - 2 * l;
  if (l == 0) {
    w.name = "(d/2,d/2)";
    w.two_beta = fr(d + 2, d - 4);
    w.q[2] = {{d - 6, d, fr(d, d - 6)}, {d - 4, d - 2, fr(d, d - 6)}, {d - 2, d - 4, fr(d, d - 6)}, {d, d - 6, fr(d, d - 6)}};
    w.q[1] = {{d - 4, d, fr(d, d - 6)}, {d - 2, d - 2, fr(d, d - 6)}, {d, d - 4, fr(d, d - 6)}};
    w.q[0] = {{d - 2, d, fr(d + 2, d - 4)}, {d, d - 2, fr(d + 2, d - 4)}};
  } else if (l == 1) {
    w.name = "((d+2)/2,(d-2)/2)";
    w.two_beta = fr(d + 2, d - 4);
    w.q[2] = {{d - 4, d - 2, fr(d, d - 6)}, {d - 2, d - 4, fr(d, d - 6)}, {d, d - 6, fr(d, d - 6)}, {d + 2, d - 8, fr(d + 2, d - 8)}};
    w.q[1] = {{d - 2, d - 2, fr(d, d - 6)}, {d, d - 4, fr(d, d - 6)}, {d + 2, d - 6, fr(d + 2, d - 6)}};
    w.q[0] = {{d, d - 2, fr(d + 2, d - 4)}, {d + 2, d - 4, fr(d + 2, d - 4)}};
  } else if (l == 2) {
    w.name = "((d+4)/2,(d-4)/2)";
    w.two_beta = fr(d + 4, d - 4);
    w.q[2] = {{d - 2, d - 4, fr(d, d - 6)}, {d, d - 6, fr(d, d - 6)}, {d + 2, d - 8, fr(d + 2, d - 8)}, {d + 4, d - 10, fr(d + 4, d - 10)}};
    w.q[1] = {{d, d - 4, fr(d, d - 6)}, {d + 2, d - 6, fr(d + 2, d - 6)}, {d + 4, d - 8, fr(d + 4, d - 8)}};
    w.q[0] = {{d + 2, d - 4, fr(d + 2, d - 4)}, {d + 4, d - 6, fr(d + 4, d - 6)}};
  } else {
    w.name = "((d+2l)/2,(d-2l)/2), l=" + std::to_string(l);
    long a = d + 2 * l, b = d - 2 * l;
    w.two_beta = fr(a, b);
    w.q[2] = {{a - 6, b, fr(a - 6, b)}, {a - 4, b - 2, fr(a - 4, b - 2)}, {a - 2, b - 4, fr(a - 2, b - 4)}, {a, b - 6, fr(a, b - 6)}};
    w.q[1] = {{a - 4, b, fr(a - 4, b)}, {a - 2, b - 2, fr(a - 2, b - 2)}, {a, b - 4, fr(a, b - 4)}};
    w.q[0] = {{a - 2, b, fr(a - 2, b)}, {a, b - 2, fr(a, b - 2)}};
  }
  return w;
}

// Odd d; l = 0, 1, 2 and l >= 3 families, signature ((d+2l+1)/2, (d-2l-1)/2).
inline Row odd_row(long d, long l) {
  Row w;
  w.r2 = d + 2 * l + 1;
  w.s2 = d - 2 * l - 1;
  if (l == 0) {
    w.name = "((d+1)/2,(d-1)/2)";
    w.two_beta = fr(d + 3, d - 3);
    w.q[2] = {{d - 5, d - 1, fr(d - 1, d - 7)}, {d - 3, d - 3, fr(d - 1, d - 7)}, {d - 1, d - 5, fr(d - 1, d - 7)}, {d + 1, d - 7, fr(d + 1, d - 7)}};
    w.q[1] = {{d - 3, d - 1, fr(d + 1, d - 5)}, {d - 1, d - 3, fr(d + 1, d - 5)}, {d + 1, d - 5, fr(d + 1, d - 5)}};
    w.q[0] = {{d - 1, d - 1, fr(d + 1, d - 5)}, {d + 1, d - 3, fr(d + 1, d - 5)}};
  } else if (l == 1) {
    w.name = "((d+3)/2,(d-3)/2)";
    w.two_beta = fr(d + 3, d - 3);
    w.q[2] = {{d - 3, d - 3, fr(d - 1, d - 7)}, {d - 1, d - 5, fr(d - 1, d - 7)}, {d + 1, d - 7, fr(d + 1, d - 7)}, {d + 3, d - 9, fr(d + 3, d - 9)}};
    w.q[1] = {{d - 1, d - 3, fr(d + 1, d - 5)}, {d + 1, d - 5, fr(d + 1, d - 5)}, {d + 3, d - 7, fr(d + 3, d - 7)}};
    w.q[0] = {{d + 1, d - 3, fr(d + 1, d - 5)}, {d + 3, d - 5, fr(d + 3, d - 5)}};
  } else if (l == 2) {
    w.name = "((d+5)/2,(d-5)/2)";
    w.two_beta = fr(d + 5, d - 5);
    w.q[2] = {{d - 1, d - 5, fr(d - 1, d - 7)}, {d + 1, d - 7, fr(d + 1, d - 7)}, {d + 3, d - 9, fr(d + 3, d - 9)}, {d + 5, d - 11, fr(d + 5, d - 11)}};
    w.q[1] = {{d + 1, d - 5, fr(d + 1, d - 5)}, {d + 3, d - 7, fr(d + 3, d - 7)}, {d + 5, d - 9, fr(d + 5, d - 9)}};
    w.q[0] = {{d + 3, d - 5, fr(d + 3, d - 5)}, {d + 5, d - 7, fr(d + 5, d - 7)}};
  } else {
    w.name = "((d+2l+1)/2,(d-2l-1)/2), l=" + std::to_string(l);
    long a = d + 2 * l + 1, b = d - 2 * l - 1;
    w.two_beta = fr(a, b);
    w.q[2] = {{a - 6, b, fr(a - 6, b)}, {a - 4, b - 2, fr(a - 4, b - 2)}, {a - 2, b - 4, fr(a - 2, b - 4)}, {a, b - 6, fr(a, b - 6)}};
    w.q[1] = {{a - 4, b, fr(a - 4, b)}, {a - 2, b - 2, fr(a - 2, b - 2)}, {a, b - 4, fr(a, b - 4)}};
    w.q[0] = {{a - 2, b, fr(a - 2, b)}, {a, b - 2, fr(a, b - 2)}};
  }
  return w;
}

/// Every family row of the table for dimension d whose signature is indefinite.
inline std::vector<Row> rows(long d) {
  std::vector<Row> out;
  for (long l = 0;; ++l) {
    Row w = d % 2 == 0 ? even_row(d, l) : odd_row(d, l);
    if (w.s2 < 2) break;
    out.push_back(w);
  }
  return out;
}

/// Upper bounds for p_3, p_2, p_1 (index k - 1); nullopt for the starred entry.
inline std::optional<Rational> p_bound(long d, long l, int k) {
  if (d % 2 == 0) {
    if (l == 0) return k == 3 ? fr(-(6 * d - 4), d * (d - 1)) : k == 2 ? fr(-6 * (d - 2), d * (d - 1)) : fr(-6, d - 1);
    if (l == 1) return k == 3 ? fr(-14, 3 * (d - 1)) : k == 2 ? fr(-4, d - 1) : fr(-6, d - 1);
    return k == 3 ? fr(-2 * (2 * l - 1), d) : k == 2 ? fr(-4 * (l - 1), d) : fr(-2 * (2 * l - 3), d);
  }
  if (l == 0) return k == 3 ? fr(-16, 3 * (d + 1)) : k == 2 ? fr(-6 * (d - 1), d * (d + 1)) : fr(-6 * (d - 5), d * (d + 1));
  if (l == 1) {
    if (k == 1) return std::nullopt;
    return k == 3 ? fr(-4, d) : fr(-2, d);
  }
  return k == 3 ? fr(-4 * l, d) : k == 2 ? fr(-2 * (2 * l - 1), d) : fr(-4 * (l - 1), d);
}

}  // namespace oppenheim::closed_form
