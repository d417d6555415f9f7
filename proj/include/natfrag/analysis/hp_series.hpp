#pragma once

// The formal power series f = sum_{n>=1} (n-1)! x^n and the identity
// f = x^2 f' + x, checked coefficient by coefficient.

#include <gmpxx.h>

#include <string>
#include <vector>

#include "natfrag/error.hpp"

namespace natfrag {

struct SeriesCheck {
  unsigned order = 0;
  std::vector<mpz_class> lhs;  // [x^m] f, m = 0..order
  std::vector<mpz_class> rhs;  // [x^m] (x^2 f' + x)
  bool holds = false;
  long first_mismatch = -1;
};

/// a_0 = 0 and a_n = (n-1)! for n >= 1.
inline std::vector<mpz_class> hp_coefficients(unsigned order) {
  std::vector<mpz_class> a(order + 1, 0);
  if (order >= 1) a[1] = 1;
  for (unsigned n = 2; n <= order; ++n) a[n] = a[n - 1] * (n - 1);
  return a;
}

/// [x^m](x^2 f') = (m-1) a_{m-1} for m >= 2; the x term adds 1 at m = 1.
inline SeriesCheck hp_series_check(unsigned order) {
  if (order < 1)
    throw Error(ErrorKind::InvalidArgument, "order must be at least 1");
  SeriesCheck r;
  r.order = order;
  r.lhs = hp_coefficients(order);
  r.rhs.assign(order + 1, 0);
  for (unsigned m = 2; m <= order; ++m) r.rhs[m] = (m - 1) * r.lhs[m - 1];
  r.rhs[1] += 1;
  r.holds = true;
  for (unsigned m = 0; m <= order; ++m)
    if (r.lhs[m] != r.rhs[m]) {
      r.holds = false;
      r.first_mismatch = m;
      break;
    }
  return r;
}

}  // namespace natfrag
