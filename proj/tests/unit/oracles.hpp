#pragma once

#include <cmath>
#include <functional>

namespace lef::testing {

// Golden-section search for the minimizer of a unimodal function, in
// extended precision.
inline long double golden_argmin(const std::function<long double(long double)>& f,
                                 long double lo, long double hi) {
  const long double r = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  long double x1 = hi - r * (hi - lo), x2 = lo + r * (hi - lo);
  long double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 300 && hi - lo > 1e-30L; ++i) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - r * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + r * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5L * (lo + hi);
}

inline double relative_error(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace lef::testing
