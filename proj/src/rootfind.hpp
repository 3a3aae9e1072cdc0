#pragma once

// Safeguarded bracketed root refinement: Newton steps accelerated inside a
// shrinking bisection bracket, falling back to bisection whenever a step
// leaves the bracket or the bracket stops halving.  The bracket invariant is
// never surrendered.

#include <cmath>
#include <limits>

namespace sphinv::detail {

template <class T, class F, class DF>
T refine_root(F f, DF df, T a, T b, T fa, T fb, T rel_tol) {
  if (fa == 0) return a;
  if (fb == 0) return b;
  T width_two_ago = b - a;
  T x = (a + b) / 2;
  T fx = f(x);
  for (int iter = 0; iter < 200; ++iter) {
    if (fx == 0) return x;
    if ((fx > 0) == (fa > 0)) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    T width = b - a;
    T mid = (a + b) / 2;
    if (width <= rel_tol * std::max(T(1), std::fabs(mid))) return mid;
    if (!(std::fabs(width) >
          std::numeric_limits<T>::epsilon() * 4 * std::max(std::fabs(a), std::fabs(b))))
      return mid;  // bracket at ulp resolution
    bool force_bisect = false;
    if (iter % 2 == 1) {
      // Demand geometric progress every other step or fall back to bisection.
      if (width > width_two_ago * T(0.45)) force_bisect = true;
      width_two_ago = width;
    }
    T cand = mid;
    if (!force_bisect) {
      // Newton from the endpoint with the smaller residual, secant fallback.
      bool from_a = std::fabs(fa) < std::fabs(fb);
      T x0 = from_a ? a : b;
      T f0 = from_a ? fa : fb;
      T d = df(x0);
      bool have = false;
      if (std::isfinite(d) && d != 0) {
        T xn = x0 - f0 / d;
        if (std::isfinite(xn) && xn > a && xn < b) {
          cand = xn;
          have = true;
        }
      }
      if (!have && fb != fa) {
        T xs = a - fa * (b - a) / (fb - fa);
        if (std::isfinite(xs) && xs > a && xs < b) cand = xs;
      }
    }
    x = cand;
    fx = f(x);
  }
  return (a + b) / 2;
}

}  // namespace sphinv::detail
