#include "sphinv/lambert.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "sphinv/errors.hpp"
#include "sphinv/inverses.hpp"

namespace sphinv {
namespace {

constexpr double kE = 2.718281828459045;        // e
constexpr double kEmInv = 0.36787944117144233;  // 1/e

double halley(double w, double d) {
  for (int i = 0; i < 30; ++i) {
    double ew = std::exp(w);
    if (!std::isfinite(ew)) {  // seed overshot; contract in log form
      w = std::log(d) - std::log(w);
      continue;
    }
    double f = w * ew - d;
    double denom = ew * (w + 1) - (w + 2) * f / (2 * w + 2);
    if (!std::isfinite(denom) || denom == 0) denom = ew * (w + 1);  // plain Newton
    if (denom == 0) break;
    double step = f / denom;
    w -= step;
    if (std::fabs(step) <= 2 * std::numeric_limits<double>::epsilon() * (std::fabs(w) + 1e-300))
      break;
  }
  return w;
}

// Series around the branch point d = -1/e: w = -1 +- p - p^2/3 +- 11 p^3/72,
// p = sqrt(2 (e d + 1)); the upper signs give W0, the lower W-1.
double branch_point_seed(double d, int branch) {
  double q = 2 * (kE * d + 1);
  double p = q > 0 ? std::sqrt(q) : 0.0;
  if (branch == -1) p = -p;
  return -1 + p - p * p / 3 + 11 * p * p * p / 72;
}

}  // namespace

double lambert_w(int branch, double d0) {
  if (branch != 0 && branch != -1)
    throw DomainError("lambert_w: real branches are 0 and -1");
  const double eps4 = 4 * std::numeric_limits<double>::epsilon();
  if (branch == 0) {
    if (d0 == 0) return 0.0;
    if (d0 < -kEmInv) {
      if (d0 >= -kEmInv * (1 + eps4)) return -1.0;  // branch point to rounding
      throw DomainError("lambert_w: branch 0 requires d0 >= -1/e");
    }
    double w;
    if (d0 > kE) {
      double l1 = std::log(d0), l2 = std::log(l1);
      w = l1 - l2 + l2 / l1;
    } else if (d0 > -0.25) {
      // Winitzki's closed-form approximation of W0, within ~2% on the whole
      // branch; ample for a Halley seed between the two asymptotic regimes.
      double l = std::log1p(d0);
      w = l * (1 - std::log1p(l) / (2 + l));
    } else {
      w = branch_point_seed(d0, 0);
    }
    return halley(w, d0);
  }
  // branch == -1
  if (!(d0 < 0)) throw DomainError("lambert_w: branch -1 requires d0 < 0");
  if (d0 < -kEmInv) {
    if (d0 >= -kEmInv * (1 + eps4)) return -1.0;
    throw DomainError("lambert_w: branch -1 requires d0 >= -1/e");
  }
  double w;
  if (d0 > -0.27) {
    double l1 = std::log(-d0), l2 = std::log(-l1);
    w = l1 - l2 + l2 / l1;
  } else {
    w = branch_point_seed(d0, -1);
  }
  return halley(w, d0);
}

double w_via_k0(int branch, double d0) {
  if (branch != 0 && branch != -1)
    throw DomainError("w_via_k0: real branches are 0 and -1");
  const double eps4 = 4 * std::numeric_limits<double>::epsilon();
  if (branch == 0) {
    if (d0 == 0) return 0.0;
    if (d0 > 0) return inverse(InverseQuery{Family::K, 0, 1, 1.0 / d0, 1e-15});
    double c0 = 1.0 / d0;
    if (std::fabs(c0 + kE) <= eps4 * kE) return -1.0;  // branch point to rounding
    if (c0 > -kE) throw DomainError("w_via_k0: branch 0 requires d0 >= -1/e");
    return inverse(InverseQuery{Family::K, 0, 0, c0, 1e-15});
  }
  if (!(d0 < 0)) throw DomainError("w_via_k0: branch -1 requires d0 < 0");
  double c0 = 1.0 / d0;
  if (std::fabs(c0 + kE) <= eps4 * kE) return -1.0;
  if (c0 > -kE) throw DomainError("w_via_k0: branch -1 requires d0 >= -1/e");
  return inverse(InverseQuery{Family::K, 0, -1, c0, 1e-15});
}

}  // namespace sphinv
