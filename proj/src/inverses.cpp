#include "sphinv/inverses.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "sphinv/laurent.hpp"
#include "rootfind.hpp"

namespace sphinv {
namespace {

std::string fn_name(Family fam, int n) {
  return std::string(family_name(fam)) + "_" + std::to_string(n);
}

// A point strictly inside the branch at which f is evaluable.
double interior_anchor(const BranchInterval& bi) {
  bool lf = std::isfinite(bi.left), rf = std::isfinite(bi.right);
  if (lf && rf) {
    double mid = bi.left + (bi.right - bi.left) / 2;
    if (mid == 0.0 && family_has_pole(bi.family)) mid = bi.left + (bi.right - bi.left) / 3;
    return mid;
  }
  if (lf) return bi.left == 0.0 ? 1.0 : bi.left + 1.0;
  if (rf) return bi.right == 0.0 ? -1.0 : bi.right - 1.0;
  return 0.0;
}

struct Bracket {
  double a, b, fa, fb;
};

// March from the anchor toward an open end (pole abscissa 0, finite open
// endpoint, or +-infinity) until g changes sign.
template <class G>
Bracket march(G g, double anchor, double ganchor, double target) {
  double x0 = anchor, f0 = ganchor;
  auto packed = [&](double x1, double f1) {
    return x1 < x0 ? Bracket{x1, x0, f1, f0} : Bracket{x0, x1, f0, f1};
  };
  if (std::isfinite(target)) {
    // Geometric approach: halve the gap to the target each step.
    for (int k = 0; k < 1100; ++k) {
      double x1 = target + (x0 - target) / 2;
      if (x1 == x0 || x1 == target) break;
      double f1 = g(x1);
      if (std::isfinite(f1) && (f1 > 0) != (f0 > 0)) return packed(x1, f1);
      x0 = x1;
      f0 = f1;
    }
  } else {
    double dir = target > 0 ? 1.0 : -1.0;
    double scale = std::max(1.0, std::fabs(anchor));
    for (int k = 0; k < 101; ++k) {  // out to ~2^100 * scale
      double x1 = anchor + dir * scale * std::pow(2.0, k);
      double f1 = g(x1);
      if (std::isfinite(f1) && (f1 > 0) != (f0 > 0)) return packed(x1, f1);
      x0 = x1;
      f0 = f1;
    }
  }
  throw BracketError("bracket march failed to straddle the target ordinate");
}

bool near(double a, double b, double rel) {
  return std::fabs(a - b) <= rel * std::max({1.0, std::fabs(a), std::fabs(b)});
}

// Upper bound on |f_n(x)| for |x| >= X: sum_l (|p_l| + |q_l|) X^{-l}.
double envelope_at(Family fam, int n, double X) {
  const LaurentForm& row = coefficients(fam, n);
  double u = 1.0 / X, upow = 1.0, s = 0.0;
  std::size_t len = std::max(row.pcoeffs.size(), row.qcoeffs.size());
  for (std::size_t l = 0; l < len; ++l) {
    upow *= u;
    double c = 0;
    if (l < row.pcoeffs.size()) c += std::fabs(row.pcoeffs[l].get_d());
    if (l < row.qcoeffs.size()) c += std::fabs(row.qcoeffs[l].get_d());
    s += c * upow;
  }
  return s;
}

// Smallest |x| over the branch (0 when the branch touches or straddles the
// origin).
double nearest_abs(const BranchInterval& bi) {
  if (bi.left >= 0) return bi.left;
  if (bi.right <= 0) return std::fabs(bi.right);
  return 0.0;
}

}  // namespace

double inverse(const InverseQuery& q) {
  if (!(q.tolerance > 0) || q.tolerance > 1e-6)
    throw DomainError("tolerance must lie in (0, 1e-6]");
  double tol = std::max(q.tolerance, 1e-15);
  BranchInterval bi = branch_interval(q.family, q.n, q.b);
  double c0 = q.c0;

  // A target within a few ulp of a closed endpoint ordinate snaps to the
  // endpoint abscissa.
  const double snap = 8 * std::numeric_limits<double>::epsilon();
  if (bi.range.hi_closed && near(c0, bi.range.hi, snap))
    return bi.increasing ? bi.right : bi.left;
  if (bi.range.lo_closed && near(c0, bi.range.lo, snap))
    return bi.increasing ? bi.left : bi.right;

  if (!range_contains(bi.range, c0)) {
    auto fmt = [](double v) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.9g", v);
      return std::string(buf);
    };
    throw OutOfRangeError("c0 = " + fmt(c0) + " lies outside the ordinate range " +
                          (bi.range.lo_closed ? "[" : "(") + fmt(bi.range.lo) + ", " +
                          fmt(bi.range.hi) + (bi.range.hi_closed ? "]" : ")") + " of branch " +
                          std::to_string(q.b) + " of " + fn_name(q.family, q.n));
  }

  auto g = [&](double t) { return eval(q.family, q.n, t) - c0; };
  auto dg = [&](double t) { return eval_derivative(q.family, q.n, t); };

  double anchor = interior_anchor(bi);
  double ga = g(anchor);
  if (ga == 0) return anchor;

  // The root lies where f still approaches c0: right of the anchor on an
  // increasing branch iff f(anchor) < c0.
  bool root_right = bi.increasing ? (ga < 0) : (ga > 0);
  double a, b, fa, fb;
  if (root_right) {
    if (std::isfinite(bi.right) && bi.right != 0.0) {
      // Finite non-pole right end is a closed stationary endpoint.
      a = anchor;
      fa = ga;
      b = bi.right;
      fb = g(b);
      if ((fb > 0) == (fa > 0)) return b;  // c0 at the endpoint to rounding
    } else {
      Bracket br = march(g, anchor, ga, bi.right);
      a = br.a;
      b = br.b;
      fa = br.fa;
      fb = br.fb;
    }
  } else {
    if (std::isfinite(bi.left) && bi.left != 0.0) {
      // Finite non-pole left end: open but evaluable (a stationary point of
      // the neighboring branch).
      a = bi.left;
      fa = g(a);
      b = anchor;
      fb = ga;
      if ((fb > 0) == (fa > 0)) return a;  // c0 at the open boundary to rounding
    } else {
      Bracket br = march(g, anchor, ga, bi.left);
      a = br.a;
      b = br.b;
      fa = br.fa;
      fb = br.fb;
    }
  }
  return detail::refine_root<double>(g, dg, a, b, fa, fb, tol);
}

double inverse(Family family, int n, int b, double c0, double tolerance) {
  return inverse(InverseQuery{family, n, b, c0, tolerance});
}

long double inverse_ld(Family family, int n, int b, long double c0) {
  double xd = inverse(family, n, b, static_cast<double>(c0), 1e-14);
  BranchInterval bi = branch_interval(family, n, b);
  long double x = xd;
  long double lo = bi.left, hi = bi.right;
  for (int i = 0; i < 8; ++i) {
    long double fx = eval_ld(family, n, x) - c0;
    if (fx == 0) break;
    long double d = eval_derivative_ld(family, n, x);
    if (!std::isfinite(d) || d == 0) break;
    long double step = fx / d;
    long double xn = x - step;
    if (xn <= lo || xn >= hi) break;  // stay inside the branch
    x = xn;
    if (std::fabs(step) <= 1e-19L * std::max(1.0L, std::fabs(x))) break;
  }
  return x;
}

BranchSet branches_containing(Family family, int n, double c0, const BranchLimits& limits) {
  if (limits.max_abs_branch < 0 || !(limits.max_abs_x > 0))
    throw DomainError("branch limits must be nonnegative / positive");
  BranchSet out;
  double a0 = std::fabs(c0);

  if (!family_oscillates(family)) {
    // At most three branches in total; enumerate and test.
    std::vector<int> candidates;
    if (family == Family::I) {
      if (n % 2 == 0) candidates = {0, 1};
      else candidates = {1};
    } else {
      if (n % 2 == 0) candidates = {-1, 0, 1};
      else candidates = {0, 1};
    }
    for (int b : candidates) {
      BranchInterval bi = branch_interval(family, n, b);
      if (!range_contains(bi.range, c0)) continue;
      if (std::abs(b) > limits.max_abs_branch || nearest_abs(bi) > limits.max_abs_x) {
        out.truncated = true;
        continue;
      }
      out.branches.push_back(b);
    }
    std::sort(out.branches.begin(), out.branches.end());
    return out;
  }

  // Oscillating families: iterate outward on each side; the envelope bound
  // is monotone decreasing in |x|, so once it falls below |c0| no further
  // branch on that side can attain c0.
  auto sweep = [&](int b0, int step, std::vector<int>& dst) {
    for (int b = b0;; b += step) {
      BranchInterval bi = branch_interval(family, n, b);
      double X = nearest_abs(bi);
      if (X > 0 && envelope_at(family, n, X) < a0) break;  // provably exhausted
      if (std::abs(b) > limits.max_abs_branch || X > limits.max_abs_x) {
        out.truncated = true;  // the envelope still admits c0 beyond the limit
        break;
      }
      if (range_contains(bi.range, c0)) dst.push_back(b);
    }
  };
  std::vector<int> up, down;
  sweep(1, +1, up);
  sweep(0, -1, down);
  out.branches.assign(down.rbegin(), down.rend());
  out.branches.insert(out.branches.end(), up.begin(), up.end());
  return out;
}

double fixed_point_check(Family family, int n, int b) {
  BranchInterval bi = branch_interval(family, n, b);
  auto g = [&](double t) { return eval(family, n, t) - t; };
  auto dg = [&](double t) { return eval_derivative(family, n, t) - 1.0; };

  // Scan grid: uniform across the finite core, geometric toward poles and
  // infinities.  Grid points are ascending and all lie inside the branch
  // closure; endpoints are included only where f is evaluable.
  std::vector<double> grid;
  bool lf = std::isfinite(bi.left), rf = std::isfinite(bi.right);
  bool left_pole = lf && bi.left == 0.0 && family_has_pole(family);
  bool right_pole = rf && bi.right == 0.0 && family_has_pole(family);

  double core_lo = lf ? bi.left : std::min(-64.0, rf ? bi.right - 64.0 : 0.0);
  double core_hi = rf ? bi.right : std::max(64.0, lf ? bi.left + 64.0 : 0.0);

  if (!lf) {
    // Geometric tail toward -infinity (exp growth settles signs quickly).
    for (int k = 9; k >= 0; --k) grid.push_back(core_lo * std::pow(2.0, k));
  } else if (left_pole) {
    double ref = right_pole ? 1.0 : std::fabs(core_hi);
    for (int k = 60; k >= 1; --k) grid.push_back(ref * std::pow(2.0, -k));
  }

  double ulo = left_pole ? (rf ? core_hi / 2 : 0.5) : core_lo;
  double uhi = right_pole ? core_lo / 2 : core_hi;
  if (ulo < uhi) {
    const int cells = 256;
    for (int i = 0; i <= cells; ++i) grid.push_back(ulo + (uhi - ulo) * i / cells);
  } else {
    grid.push_back(ulo);
  }

  if (!rf) {
    for (int k = 0; k <= 9; ++k) grid.push_back(core_hi * std::pow(2.0, k));
  } else if (right_pole) {
    double ref = std::fabs(core_lo);
    for (int k = 1; k <= 60; ++k) grid.push_back(-ref * std::pow(2.0, -k) * 0.5);
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  auto in_branch = [&](double x) {
    return (x > bi.left || (bi.left_closed && x == bi.left)) &&
           (x < bi.right || (bi.right_closed && x == bi.right));
  };

  double prev_x = 0, prev_g = 0;
  bool have_prev = false;
  for (double x : grid) {
    if (!in_branch(x) && x != bi.left) continue;  // open left endpoint is still evaluable
    if (x == 0.0 && family_has_pole(family)) continue;
    double gx = g(x);
    if (!std::isfinite(gx)) {
      have_prev = false;
      continue;
    }
    if (gx == 0 && in_branch(x)) return x;
    if (have_prev && (gx > 0) != (prev_g > 0)) {
      double root = detail::refine_root<double>(g, dg, prev_x, x, prev_g, gx, 1e-15);
      if (in_branch(root)) return root;
    }
    prev_x = x;
    prev_g = gx;
    have_prev = true;
  }
  throw NoFixedPointError("f(x) = x has no solution in branch " + std::to_string(b) + " of " +
                          fn_name(family, n));
}

}  // namespace sphinv
