#include "sphinv/extrema.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "sphinv/laurent.hpp"
#include "rootfind.hpp"

namespace sphinv {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string addr(Family fam, int n, int idx) {
  return std::string(family_name(fam)) + "_" + std::to_string(n) + ", index " + std::to_string(idx);
}

// Refined stationary point inside a derivative sign-change bracket.
double refine_stationary(Family fam, int n, double a, double b, double fa, double fb) {
  auto fp = [&](double t) { return eval_derivative(fam, n, t); };
  auto fpp = [&](double t) { return eval_second_derivative(fam, n, t); };
  return detail::refine_root<double>(fp, fpp, a, b, fa, fb, 1e-15);
}

// Positive-axis stationary points of f_n, lazily extended and memoized.
// Scanning f' for sign changes in pi/8 steps is safe: consecutive stationary
// points of these families are never closer than ~pi/2 on the positive axis.
struct PositiveScan {
  std::vector<double> abscissas;
  double next_x = 0;       // scan frontier
  double last_sign = 0;    // sign of f' at the frontier
};

// k-th positive stationary abscissa (k >= 1), NaN when the scan safety cap
// is hit first.  Returned by value: the backing vector may grow later.
double positive_stationary(Family fam, int n, std::size_t k) {
  static std::mutex mu;
  static std::map<std::pair<char, int>, PositiveScan> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<char>(fam), n);
  PositiveScan& sc = cache[key];
  const double step = M_PI / 8;
  if (sc.next_x == 0) {
    sc.next_x = 1e-4;
    sc.last_sign = eval_derivative(fam, n, sc.next_x);
    // For even-order J the derivative vanishes at 0 itself (the m = 0
    // record); the scan starts strictly to the right of it.
  }
  while (sc.abscissas.size() < k) {
    double x0 = sc.next_x, x1 = x0 + step;
    double f0 = sc.last_sign, f1 = eval_derivative(fam, n, x1);
    if ((f0 > 0) != (f1 > 0) && f0 != 0) {
      sc.abscissas.push_back(refine_stationary(fam, n, x0, x1, f0, f1));
    }
    sc.next_x = x1;
    sc.last_sign = f1;
    if (x1 > 1e6) return kNaN;  // unreachable for sane indices; safety net
  }
  return sc.abscissas[k - 1];
}

// The single negative-axis maximum of even-order k_n.
double k_negative_stationary(Family fam, int n) {
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  const double step = M_PI / 8;
  double a = -1e-4, fa = eval_derivative(fam, n, a);
  double root = kNaN;
  for (int i = 0; i < 4000; ++i) {
    double b = a - step, fb = eval_derivative(fam, n, b);
    if ((fa > 0) != (fb > 0)) {
      root = refine_stationary(fam, n, b, a, fb, fa);
      break;
    }
    a = b;
    fa = fb;
  }
  cache[n] = root;
  return root;
}

ExtremumRecord pole_record(Family fam, int n) {
  ExtremumRecord r;
  r.family = fam;
  r.n = n;
  r.m = 0;
  r.abscissa = 0;
  r.ordinate = kNaN;
  r.kind = ExtremumKind::pole;
  EvalOptions above, below;
  above.at_pole = AtPole::from_above;
  below.at_pole = AtPole::from_below;
  r.limit_from_above = eval(fam, n, 0.0, above);
  r.limit_from_below = eval(fam, n, 0.0, below);
  return r;
}

ExtremumRecord stationary_record(Family fam, int n, int m, double x) {
  ExtremumRecord r;
  r.family = fam;
  r.n = n;
  r.m = m;
  r.abscissa = x;
  r.ordinate = eval(fam, n, x);
  r.kind = ExtremumKind::stationary;
  return r;
}

ExtremumRecord make_record(Family fam, int n, int m) {
  switch (fam) {
    case Family::Y: {
      if (m == 0) return pole_record(fam, n);
      std::size_t k = static_cast<std::size_t>(std::abs(m));
      double x = positive_stationary(fam, n, k);
      if (std::isnan(x)) throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
      if (m > 0) return stationary_record(fam, n, m, x);
      // y_n(-x) = (-1)^{n+1} y_n(x): abscissas mirror, ordinates flip for even n.
      ExtremumRecord r = stationary_record(fam, n, m, x);
      r.abscissa = -r.abscissa;
      if (n % 2 == 0) r.ordinate = -r.ordinate;
      return r;
    }
    case Family::J: {
      bool even = (n % 2 == 0);
      if (even) {
        if (m == 0) {
          ExtremumRecord r;
          r.family = fam;
          r.n = n;
          r.m = 0;
          r.abscissa = 0;
          r.ordinate = (n == 0) ? 1.0 : 0.0;
          r.kind = ExtremumKind::stationary;
          return r;
        }
        std::size_t k = static_cast<std::size_t>(std::abs(m));
        double x = positive_stationary(fam, n, k);
        if (std::isnan(x)) throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
        ExtremumRecord r = stationary_record(fam, n, m, x);
        if (m < 0) r.abscissa = -r.abscissa;  // even: ordinate preserved
        return r;
      }
      // Odd order: no stationary point at 0; x_{-k} = -x_{k+1}, ordinate
      // negated (j_n(-x) = -j_n(x) for odd n).
      std::size_t k = (m >= 1) ? static_cast<std::size_t>(m) : static_cast<std::size_t>(1 - m);
      double x = positive_stationary(fam, n, k);
      if (std::isnan(x)) throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
      ExtremumRecord r = stationary_record(fam, n, m, x);
      if (m < 1) {
        r.abscissa = -r.abscissa;
        r.ordinate = -r.ordinate;
      }
      return r;
    }
    case Family::I: {
      if (n % 2 == 0 && m == 0) {
        ExtremumRecord r;
        r.family = fam;
        r.n = n;
        r.m = 0;
        r.abscissa = 0;
        r.ordinate = (n == 0) ? 1.0 : 0.0;
        r.kind = ExtremumKind::stationary;
        return r;
      }
      throw NoSuchExtremumError("no extremum at " + addr(fam, n, m) +
                                (n % 2 == 1 ? " (odd-order i_n is strictly increasing on R)" : ""));
    }
    case Family::K: {
      if (m == 0) return pole_record(fam, n);
      if (m == -1 && n % 2 == 0) {
        double x = k_negative_stationary(fam, n);
        if (std::isnan(x)) throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
        return stationary_record(fam, n, m, x);
      }
      throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
    }
  }
  throw NoSuchExtremumError("no extremum at " + addr(fam, n, m));
}

// Branch boundary abscissa x_m, with -+infinity standing in for missing
// records on the unbounded families.
double boundary(Family fam, int n, int m) {
  switch (fam) {
    case Family::Y:
    case Family::J:
      return infsupum(fam, n, m).abscissa;
    case Family::I:
      if (n % 2 == 0 && m == 0) return 0.0;
      return m <= (n % 2 == 0 ? -1 : 0) ? -kInf : kInf;
    case Family::K: {
      if (m == 0) return 0.0;
      if (n % 2 == 0 && m == -1) return infsupum(fam, n, -1).abscissa;
      int lowest = (n % 2 == 0) ? -1 : 0;
      return m < lowest ? -kInf : kInf;
    }
  }
  return kNaN;
}

ExtremumKind boundary_kind(Family fam, int n, int m) {
  if (!std::isfinite(boundary(fam, n, m))) return ExtremumKind::boundary;
  return infsupum(fam, n, m).kind;
}

// Limit of f_n toward an infinite branch end.
double infinity_limit(Family fam, int n, int direction) {
  switch (fam) {
    case Family::Y:
    case Family::J:
      return 0.0;  // not used: oscillating branches are bounded
    case Family::I:
      if (direction > 0) return kInf;
      return (n % 2 == 0) ? kInf : -kInf;
    case Family::K:
      return (direction > 0) ? 0.0 : -kInf;
  }
  return kNaN;
}

}  // namespace

const ExtremumRecord& infsupum(Family family, int n, int m) {
  if (n < 0) throw DomainError("order n must be nonnegative");
  static std::mutex mu;
  static std::map<std::tuple<char, int, int>, ExtremumRecord> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({static_cast<char>(family), n, m});
    if (it != cache.end()) return it->second;
  }
  ExtremumRecord rec = make_record(family, n, m);  // may throw; built unlocked
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::make_tuple(static_cast<char>(family), n, m), std::move(rec))
      .first->second;
}

bool branch_exists(Family family, int n, int b) {
  try {
    branch_interval(family, n, b);
    return true;
  } catch (const NoSuchBranchError&) {
    return false;
  } catch (const NoSuchExtremumError&) {
    return false;
  }
}

BranchInterval branch_interval(Family family, int n, int b) {
  if (n < 0) throw DomainError("order n must be nonnegative");
  double left, right;
  try {
    left = boundary(family, n, b - 1);
    right = boundary(family, n, b);
  } catch (const NoSuchExtremumError&) {
    throw NoSuchBranchError("no branch " + std::to_string(b) + " for " + addr(family, n, b));
  }
  if (!(left < right))
    throw NoSuchBranchError("no branch " + std::to_string(b) + " for " + addr(family, n, b));

  BranchInterval bi;
  bi.family = family;
  bi.n = n;
  bi.b = b;
  bi.left = left;
  bi.right = right;
  bi.left_closed = false;  // closed-right convention
  bi.right_closed =
      std::isfinite(right) && boundary_kind(family, n, b) == ExtremumKind::stationary;

  // Monotonicity probe at two interior points.
  double pa, pb;
  if (std::isfinite(left) && std::isfinite(right)) {
    double w = right - left;
    pa = left + w / 3;
    pb = left + 2 * w / 3;
  } else if (std::isfinite(left)) {
    pa = left + 1;
    pb = left + 2;
  } else if (std::isfinite(right)) {
    pa = right - 2;
    pb = right - 1;
  } else {
    pa = -1;
    pb = 1;
  }
  bi.increasing = eval(family, n, pa) < eval(family, n, pb);

  // Endpoint ordinates (value or limit), with attainment flags.
  auto end_value = [&](double x, bool closed, int side) -> std::pair<double, bool> {
    if (!std::isfinite(x)) return {infinity_limit(family, n, side), false};
    if (x == 0.0 && family_has_pole(family)) {
      EvalOptions o;
      // Left endpoint 0 means the branch sits right of the pole: x -> 0+.
      o.at_pole = (side < 0) ? AtPole::from_above : AtPole::from_below;
      return {eval(family, n, 0.0, o), false};
    }
    double v = eval(family, n, x);
    return {v, closed};
  };
  auto [lv, lc] = end_value(left, bi.left_closed, -1);
  auto [rv, rc] = end_value(right, bi.right_closed, +1);
  if (bi.increasing) {
    bi.range = {lv, rv, lc, rc};
  } else {
    bi.range = {rv, lv, rc, lc};
  }
  if (!std::isfinite(bi.range.lo)) bi.range.lo_closed = false;
  if (!std::isfinite(bi.range.hi)) bi.range.hi_closed = false;
  return bi;
}

bool range_contains(const OrdinateRange& r, double c0) {
  bool above = c0 > r.lo || (r.lo_closed && c0 == r.lo);
  bool below = c0 < r.hi || (r.hi_closed && c0 == r.hi);
  return above && below;
}

int branch_of_abscissa(Family family, int n, double x) {
  if (x == 0.0 && family_has_pole(family))
    throw PoleError(std::string(family_name(family)) + "_" + std::to_string(n) +
                    " has a pole at x = 0; no branch contains it");
  // Walk branch indices in the direction of x.  Oscillating families need
  // about |x|/pi steps; I and K have at most four branches in total.
  int lo = -1, hi = 1;
  switch (family) {
    case Family::I:
      lo = (n % 2 == 0) ? 0 : 1;
      hi = 1;
      break;
    case Family::K:
      lo = (n % 2 == 0) ? -1 : 0;
      hi = 1;
      break;
    default: {
      int est = static_cast<int>(std::ceil(std::fabs(x) / M_PI)) + 3;
      lo = -est;
      hi = est;
      break;
    }
  }
  for (int b = lo; b <= hi; ++b) {
    if (!branch_exists(family, n, b)) continue;
    BranchInterval bi = branch_interval(family, n, b);
    bool in = (x > bi.left || (bi.left_closed && x == bi.left)) &&
              (x < bi.right || (bi.right_closed && x == bi.right));
    if (in) return b;
  }
  throw NoSuchBranchError("abscissa " + std::to_string(x) + " lies in no branch of " +
                          addr(family, n, 0));
}

}  // namespace sphinv
