#include "sphinv/laurent.hpp"

#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace sphinv {
namespace {

using Vec = std::vector<mpz_class>;

// Multiply a Laurent vector by 1/x: coefficient of x^{-l} moves to x^{-(l+1)}.
Vec shift(const Vec& v) {
  Vec out(v.size() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = v[i];
  return out;
}

// out = a*u + b*v, with u, v padded to a common length.
Vec lincomb(long a, const Vec& u, long b, const Vec& v) {
  std::size_t len = std::max(u.size(), v.size());
  Vec out(len);
  for (std::size_t i = 0; i < len; ++i) {
    if (i < u.size()) out[i] += a * u[i];
    if (i < v.size()) out[i] += b * v[i];
  }
  return out;
}

// d/dx of a Laurent vector: d(x^{-l}) = -l x^{-(l+1)}.
Vec ddx(const Vec& v) {
  Vec out(v.size() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = -static_cast<long>(i + 1) * v[i];
  return out;
}

LaurentForm make_row(Family fam, int n) {
  LaurentForm prev2{fam, 0, {}, {}}, prev{fam, 1, {}, {}};
  switch (fam) {
    case Family::Y:
      prev2.pcoeffs = {mpz_class(-1)};
      prev.pcoeffs = {mpz_class(0), mpz_class(-1)};
      prev.qcoeffs = {mpz_class(-1)};
      break;
    case Family::J:
      prev2.pcoeffs = {mpz_class(1)};
      prev.pcoeffs = {mpz_class(0), mpz_class(1)};
      prev.qcoeffs = {mpz_class(-1)};
      break;
    case Family::I:
      prev2.pcoeffs = {mpz_class(1)};
      prev.pcoeffs = {mpz_class(0), mpz_class(-1)};
      prev.qcoeffs = {mpz_class(1)};
      break;
    case Family::K:
      prev2.pcoeffs = {mpz_class(1)};
      prev.pcoeffs = {mpz_class(1), mpz_class(1)};
      break;
  }
  if (n == 0) return prev2;
  if (n == 1) return prev;
  for (int k = 2; k <= n; ++k) {
    LaurentForm cur{fam, k, {}, {}};
    long a = 2 * k - 1;  // recurrence weight (2(k-1)+1) resp. (2k-1) for K
    switch (fam) {
      case Family::Y:
      case Family::J:
        // f_{k} = (2k-1)/x * f_{k-1} - f_{k-2}
        cur.pcoeffs = lincomb(a, shift(prev.pcoeffs), -1, prev2.pcoeffs);
        cur.qcoeffs = lincomb(a, shift(prev.qcoeffs), -1, prev2.qcoeffs);
        break;
      case Family::I:
        // i_{k} = i_{k-2} - (2k-1)/x * i_{k-1}
        cur.pcoeffs = lincomb(1, prev2.pcoeffs, -a, shift(prev.pcoeffs));
        cur.qcoeffs = lincomb(1, prev2.qcoeffs, -a, shift(prev.qcoeffs));
        break;
      case Family::K:
        // row_k = row_{k-2} + (2k-1) * shift(row_{k-1})
        cur.pcoeffs = lincomb(1, prev2.pcoeffs, a, shift(prev.pcoeffs));
        break;
    }
    cur.pcoeffs.resize(static_cast<std::size_t>(k) + 1);
    if (fam != Family::K) cur.qcoeffs.resize(static_cast<std::size_t>(k));
    prev2 = std::move(prev);
    prev = std::move(cur);
  }
  return prev;
}

// Exact double conversion of a bigint would round above 2^53; the long double
// path splits into a high and low part so up to ~106 bits survive.
long double mpz_to_ld(const mpz_class& z) {
  double hi = z.get_d();  // truncated toward zero
  mpz_class rem = z - mpz_class(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rem.get_d());
}

// Coefficient vectors of one row and its first two derivatives, pre-converted
// to both float widths.  deriv-order rows follow the product rules, e.g. for
// Y:  (P cos + Q sin)' = (P' + Q) cos + (Q' - P) sin.
struct FloatForm {
  std::vector<double> pd, qd;
  std::vector<long double> pl, ql;
};

struct RowDerivs {
  // index 0 = f, 1 = f', 2 = f''.  Integer vectors plus float conversions.
  Vec p[3], q[3];
  FloatForm f[3];
};

void differentiate(Family fam, const Vec& p, const Vec& q, Vec& dp, Vec& dq) {
  Vec pprime = ddx(p), qprime = ddx(q);
  switch (fam) {
    case Family::Y:  // (P' + Q) cos + (Q' - P) sin
      dp = lincomb(1, pprime, 1, q);
      dq = lincomb(1, qprime, -1, p);
      break;
    case Family::J:  // (P' - Q) sin + (Q' + P) cos
      dp = lincomb(1, pprime, -1, q);
      dq = lincomb(1, qprime, 1, p);
      break;
    case Family::I:  // (P' + Q) sinh + (Q' + P) cosh
      dp = lincomb(1, pprime, 1, q);
      dq = lincomb(1, qprime, 1, p);
      break;
    case Family::K:  // (P' - P) e^{-x}
      dp = lincomb(1, pprime, -1, p);
      dq.clear();
      break;
  }
}

FloatForm to_float_form(const Vec& p, const Vec& q) {
  FloatForm f;
  f.pd.reserve(p.size());
  f.pl.reserve(p.size());
  for (const auto& z : p) {
    f.pd.push_back(z.get_d());
    f.pl.push_back(mpz_to_ld(z));
  }
  f.qd.reserve(q.size());
  f.ql.reserve(q.size());
  for (const auto& z : q) {
    f.qd.push_back(z.get_d());
    f.ql.push_back(mpz_to_ld(z));
  }
  return f;
}

const RowDerivs& row_derivs(Family fam, int n) {
  static std::mutex mu;
  static std::map<std::pair<char, int>, RowDerivs> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<char>(fam), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  RowDerivs rd;
  const LaurentForm& row = coefficients(fam, n);
  rd.p[0] = row.pcoeffs;
  rd.q[0] = row.qcoeffs;
  differentiate(fam, rd.p[0], rd.q[0], rd.p[1], rd.q[1]);
  differentiate(fam, rd.p[1], rd.q[1], rd.p[2], rd.q[2]);
  for (int d = 0; d < 3; ++d) rd.f[d] = to_float_form(rd.p[d], rd.q[d]);
  return cache.emplace(key, std::move(rd)).first->second;
}

// Horner evaluation of sum_l c_l u^l = u*(c_1 + u*(c_2 + ...)).
template <class T>
T horner(const std::vector<T>& c, T u) {
  if (c.empty()) return T(0);
  T acc = c.back();
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * u + c[i];
  return acc * u;
}

template <class T>
struct Funcs;

template <>
struct Funcs<double> {
  static double cos_(double x) { return std::cos(x); }
  static double sin_(double x) { return std::sin(x); }
  static double cosh_(double x) { return std::cosh(x); }
  static double sinh_(double x) { return std::sinh(x); }
  static double exp_(double x) { return std::exp(x); }
  static double eps() { return std::numeric_limits<double>::epsilon(); }
  static const std::vector<double>& p(const FloatForm& f) { return f.pd; }
  static const std::vector<double>& q(const FloatForm& f) { return f.qd; }
};

template <>
struct Funcs<long double> {
  static long double cos_(long double x) { return std::cos(x); }
  static long double sin_(long double x) { return std::sin(x); }
  static long double cosh_(long double x) { return std::cosh(x); }
  static long double sinh_(long double x) { return std::sinh(x); }
  static long double exp_(long double x) { return std::exp(x); }
  static long double eps() { return std::numeric_limits<long double>::epsilon(); }
  static const std::vector<long double>& p(const FloatForm& f) { return f.pl; }
  static const std::vector<long double>& q(const FloatForm& f) { return f.ql; }
};

// Laurent-form evaluation away from the origin.
template <class T>
T eval_form(Family fam, const FloatForm& form, T x) {
  using F = Funcs<T>;
  T u = T(1) / x;
  T P = horner(F::p(form), u);
  T Q = horner(F::q(form), u);
  switch (fam) {
    case Family::Y: return P * F::cos_(x) + Q * F::sin_(x);
    case Family::J: return P * F::sin_(x) + Q * F::cos_(x);
    case Family::I: {
      // For large |x| the sinh/cosh split suffers inf - inf; use the
      // exponential halves (the discarded half is ~e^{-2|x|} relatively).
      T ax = std::fabs(x);
      if (ax > T(25)) {
        if (x > 0) return F::exp_(x) * (P + Q) / T(2);
        return F::exp_(-x) * (Q - P) / T(2);
      }
      return P * F::sinh_(x) + Q * F::cosh_(x);
    }
    case Family::K: return P * F::exp_(-x);
  }
  return std::numeric_limits<T>::quiet_NaN();
}

// Maclaurin series for j_n / i_n and their derivatives near the origin:
//   j_n(x) = sum_k (-1)^k x^{n+2k} / (2^k k! (2n+2k+1)!!), i_n with +.
// deriv_order 0, 1 or 2.
template <class T>
T series_eval(Family fam, int n, T x, int min_terms, int deriv_order) {
  long double sgn = (fam == Family::J) ? -1.0L : 1.0L;
  long double xl = static_cast<long double>(x);
  // T_0 = x^n / (2n+1)!!, tracked in long double (fine up to n ~ 1400).
  long double term = 1.0L;
  for (int i = 0; i < n; ++i) term *= xl;
  long double df = 1.0L;
  for (int m = 3; m <= 2 * n + 1; m += 2) df *= m;
  term /= df;
  long double x2 = xl * xl;
  long double sum0 = 0, sum1 = 0, sum2 = 0;
  int cap = std::max(min_terms, 64 + 4 * n);
  for (int k = 0; k < cap; ++k) {
    long double e = static_cast<long double>(n + 2 * k);
    sum0 += term;
    sum1 += e * term;
    sum2 += e * (e - 1.0L) * term;
    if (std::fabs(term) <= std::numeric_limits<long double>::epsilon() * std::fabs(sum0) && k > 2)
      break;
    term *= sgn * x2 / (2.0L * (k + 1) * (2 * n + 2 * k + 3));
  }
  long double out;
  switch (deriv_order) {
    case 0: out = sum0; break;
    case 1: out = sum1 / xl; break;              // sum (n+2k) T_k x^{-1}
    default: out = sum2 / (xl * xl); break;      // sum (n+2k)(n+2k-1) T_k x^{-2}
  }
  return static_cast<T>(out);
}

// Order-adaptive switch radius: below r_n the Laurent form cancels more than
// ~3 digits, since |p_{n+1}| |q_n| ~ (2n-1)!!(2n+1)!! while j_n ~ x^n/(2n+1)!!.
double series_radius(int n) {
  static std::mutex mu;
  static std::map<int, double> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  // r_n = ((2n-1)!! (2n+1)!! / 10^3)^{1/(2n+1)} via lgamma:
  // (2m-1)!! = 2^m Gamma(m + 1/2) / sqrt(pi).
  auto log_df = [](int m) {  // log (2m-1)!!
    return m * std::log(2.0) + std::lgamma(m + 0.5) - 0.5 * std::log(M_PI);
  };
  double r = std::exp((log_df(n) + log_df(n + 1) - 3.0 * std::log(10.0)) / (2 * n + 1));
  cache[n] = r;
  return r;
}

// Directional limit at the pole x = 0 (families Y and K only).
// f ~ lead / x^{n+1},  f' ~ -(n+1) lead / x^{n+2}, with lead = -(2n-1)!! for
// Y and +(2n-1)!! for K.
double pole_limit(Family fam, int n, int deriv_order, AtPole side) {
  double inf = std::numeric_limits<double>::infinity();
  int lead_sign = (fam == Family::Y) ? -1 : +1;
  int power = n + 1 + deriv_order;
  // Each differentiation multiplies the leading coefficient by a negative
  // factor and deepens the pole by one power.
  int sign = lead_sign;
  for (int d = 0; d < deriv_order; ++d) sign = -sign;
  if (side == AtPole::from_below && power % 2 == 1) sign = -sign;
  return sign > 0 ? inf : -inf;
}

template <class T>
T eval_impl(Family fam, int n, T x, const EvalOptions& opts, int deriv_order) {
  if (n < 0) throw DomainError("order n must be nonnegative");
  if (x == 0) {
    if (family_has_pole(fam)) {
      if (opts.at_pole == AtPole::raise)
        throw PoleError(std::string(family_name(fam)) + "_" + std::to_string(n) +
                        " has a pole at x = 0 (pass a directional option for the one-sided limit)");
      return static_cast<T>(pole_limit(fam, n, deriv_order, opts.at_pole));
    }
    // J and I are entire: j_n(0) = i_n(0) = [n == 0]; the first derivative is
    // nonzero only at n = 1 (value 1/3); the second only at n = 0 or 2.
    switch (deriv_order) {
      case 0: return n == 0 ? T(1) : T(0);
      case 1: return n == 1 ? T(1) / T(3) : T(0);
      default:
        if (n == 0) return fam == Family::J ? T(-1) / T(3) : T(1) / T(3);
        if (n == 2) return T(2) / T(15);
        return T(0);
    }
  }
  if (!family_has_pole(fam)) {
    double r = std::max(opts.near_zero_threshold, series_radius(n));
    if (std::fabs(static_cast<double>(x)) < r)
      return series_eval(fam, n, x, opts.series_terms, deriv_order);
  }
  const RowDerivs& rd = row_derivs(fam, n);
  return eval_form(fam, rd.f[deriv_order], x);
}

}  // namespace

const LaurentForm& coefficients(Family family, int n) {
  if (n < 0) throw DomainError("order n must be nonnegative");
  static std::mutex mu;
  static std::map<std::pair<char, int>, LaurentForm> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<char>(family), n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, make_row(family, n)).first->second;
}

LaurentForm rayleigh_coefficients(Family family, int n) {
  if (n < 0) throw DomainError("order n must be nonnegative");
  // G = (d/(x dx))^n applied to seed/x, tracked as a (dominant, cofactor)
  // Laurent pair; then multiply by x^n and the family sign.
  Vec A = {mpz_class(1)}, B = {};
  for (int step = 0; step < n; ++step) {
    Vec Ap = ddx(A), Bp = ddx(B), nA, nB;
    switch (family) {
      case Family::Y:  // (A cos + B sin)' = (A' + B) cos + (B' - A) sin
        nA = lincomb(1, Ap, 1, B);
        nB = lincomb(1, Bp, -1, A);
        break;
      case Family::J:  // (A sin + B cos)' = (A' - B) sin + (B' + A) cos
        nA = lincomb(1, Ap, -1, B);
        nB = lincomb(1, Bp, 1, A);
        break;
      case Family::I:  // (A sinh + B cosh)' = (A' + B) sinh + (B' + A) cosh
        nA = lincomb(1, Ap, 1, B);
        nB = lincomb(1, Bp, 1, A);
        break;
      case Family::K:  // (A e^{-x})' = (A' - A) e^{-x}
        nA = lincomb(1, Ap, -1, A);
        nB.clear();
        break;
    }
    A = shift(nA);  // the trailing 1/x of the operator
    B = shift(nB);
  }
  // Multiply by x^n: drop the first n slots (they are zero by construction).
  for (int l = 0; l < n; ++l) {
    assert(static_cast<std::size_t>(l) >= A.size() || A[l] == 0);
    assert(static_cast<std::size_t>(l) >= B.size() || B[l] == 0);
  }
  Vec Ad(A.begin() + std::min<std::size_t>(n, A.size()), A.end());
  Vec Bd(B.begin() + std::min<std::size_t>(n, B.size()), B.end());
  // Family sign: y_n = -(-1)^n x^n G, j_n = (-1)^n x^n G, i_n = x^n G,
  // k_n = (-1)^n x^n G.
  int sign = 1;
  if (family == Family::Y) sign = (n % 2 == 0) ? -1 : 1;
  if (family == Family::J || family == Family::K) sign = (n % 2 == 0) ? 1 : -1;
  for (auto& z : Ad) z *= sign;
  for (auto& z : Bd) z *= sign;
  Ad.resize(static_cast<std::size_t>(n) + 1);
  if (family == Family::K) {
    for (const auto& z : Bd) { (void)z; assert(z == 0); }
    Bd.clear();
  } else {
    Bd.resize(static_cast<std::size_t>(n));
  }
  return LaurentForm{family, n, std::move(Ad), std::move(Bd)};
}

// The double entry points run the long double engine internally: the Laurent
// coefficients grow like (2n-1)!! and partially cancel, and the 64-bit
// mantissa keeps the delivered double accurate to a few ulps.
double eval(Family family, int n, double x, const EvalOptions& opts) {
  return static_cast<double>(
      eval_impl(family, n, static_cast<long double>(x), opts, 0));
}

double eval_derivative(Family family, int n, double x, const EvalOptions& opts) {
  return static_cast<double>(
      eval_impl(family, n, static_cast<long double>(x), opts, 1));
}

double eval_second_derivative(Family family, int n, double x, const EvalOptions& opts) {
  return static_cast<double>(
      eval_impl(family, n, static_cast<long double>(x), opts, 2));
}

long double eval_ld(Family family, int n, long double x) {
  return eval_impl(family, n, x, EvalOptions{}, 0);
}

long double eval_derivative_ld(Family family, int n, long double x) {
  return eval_impl(family, n, x, EvalOptions{}, 1);
}

long double eval_second_derivative_ld(Family family, int n, long double x) {
  return eval_impl(family, n, x, EvalOptions{}, 2);
}

mpz_class odd_double_factorial(int n) {
  mpz_class out = 1;
  for (int m = 3; m <= 2 * n - 1; m += 2) out *= m;
  return out;
}

std::string to_string(const LaurentForm& row) {
  auto poly = [](const std::vector<mpz_class>& c) {
    std::string s;
    bool first = true;
    for (std::size_t l = 1; l <= c.size(); ++l) {
      const mpz_class& z = c[l - 1];
      if (z == 0) continue;
      mpz_class a = abs(z);
      if (first) {
        if (z < 0) s += "-";
        first = false;
      } else {
        s += (z < 0) ? " - " : " + ";
      }
      if (a != 1) s += a.get_str() + "/";
      else s += "1/";
      s += "x";
      if (l > 1) s += "^" + std::to_string(l);
    }
    if (first) s = "0";
    return s;
  };
  const char* dom = nullptr;
  const char* cof = nullptr;
  switch (row.family) {
    case Family::Y: dom = "cos(x)"; cof = "sin(x)"; break;
    case Family::J: dom = "sin(x)"; cof = "cos(x)"; break;
    case Family::I: dom = "sinh(x)"; cof = "cosh(x)"; break;
    case Family::K: dom = "exp(-x)"; cof = nullptr; break;
  }
  std::string s = "(" + poly(row.pcoeffs) + ")" + dom;
  if (cof && !row.qcoeffs.empty()) {
    bool all_zero = true;
    for (const auto& z : row.qcoeffs)
      if (z != 0) all_zero = false;
    if (!all_zero) s += " + (" + poly(row.qcoeffs) + ")" + cof;
  }
  return s;
}

}  // namespace sphinv
