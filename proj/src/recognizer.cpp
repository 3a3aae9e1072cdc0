#include "sphinv/recognizer.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <tuple>

#include "sphinv/errors.hpp"
#include "sphinv/extrema.hpp"
#include "sphinv/inverses.hpp"
#include "sphinv/laurent.hpp"

namespace sphinv {
namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kLn2L = 0.693147180559945309417232121458176568L;

int significant_digits(const std::string& text) {
  std::size_t epos = text.find_first_of("eE");
  std::string digits;
  for (std::size_t i = 0; i < std::min(epos, text.size()); ++i)
    if (std::isdigit(static_cast<unsigned char>(text[i]))) digits += text[i];
  std::size_t lead = 0;
  while (lead < digits.size() && digits[lead] == '0') ++lead;
  return static_cast<int>(digits.size() - lead);
}

// First continued-fraction convergent p/q with q <= max_den that matches t to
// the given relative tolerance.  Returns false when no small fraction fits.
bool best_rational(long double t, unsigned max_den, long double rel_tol,
                   mpq_class& out) {
  const long double tol = rel_tol * std::fabs(t);
  long double x = t;
  long long h2 = 0, h1 = 1;  // numerators h_{-2}, h_{-1}
  long long k2 = 1, k1 = 0;  // denominators
  for (int iter = 0; iter < 64; ++iter) {
    long double fl = std::floor(x);
    if (std::fabs(fl) > 9e17L) return false;
    long long a = static_cast<long long>(fl);
    long long h, k, tmp;
    if (__builtin_mul_overflow(a, h1, &tmp) ||
        __builtin_add_overflow(tmp, h2, &h))
      return false;
    if (__builtin_mul_overflow(a, k1, &tmp) ||
        __builtin_add_overflow(tmp, k2, &k))
      return false;
    if (k > static_cast<long long>(max_den)) return false;
    long double v = static_cast<long double>(h) / static_cast<long double>(k);
    if (std::fabs(t - v) <= tol) {
      out = mpq_class(mpz_class(static_cast<long>(h)),
                      mpz_class(static_cast<long>(k)));
      out.canonicalize();
      return true;
    }
    long double frac = x - fl;
    if (frac <= 0.0L) return false;  // expansion terminated without a match
    x = 1.0L / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return false;
}

double log10_magnitude(const mpz_class& z) {
  double d = std::fabs(z.get_d());
  return d <= 1.0 ? 0.0 : std::log10(d);
}

}  // namespace

FloatInput make_float_input(std::string_view text) {
  std::string s(text);
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) throw SyntaxError("empty numeric literal", 0);
  s = s.substr(a, b - a + 1);
  const char* c = s.c_str();
  char* end = nullptr;
  errno = 0;
  long double v = std::strtold(c, &end);
  if (end == c || *end != '\0')
    throw SyntaxError("not a numeric literal: '" + s + "'",
                      static_cast<std::size_t>(end - c));
  if (!std::isfinite(static_cast<double>(v)))
    throw DomainError("recognizer input must be finite");
  if (v == 0.0L)
    throw DomainError("recognizer input must be nonzero");
  FloatInput in;
  in.value = v;
  in.precision = std::max(6, significant_digits(s));
  in.text = s;
  return in;
}

double entropy10(const ConstExpr& e) {
  using Kind = ConstExpr::Kind;
  switch (e.kind()) {
    case Kind::rational: {
      const mpq_class& q = e.rat();
      double s = (q < 0) ? 1.0 : 0.0;
      s += log10_magnitude(q.get_num());
      if (q.get_den() != 1) s += log10_magnitude(q.get_den());
      return s;
    }
    case Kind::pi:
    case Kind::euler_e:
    case Kind::khinchin:
      return 1.0;
    case Kind::log:
    case Kind::sqrt:
    case Kind::neg:
      return 1.0 + entropy10(e.children()[0]);
    case Kind::add:
    case Kind::sub:
      return 1.0 + entropy10(e.children()[0]) + entropy10(e.children()[1]);
    case Kind::mul:
    case Kind::div:
      return entropy10(e.children()[0]) + entropy10(e.children()[1]);
  }
  return 0.0;
}

double entropy10(Family, int n, int b, const ConstExpr& c0) {
  double s = 3.0 + entropy10(c0);
  if (n >= 1) s += std::log10(static_cast<double>(n));
  if (b < 0) s += 1.0;
  int ab = std::abs(b);
  if (ab >= 1) s += std::log10(static_cast<double>(ab));
  return s;
}

std::vector<Candidate> recognize(const FloatInput& input,
                                 const SearchConfig& config) {
  const long double x = input.value;
  const int P = input.precision;
  const long double snap_tol = std::pow(10.0L, static_cast<long double>(-(P - 2)));
  std::vector<Candidate> out;
  std::set<std::tuple<char, int, int, std::string>> seen;

  for (Family fam : {Family::Y, Family::J, Family::I, Family::K}) {
    for (int n = 0; n <= config.max_order; ++n) {
      int b;
      try {
        b = branch_of_abscissa(fam, n, static_cast<double>(x));
      } catch (const Error&) {
        continue;  // no branch holds this abscissa (e.g. odd i_n negative axis)
      }
      if (std::abs(b) > config.branch_window) continue;
      long double t;
      try {
        t = eval_ld(fam, n, x);
      } catch (const Error&) {
        continue;
      }
      if (!std::isfinite(static_cast<double>(t))) continue;

      for (int kind = 0; kind < 4; ++kind) {
        long double target = kind == 0   ? t
                             : kind == 1 ? t / kPiL
                             : kind == 2 ? t * kPiL
                                         : t / kLn2L;
        mpq_class r;
        if (!best_rational(target, config.max_denominator, snap_tol, r))
          continue;
        ConstExpr c0;
        switch (kind) {
          case 0:
            c0 = ConstExpr::rational(r);
            break;
          case 1:
            c0 = ConstExpr::mul(ConstExpr::rational(r), ConstExpr::pi());
            break;
          case 2:
            c0 = ConstExpr::div(ConstExpr::rational(r), ConstExpr::pi());
            break;
          default:
            c0 = ConstExpr::mul(ConstExpr::rational(r),
                                ConstExpr::log(ConstExpr::rational(mpq_class(2))));
        }
        std::string c0s = c0.to_string();
        if (!seen.insert({static_cast<char>(fam), n, b, c0s}).second) continue;

        double c0d = c0.value();
        try {
          if (!range_contains(branch_interval(fam, n, b).range, c0d)) continue;
        } catch (const Error&) {
          continue;
        }
        long double xr;
        try {
          xr = inverse_ld(fam, n, b, c0.value_ld());
        } catch (const Error&) {
          continue;
        }
        long double rel = std::fabs(xr - x) / std::fabs(x);
        double agree =
            rel == 0.0L
                ? static_cast<double>(P)
                : std::clamp(static_cast<double>(-std::log10(rel)), 0.0,
                             static_cast<double>(P));
        double ent = entropy10(fam, n, b, c0);
        double margin = agree - ent;
        if (margin < config.min_margin) continue;

        Candidate cand;
        cand.family = fam;
        cand.n = n;
        cand.b = b;
        cand.c0 = c0;
        std::ostringstream tag;
        tag << "inverse_" << b << "(" << family_name(fam) << "_" << n << ")("
            << c0s << ")";
        cand.closed_form = tag.str();
        cand.reproduced = xr;
        cand.agreement = agree;
        cand.entropy = ent;
        cand.margin = margin;
        out.push_back(std::move(cand));
      }
    }
  }

  std::stable_sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.margin != b.margin) return a.margin > b.margin;
    auto ka = std::make_tuple(static_cast<char>(a.family), a.n, a.b,
                              a.c0.to_string());
    auto kb = std::make_tuple(static_cast<char>(b.family), b.n, b.b,
                              b.c0.to_string());
    return ka < kb;
  });
  return out;
}

}  // namespace sphinv
