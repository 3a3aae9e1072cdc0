#include "sphinv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sphinv/errors.hpp"
#include "sphinv/extrema.hpp"
#include "sphinv/inverses.hpp"
#include "sphinv/laurent.hpp"

namespace sphinv {
namespace {

enum class Group { trig, hyp, exp_ };

Group group_of(Factor f) {
  switch (f) {
    case Factor::cos:
    case Factor::sin:
      return Group::trig;
    case Factor::cosh:
    case Factor::sinh:
      return Group::hyp;
    default:
      return Group::exp_;  // expm; 'one' never reaches grouping
  }
}

const char* group_name(Group g) {
  switch (g) {
    case Group::trig:
      return "trigonometric";
    case Group::hyp:
      return "hyperbolic";
    default:
      return "exponential";
  }
}

// Does the unscaled equation hold at x = 0?  Terms with negative powers make
// the left side undefined there; positive powers vanish; power-0 terms
// contribute factor(0) times their coefficient.
bool raw_admits_zero(const std::vector<Term>& terms, const ConstExpr& rhs) {
  mpq_class lhs0 = 0;
  for (const Term& t : terms) {
    if (t.power < 0) return false;
    if (t.power > 0) continue;
    switch (t.factor) {
      case Factor::one:
      case Factor::cos:
      case Factor::cosh:
      case Factor::expm:
        lhs0 += t.coeff;
        break;
      case Factor::sin:
      case Factor::sinh:
        break;  // value 0 at the origin
    }
  }
  if (rhs.is_rational()) return lhs0 == rhs.rat();
  double r = rhs.value();
  return std::abs(lhs0.get_d() - r) <= 1e-12 * std::max(1.0, std::abs(r));
}

std::string rational_to_string(const mpq_class& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

}  // namespace

const char* factor_name(Factor f) {
  switch (f) {
    case Factor::one:
      return "1";
    case Factor::cos:
      return "cos(x)";
    case Factor::sin:
      return "sin(x)";
    case Factor::cosh:
      return "cosh(x)";
    case Factor::sinh:
      return "sinh(x)";
    default:
      return "exp(-x)";
  }
}

std::string to_string(const RawEquation& eq) {
  // Canonical order: by power, then factor code, matching the parser's map.
  std::vector<Term> terms = eq.terms;
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.power != b.power) return a.power < b.power;
    return static_cast<int>(a.factor) < static_cast<int>(b.factor);
  });
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms) {
    mpq_class c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    std::vector<std::string> pieces;
    bool bare = (t.power == 0 && t.factor == Factor::one);
    if (c != 1 || bare) pieces.push_back(rational_to_string(c));
    if (t.power != 0) {
      std::string xp = "x";
      if (t.power != 1) xp += "^" + std::to_string(t.power);
      pieces.push_back(xp);
    }
    if (t.factor != Factor::one) pieces.push_back(factor_name(t.factor));
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i) os << "*";
      os << pieces[i];
    }
  }
  if (first) os << "0";
  os << " = " << eq.rhs.to_string();
  return os.str();
}

EquationNormalForm normalize(const RawEquation& eq) {
  // Re-combine duplicate (power, factor) slots and split one-terms out.
  std::map<std::pair<int, int>, mpq_class> combined;
  for (const Term& t : eq.terms) {
    auto key = std::make_pair(t.power, static_cast<int>(t.factor));
    auto [it, fresh] = combined.emplace(key, t.coeff);
    if (!fresh) it->second += t.coeff;
  }
  for (auto it = combined.begin(); it != combined.end();)
    it = (it->second == 0) ? combined.erase(it) : std::next(it);

  ConstExpr rhs = eq.rhs;
  auto pure = combined.find({0, static_cast<int>(Factor::one)});
  if (pure != combined.end()) {
    rhs = ConstExpr::sub(rhs, ConstExpr::rational(pure->second));
    combined.erase(pure);
  }

  std::vector<std::pair<int, mpq_class>> one_terms;  // (power, coeff)
  std::map<std::pair<int, int>, mpq_class> factor_terms;
  for (const auto& [key, c] : combined) {
    if (key.second == static_cast<int>(Factor::one))
      one_terms.emplace_back(key.first, c);
    else
      factor_terms.emplace(key, c);
  }
  if (factor_terms.empty())
    throw NotTransformableError(
        "no transcendental factor present; nothing to invert");

  // One group of factors only; report mixing before any power bookkeeping.
  Group grp = group_of(static_cast<Factor>(factor_terms.begin()->first.second));
  for (const auto& [key, c] : factor_terms) {
    Group g = group_of(static_cast<Factor>(key.second));
    if (g != grp)
      throw MixedFactorError(std::string("equation mixes ") + group_name(grp) +
                             " and " + group_name(g) + " factors");
  }

  // Decide the power shift K (divide the equation by x^K).
  int K = 0;
  if (!one_terms.empty()) {
    if (!rhs.is_zero())
      throw NotTransformableError(
          "plain x^k terms require an exactly zero right-hand side");
    K = one_terms.front().first;
    mpq_class b_sum = 0;
    for (const auto& [p, c] : one_terms) {
      if (p != K)
        throw NotTransformableError(
            "plain x^k terms of mixed powers cannot form a single constant");
      b_sum += c;
    }
    rhs = ConstExpr::rational(-b_sum);
  } else if (rhs.is_zero()) {
    int k_max = factor_terms.begin()->first.first;
    for (const auto& [key, c] : factor_terms) k_max = std::max(k_max, key.first);
    K = k_max + 1;
  }

  // All factor terms must sit at negative powers after the shift.
  std::map<int, std::map<int, mpq_class>> by_factor;  // factor -> depth -> coeff
  int max_depth = 0;
  for (const auto& [key, c] : factor_terms) {
    int shifted = key.first - K;
    if (shifted > -1) {
      std::ostringstream os;
      os << "term with x^" << key.first << " stays at non-negative power x^"
         << shifted << " after dividing by x^" << K;
      throw NotTransformableError(os.str());
    }
    int depth = -shifted;
    by_factor[key.second][depth] = c;
    max_depth = std::max(max_depth, depth);
  }
  if (max_depth - 1 > 64)
    throw NotTransformableError("required order exceeds 64");

  // The factor reaching the deepest power decides the family.
  std::vector<int> deepest_factors;
  for (const auto& [f, slots] : by_factor)
    if (slots.rbegin()->first == max_depth) deepest_factors.push_back(f);
  if (deepest_factors.size() > 1)
    throw NotTransformableError(
        "two factors share the deepest power of x; no single table row matches");
  Factor dominant = static_cast<Factor>(deepest_factors.front());

  Family family;
  Factor cofactor;
  switch (dominant) {
    case Factor::cos:
      family = Family::Y;
      cofactor = Factor::sin;
      break;
    case Factor::sin:
      family = Family::J;
      cofactor = Factor::cos;
      break;
    case Factor::sinh:
      family = Family::I;
      cofactor = Factor::cosh;
      break;
    case Factor::expm:
      family = Family::K;
      cofactor = Factor::expm;  // unused: k rows have no cofactor
      break;
    default:
      throw NotTransformableError(
          "no table family has cosh(x) as its deepest factor");
  }
  int n = max_depth - 1;
  const LaurentForm& row = coefficients(family, n);

  auto slot = [&](Factor f, int depth) -> mpq_class {
    auto itf = by_factor.find(static_cast<int>(f));
    if (itf == by_factor.end()) return mpq_class(0);
    auto its = itf->second.find(depth);
    return its == itf->second.end() ? mpq_class(0) : its->second;
  };

  mpq_class lambda = slot(dominant, n + 1) / mpq_class(row.pcoeffs[n]);
  auto mismatch = [&]() {
    throw NotTransformableError(
        "coefficients are not proportional to a table row; nearest table row "
        "f_n = " +
        to_string(row));
  };
  for (int l = 1; l <= n + 1; ++l)
    if (slot(dominant, l) != lambda * mpq_class(row.pcoeffs[l - 1])) mismatch();
  if (family == Family::K) {
    // No cofactor slots may exist beyond the p column; by_factor holds only
    // expm here (anything else was a mixed-group error).
  } else {
    for (int l = 1; l <= n; ++l)
      if (slot(cofactor, l) != lambda * mpq_class(row.qcoeffs[l - 1])) mismatch();
    // A cofactor slot at depth n+1 would have tied max_depth (rejected above).
  }

  EquationNormalForm nf;
  nf.family = family;
  nf.n = n;
  nf.lambda = lambda;
  nf.c0 = ConstExpr::mul(ConstExpr::rational(1 / lambda), rhs);
  nf.power_shift = K;
  nf.annihilated_x0 = K > 0 && raw_admits_zero(eq.terms, eq.rhs);
  nf.introduced_x0 = K < 0;
  return nf;
}

SolutionSet solve(const EquationNormalForm& nf, const BranchLimits& limits) {
  double c0d = nf.c0.value();
  BranchSet bs = branches_containing(nf.family, nf.n, c0d, limits);
  SolutionSet out;
  out.truncated = bs.truncated;
  std::string c0s = nf.c0.to_string();
  bool zero_is_exact = !family_has_pole(nf.family) && nf.c0.is_rational() &&
                       nf.c0.rat() == (nf.n == 0 ? 1 : 0);
  bool listed_zero = false;
  bool dropped_origin = false;
  for (int b : bs.branches) {
    double x;
    try {
      x = inverse(InverseQuery{nf.family, nf.n, b, c0d});
    } catch (const Error&) {
      continue;  // borderline branch: target not attainable after all
    }
    if (std::abs(x) < 1e-8 && zero_is_exact) {
      if (nf.introduced_x0) {
        dropped_origin = true;
        continue;
      }
      x = 0.0;
      listed_zero = true;
    }
    std::ostringstream tag;
    tag << "inverse_" << b << "(" << family_name(nf.family) << "_" << nf.n
        << ")(" << c0s << ")";
    out.solutions.push_back(Solution{b, tag.str(), x});
  }
  auto add_note = [&](const std::string& s) {
    if (!out.note.empty()) out.note += "; ";
    out.note += s;
  };
  if (dropped_origin)
    add_note(
        "x = 0 solves only the scaled form; the original equation is "
        "undefined at x = 0");
  if (nf.annihilated_x0 && !listed_zero) {
    out.x0_caveat = true;
    add_note(
        "the original equation also admits x = 0; the x^" +
        std::to_string(-nf.power_shift) + " scaling removed it");
  }
  return out;
}

}  // namespace sphinv
