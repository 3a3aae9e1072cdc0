#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sphinv/const_expr.hpp"
#include "sphinv/family.hpp"
#include "sphinv/inverses.hpp"

namespace sphinv {

// Transcendental factor of a term.  tan/cot never survive parsing (they are
// rewritten into sin/cos form), so the solver sees only the first six.
enum class Factor { one, cos, sin, cosh, sinh, expm };

const char* factor_name(Factor f);

// coeff * x^power * factor(x)
struct Term {
  mpq_class coeff;
  int power = 0;
  Factor factor = Factor::one;
};

// Like terms combined; the constant part lives on the right-hand side.
struct RawEquation {
  std::vector<Term> terms;
  ConstExpr rhs;
};

std::string to_string(const RawEquation& eq);

struct EquationNormalForm {
  Family family{};
  int n = 0;
  mpq_class lambda;             // exact row-matching scale
  ConstExpr c0;                 // lambda * rhs: the table form f_n(x) = c0
  int power_shift = 0;          // both sides were multiplied by x^{-power_shift}
  bool annihilated_x0 = false;  // the shift dropped an x = 0 root the raw equation admits
  bool introduced_x0 = false;   // the shift could introduce x = 0 (raw undefined there)
};

struct Solution {
  int b = 0;
  std::string closed_form;  // e.g. "inverse_1(y_0)(-1)"
  double x = 0;
};

struct SolutionSet {
  std::vector<Solution> solutions;  // ascending abscissa
  bool truncated = false;           // more branches beyond the limits
  bool x0_caveat = false;           // x = 0 solves the raw equation but is not listed
  std::string note;                 // human-readable x = 0 bookkeeping, empty if none
};

// Scale the equation onto a table row.  Throws NotTransformableError (with a
// nearest-row hint where meaningful) or MixedFactorError.
EquationNormalForm normalize(const RawEquation& eq);

// All solutions of the normal form within the branch limits, i.e. one
// inverse per branch whose range contains c0.  x = 0 is reported per the
// *raw* equation: roots introduced by the power shift are dropped, roots
// annihilated by it raise the caveat flag.
SolutionSet solve(const EquationNormalForm& nf, const BranchLimits& limits = {});

}  // namespace sphinv
