#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "sphinv/family.hpp"

namespace sphinv {

// One table row:  f_n(x) = p(1/x) * dominant(x) + q(1/x) * cofactor(x),
// where (dominant, cofactor) is (cos, sin) for Y, (sin, cos) for J,
// (sinh, cosh) for I, and (e^{-x}, none) for K.
//
// pcoeffs[l-1] is the exact integer coefficient of x^{-l}, l = 1 .. n+1;
// qcoeffs[l-1] likewise for l = 1 .. n (always empty for K).
// |pcoeffs[n]| = (2n-1)!! for every family.
struct LaurentForm {
  Family family{};
  int n = 0;
  std::vector<mpz_class> pcoeffs;
  std::vector<mpz_class> qcoeffs;

  bool operator==(const LaurentForm&) const = default;
};

// What eval should do at a pole abscissa (x = 0 for Y and K): raise, or
// return the one-sided limit (+-infinity) from the requested side.
enum class AtPole { raise, from_above, from_below };

struct EvalOptions {
  // J/I switch to the Maclaurin series below this radius.  The effective
  // switch radius is max(near_zero_threshold, r_n) where r_n grows with the
  // order so that Laurent cancellation never costs more than ~3 digits.
  double near_zero_threshold = 0.5;
  // Minimum number of series terms; summation is adaptive beyond this.
  int series_terms = 30;
  AtPole at_pole = AtPole::raise;
};

// The exact integer coefficient row, built by the three-term recurrences and
// memoized.  The returned reference stays valid for the program lifetime.
const LaurentForm& coefficients(Family family, int n);

// The same row derived independently via the Rayleigh differentiation
// formulas, e.g. y_n(x) = -(-x)^n (d/(x dx))^n (cos x / x).  Used as a
// cross-check oracle; not memoized.
LaurentForm rayleigh_coefficients(Family family, int n);

double eval(Family family, int n, double x, const EvalOptions& opts = {});
double eval_derivative(Family family, int n, double x, const EvalOptions& opts = {});

// Extended-precision variants used for final polishing (recognizer scoring).
long double eval_ld(Family family, int n, long double x);
long double eval_derivative_ld(Family family, int n, long double x);

// Second derivative, used internally to refine stationary points.
double eval_second_derivative(Family family, int n, double x, const EvalOptions& opts = {});
long double eval_second_derivative_ld(Family family, int n, long double x);

// DLMF normalization conversion: DLMF k_n(x) = kDlmfKFactor * (this table's
// k_n(x)).  The other three families agree with the standard normalization.
inline constexpr double kDlmfKFactor = 1.5707963267948966;  // pi / 2

// Renders a row as e.g. "(1/x - 3/x^3)cos(x) + (-3/x^2)sin(x)".
std::string to_string(const LaurentForm& row);

// (2n-1)!! as an exact integer (n >= 0; dfact(-1) = 1 by convention uses
// odd_double_factorial(0) = 1).
mpz_class odd_double_factorial(int n);  // returns (2n-1)!!

}  // namespace sphinv
