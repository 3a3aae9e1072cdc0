#pragma once

#include <string_view>

#include "sphinv/const_expr.hpp"
#include "sphinv/solver.hpp"

namespace sphinv {

// Parses one equation over x, e.g. "sin(x) - 2*x*cos(x) = 1/2".
//
// Grammar sketch: both sides are sums of products of decimal/rational
// numbers, x (with integer powers), the constants pi / e / khinchin, the
// functions cos sin tan cot cosh sinh exp log sqrt (arguments must be
// exactly x, except exp(-x) / e^-x, and log/sqrt which take constants), with
// juxtaposition as implicit multiplication.  tan/cot are rewritten into
// sin/cos terms during parsing.  Decimal literals become exact rationals.
//
// Throws SyntaxError (with byte offset), UnsupportedFunctionError,
// NotTransformableError (irrational coefficients on x-terms, e^x, ...).
RawEquation parse_equation(std::string_view text);

// Parses a constant expression (no x allowed), e.g. "3/(3*log(2) - pi)".
ConstExpr parse_const(std::string_view text);

}  // namespace sphinv
