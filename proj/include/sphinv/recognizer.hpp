#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sphinv/const_expr.hpp"
#include "sphinv/family.hpp"

namespace sphinv {

// A float constant as given by the user: its parsed value plus the precision
// its textual form claims (significant digits, floored at 6).
struct FloatInput {
  long double value = 0.0L;
  int precision = 6;
  std::string text;
};

// Parse a numeric literal.  Throws SyntaxError if the text is not a number
// and DomainError if it is zero or non-finite.
FloatInput make_float_input(std::string_view text);

struct SearchConfig {
  int max_order = 4;          // highest Bessel order scanned
  int branch_window = 16;     // |branch index| cap
  unsigned max_denominator = 64;
  double min_margin = 2.0;    // required agreement - entropy surplus
};

// One closed-form reading of the input: x ~= inverse_b(f_n)(c0).
struct Candidate {
  Family family{};
  int n = 0;
  int b = 0;
  ConstExpr c0;
  std::string closed_form;      // "inverse_b(f_n)(c0)"
  long double reproduced = 0.0L;
  double agreement = 0.0;       // matched decimal digits, capped at precision
  double entropy = 0.0;         // description cost of the closed form
  double margin = 0.0;          // agreement - entropy
};

// Description cost in decimal digits of a constant expression / a full
// inverse-form candidate.  Structure (the inverse wrapper, the family
// function, the branch subscript) costs a flat 3; each function node,
// symbolic constant, and additive operation (including a sign) costs 1;
// multiplication and division are free; every integer magnitude k costs
// log10 |k|.
double entropy10(const ConstExpr& e);
double entropy10(Family family, int n, int b, const ConstExpr& c0);

// Scan all (family, order, branch) combinations for closed forms whose value
// matches the input, scored by agreement minus entropy, best first.
std::vector<Candidate> recognize(const FloatInput& input,
                                 const SearchConfig& config = {});

}  // namespace sphinv
