#pragma once

#include <limits>
#include <vector>

#include "sphinv/extrema.hpp"
#include "sphinv/family.hpp"

namespace sphinv {

struct InverseQuery {
  Family family{};
  int n = 0;
  int b = 0;          // branch index
  double c0 = 0;      // target ordinate
  double tolerance = 1e-14;  // relative; must lie in (0, 1e-6]
};

// The unique x in branch b with f_n(x) = c0.  Throws NoSuchBranchError /
// OutOfRangeError / DomainError (bad tolerance).  A c0 within a few ulp of a
// closed endpoint ordinate returns that endpoint's abscissa exactly.
double inverse(const InverseQuery& q);
double inverse(Family family, int n, int b, double c0, double tolerance = 1e-14);

// Extended-precision inverse: the double solution polished by long double
// Newton steps.  Used for recognizer scoring.
long double inverse_ld(Family family, int n, int b, long double c0);

struct BranchLimits {
  int max_abs_branch = 64;
  double max_abs_x = std::numeric_limits<double>::infinity();
};

struct BranchSet {
  std::vector<int> branches;  // ascending by branch abscissa
  bool truncated = false;     // more qualifying branches exist past the limits
};

// Every branch whose ordinate range contains c0, subject to the limits.
// For Y/J the outward iteration stops unconditionally once the envelope
// bound sum_l (|c_l| + |s_l|) / X^l falls below |c0|; c0 = 0 meets every
// oscillating branch, so the truncation flag is inevitable there.
BranchSet branches_containing(Family family, int n, double c0,
                              const BranchLimits& limits = {});

// The leftmost solution of f_n(x) = x inside branch b, or NoFixedPointError.
double fixed_point_check(Family family, int n, int b);

}  // namespace sphinv
