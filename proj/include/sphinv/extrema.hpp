#pragma once

#include <limits>

#include "sphinv/family.hpp"

namespace sphinv {

enum class ExtremumKind { stationary, pole, boundary };

// One infsupum record.  Indexing: m = 1 is the least positive branch
// boundary; positive m counts outward to the right, m <= 0 counts leftward,
// with m = 0 the record of largest abscissa <= 0 (the pole for Y and K, the
// stationary point at the origin for even-order J and I).
struct ExtremumRecord {
  Family family{};
  int n = 0;
  int m = 0;
  double abscissa = 0;
  double ordinate = 0;  // NaN for pole records; see the directional limits
  ExtremumKind kind = ExtremumKind::stationary;
  double limit_from_above = 0;  // pole records only: one-sided limits
  double limit_from_below = 0;
};

struct OrdinateRange {
  double lo = 0, hi = 0;
  bool lo_closed = false, hi_closed = false;
};

// Branch b is the abscissa interval (x_{b-1}, x_b], open at poles and at
// +-infinity, closed at finite stationary right endpoints; x_m = -+infinity
// when the family has no record at index m.  f_n is strictly monotone on
// each branch.
struct BranchInterval {
  Family family{};
  int n = 0;
  int b = 0;
  double left = 0, right = 0;  // abscissas; +-infinity allowed
  bool left_closed = false, right_closed = false;
  bool increasing = false;  // direction of f_n across the branch
  OrdinateRange range;      // ordinates attained on the branch
};

// Extremum record lookup; throws NoSuchExtremumError when (family, n, m)
// addresses nothing (e.g. any m for odd-order I).  The reference stays valid
// for the program lifetime.
const ExtremumRecord& infsupum(Family family, int n, int m);

// Branch lookup; throws NoSuchBranchError for empty/absent branches.
BranchInterval branch_interval(Family family, int n, int b);

bool branch_exists(Family family, int n, int b);

// The branch whose abscissa interval contains x (throws PoleError at a pole
// abscissa, NoSuchBranchError when x falls in no branch).
int branch_of_abscissa(Family family, int n, double x);

// Ordinate-range membership honoring the open/closed endpoint flags.
bool range_contains(const OrdinateRange& r, double c0);

}  // namespace sphinv
