#pragma once

namespace sphinv {

// Real Lambert W: the solutions w of w e^w = d0.
//   branch  0: defined for d0 >= -1/e, increasing, W0(0) = 0.
//   branch -1: defined for -1/e <= d0 < 0, decreasing, values <= -1.
// Both give exactly -1 at the branch point d0 = -1/e.
// Throws DomainError outside these ranges (branch must be 0 or -1).
double lambert_w(int branch, double d0);

// The same values reached through the k_0 table row instead of Halley
// iteration, via k_0(w) = e^{-w}/w = 1/d0:
//   W0(d0)  = inverse_1(k_0)(1/d0)   for d0 > 0,
//   W0(d0)  = inverse_0(k_0)(1/d0)   for -1/e <= d0 < 0,   W0(0) = 0,
//   W-1(d0) = inverse_-1(k_0)(1/d0)  for -1/e <= d0 < 0.
double w_via_k0(int branch, double d0);

}  // namespace sphinv
