#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sphinv {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Evaluation at a pole abscissa (x = 0 for the y and k families) without
// opting into directional limits.
struct PoleError : Error {
  using Error::Error;
};

// (family, n, m) addresses no extremum record.
struct NoSuchExtremumError : Error {
  using Error::Error;
};

// (family, n, b) addresses no (nonempty) real branch.
struct NoSuchBranchError : Error {
  using Error::Error;
};

// Target ordinate lies outside the branch's attained range.
struct OutOfRangeError : Error {
  using Error::Error;
};

// The branch contains no fixed point of f_n.
struct NoFixedPointError : Error {
  using Error::Error;
};

// Argument outside a function's domain (log, sqrt, Lambert W, bad tolerance).
struct DomainError : Error {
  using Error::Error;
};

// The equation cannot be scaled onto any table row.
struct NotTransformableError : Error {
  explicit NotTransformableError(const std::string& msg, std::string hint_ = "")
      : Error(msg), hint(std::move(hint_)) {}
  std::string hint;  // e.g. the nearest table row
};

// The equation mixes trigonometric with hyperbolic/exponential factors.
struct MixedFactorError : Error {
  using Error::Error;
};

// Textual input rejected; position is a byte offset into the input.
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t position_)
      : Error(msg + " (at offset " + std::to_string(position_) + ")"),
        position(position_) {}
  std::size_t position;
};

// A function name outside the supported set, or an unsupported argument form.
struct UnsupportedFunctionError : SyntaxError {
  using SyntaxError::SyntaxError;
};

// The geometric bracket march failed to straddle the target (safety net; not
// reachable for in-range targets).
struct BracketError : Error {
  using Error::Error;
};

}  // namespace sphinv
