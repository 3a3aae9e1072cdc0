#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace sphinv {

// A small exact-constant expression tree: rationals plus pi, e, Khinchin's
// constant, natural log, sqrt, and arithmetic.  Rational-only operations
// fold exactly; every node caches its double and long double values at
// construction (so domain errors like log(-1) surface immediately).
class ConstExpr {
 public:
  enum class Kind { rational, pi, euler_e, khinchin, log, sqrt, add, sub, mul, div, neg };

  ConstExpr();                      // rational 0
  explicit ConstExpr(mpq_class r);  // exact rational

  static ConstExpr rational(mpq_class r);
  static ConstExpr integer(long v);
  static ConstExpr pi();
  static ConstExpr euler_e();
  static ConstExpr khinchin();
  static ConstExpr log(ConstExpr arg);   // natural log; argument must be > 0
  static ConstExpr sqrt(ConstExpr arg);  // argument must be >= 0
  static ConstExpr add(ConstExpr a, ConstExpr b);
  static ConstExpr sub(ConstExpr a, ConstExpr b);
  static ConstExpr mul(ConstExpr a, ConstExpr b);
  static ConstExpr div(ConstExpr a, ConstExpr b);  // divisor must be nonzero
  static ConstExpr neg(ConstExpr a);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::rational; }
  bool is_zero() const { return is_rational() && rat_ == 0; }
  const mpq_class& rat() const { return rat_; }
  const std::vector<ConstExpr>& children() const;

  double value() const { return value_; }
  long double value_ld() const { return value_ld_; }

  std::string to_string() const;
  bool operator==(const ConstExpr& o) const;  // structural equality

 private:
  ConstExpr(Kind k, std::vector<ConstExpr> kids);

  Kind kind_;
  mpq_class rat_;
  std::shared_ptr<const std::vector<ConstExpr>> kids_;
  double value_ = 0;
  long double value_ld_ = 0;
};

}  // namespace sphinv
