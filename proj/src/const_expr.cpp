#include "sphinv/const_expr.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "sphinv/errors.hpp"

namespace sphinv {
namespace {

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kEL = 2.718281828459045235360287471352662498L;
constexpr long double kKhinchinL = 2.685452001065306445309714835481795693L;

long double mpz_to_ld(const mpz_class& z) {
  double hi = z.get_d();  // truncated toward zero
  mpz_class rem = z - mpz_class(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rem.get_d());
}

long double mpq_to_ld(const mpq_class& q) {
  return mpz_to_ld(q.get_num()) / mpz_to_ld(q.get_den());
}

const std::vector<ConstExpr>& empty_kids() {
  static const std::vector<ConstExpr> none;
  return none;
}

}  // namespace

ConstExpr::ConstExpr() : ConstExpr(mpq_class(0)) {}

ConstExpr::ConstExpr(mpq_class r) : kind_(Kind::rational), rat_(std::move(r)) {
  rat_.canonicalize();
  value_ld_ = mpq_to_ld(rat_);
  value_ = static_cast<double>(value_ld_);
}

ConstExpr::ConstExpr(Kind k, std::vector<ConstExpr> kids)
    : kind_(k), kids_(std::make_shared<const std::vector<ConstExpr>>(std::move(kids))) {
  const auto& c = *kids_;
  switch (k) {
    case Kind::pi: value_ld_ = kPiL; break;
    case Kind::euler_e: value_ld_ = kEL; break;
    case Kind::khinchin: value_ld_ = kKhinchinL; break;
    case Kind::log:
      if (!(c[0].value_ld_ > 0)) throw DomainError("log argument must be positive");
      value_ld_ = std::log(c[0].value_ld_);
      break;
    case Kind::sqrt:
      if (c[0].value_ld_ < 0) throw DomainError("sqrt argument must be nonnegative");
      value_ld_ = std::sqrt(c[0].value_ld_);
      break;
    case Kind::add: value_ld_ = c[0].value_ld_ + c[1].value_ld_; break;
    case Kind::sub: value_ld_ = c[0].value_ld_ - c[1].value_ld_; break;
    case Kind::mul: value_ld_ = c[0].value_ld_ * c[1].value_ld_; break;
    case Kind::div:
      if (c[1].value_ld_ == 0) throw DomainError("division by zero");
      value_ld_ = c[0].value_ld_ / c[1].value_ld_;
      break;
    case Kind::neg: value_ld_ = -c[0].value_ld_; break;
    case Kind::rational: break;  // not reached through this constructor
  }
  value_ = static_cast<double>(value_ld_);
}

ConstExpr ConstExpr::rational(mpq_class r) { return ConstExpr(std::move(r)); }
ConstExpr ConstExpr::integer(long v) { return ConstExpr(mpq_class(v)); }
ConstExpr ConstExpr::pi() { return ConstExpr(Kind::pi, {}); }
ConstExpr ConstExpr::euler_e() { return ConstExpr(Kind::euler_e, {}); }
ConstExpr ConstExpr::khinchin() { return ConstExpr(Kind::khinchin, {}); }

ConstExpr ConstExpr::log(ConstExpr arg) { return ConstExpr(Kind::log, {std::move(arg)}); }
ConstExpr ConstExpr::sqrt(ConstExpr arg) { return ConstExpr(Kind::sqrt, {std::move(arg)}); }

ConstExpr ConstExpr::add(ConstExpr a, ConstExpr b) {
  if (a.is_rational() && b.is_rational()) return rational(a.rat_ + b.rat_);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return ConstExpr(Kind::add, {std::move(a), std::move(b)});
}

ConstExpr ConstExpr::sub(ConstExpr a, ConstExpr b) {
  if (a.is_rational() && b.is_rational()) return rational(a.rat_ - b.rat_);
  if (b.is_zero()) return a;
  if (a.is_zero()) return neg(std::move(b));
  return ConstExpr(Kind::sub, {std::move(a), std::move(b)});
}

ConstExpr ConstExpr::mul(ConstExpr a, ConstExpr b) {
  if (a.is_rational() && b.is_rational()) return rational(a.rat_ * b.rat_);
  if (a.is_zero() || b.is_zero()) return ConstExpr();
  if (a.is_rational() && a.rat_ == 1) return b;
  if (b.is_rational() && b.rat_ == 1) return a;
  // Canonical order: rational coefficient first, so "3*log(2)" and
  // "log(2)*3" build the same tree and render alike.
  if (!a.is_rational() && b.is_rational()) std::swap(a, b);
  return ConstExpr(Kind::mul, {std::move(a), std::move(b)});
}

ConstExpr ConstExpr::div(ConstExpr a, ConstExpr b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_rational() && b.is_rational()) return rational(a.rat_ / b.rat_);
  if (b.is_rational() && b.rat_ == 1) return a;
  if (a.is_zero()) return ConstExpr();
  return ConstExpr(Kind::div, {std::move(a), std::move(b)});
}

ConstExpr ConstExpr::neg(ConstExpr a) {
  if (a.is_rational()) return rational(-a.rat_);
  if (a.kind_ == Kind::neg) return a.children()[0];
  // Push the sign into a leading rational so e.g. -(180/pi) and (-180)/pi
  // build the same tree (the recognizer and the parser meet here).
  if ((a.kind_ == Kind::mul || a.kind_ == Kind::div) &&
      a.children()[0].is_rational()) {
    ConstExpr num = rational(-a.children()[0].rat_);
    ConstExpr den = a.children()[1];
    return a.kind_ == Kind::mul ? mul(std::move(num), std::move(den))
                                : div(std::move(num), std::move(den));
  }
  return ConstExpr(Kind::neg, {std::move(a)});
}

const std::vector<ConstExpr>& ConstExpr::children() const {
  return kids_ ? *kids_ : empty_kids();
}

bool ConstExpr::operator==(const ConstExpr& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ == Kind::rational) return rat_ == o.rat_;
  const auto& a = children();
  const auto& b = o.children();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == b[i])) return false;
  return true;
}

namespace {

// Rendering precedence: higher binds tighter.
int prec_of(const ConstExpr& e) {
  switch (e.kind()) {
    case ConstExpr::Kind::add:
    case ConstExpr::Kind::sub:
      return 1;
    case ConstExpr::Kind::mul:
    case ConstExpr::Kind::div:
      return 2;
    case ConstExpr::Kind::neg:
      return 2;
    case ConstExpr::Kind::rational:
      return sgn(e.rat()) < 0 ? 2 : 4;
    default:
      return 4;  // symbols and function calls
  }
}

std::string render(const ConstExpr& e, int parent_prec) {
  std::string s;
  switch (e.kind()) {
    case ConstExpr::Kind::rational: s = e.rat().get_str(); break;
    case ConstExpr::Kind::pi: s = "pi"; break;
    case ConstExpr::Kind::euler_e: s = "e"; break;
    case ConstExpr::Kind::khinchin: s = "khinchin"; break;
    case ConstExpr::Kind::log: s = "log(" + render(e.children()[0], 0) + ")"; break;
    case ConstExpr::Kind::sqrt: s = "sqrt(" + render(e.children()[0], 0) + ")"; break;
    case ConstExpr::Kind::add:
      s = render(e.children()[0], 1) + " + " + render(e.children()[1], 2);
      break;
    case ConstExpr::Kind::sub:
      s = render(e.children()[0], 1) + " - " + render(e.children()[1], 2);
      break;
    case ConstExpr::Kind::mul:
      s = render(e.children()[0], 2) + "*" + render(e.children()[1], 3);
      break;
    case ConstExpr::Kind::div:
      s = render(e.children()[0], 2) + "/" + render(e.children()[1], 3);
      break;
    case ConstExpr::Kind::neg: s = "-" + render(e.children()[0], 3); break;
  }
  if (prec_of(e) < parent_prec) s = "(" + s + ")";
  return s;
}

}  // namespace

std::string ConstExpr::to_string() const { return render(*this, 0); }

}  // namespace sphinv
