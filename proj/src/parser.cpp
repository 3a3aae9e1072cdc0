#include "sphinv/parser.hpp"

#include <cctype>
#include <cstring>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sphinv/errors.hpp"

namespace sphinv {
namespace {

// Parser-internal factor codes: the solver's six plus transient tan/cot.
constexpr int kOne = static_cast<int>(Factor::one);
constexpr int kCos = static_cast<int>(Factor::cos);
constexpr int kSin = static_cast<int>(Factor::sin);
constexpr int kCosh = static_cast<int>(Factor::cosh);
constexpr int kSinh = static_cast<int>(Factor::sinh);
constexpr int kExpm = static_cast<int>(Factor::expm);
constexpr int kTan = 6;
constexpr int kCot = 7;

struct Token {
  enum class Type { number, name, op, end };
  Type type{};
  std::string text;
  std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto isd = [](char c) { return c >= '0' && c <= '9'; };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (isd(c) || (c == '.' && i + 1 < s.size() && isd(s[i + 1]))) {
      std::size_t j = i;
      bool dot = false;
      while (j < s.size() && (isd(s[j]) || (s[j] == '.' && !dot))) {
        if (s[j] == '.') dot = true;
        ++j;
      }
      // Scientific suffix: 'e'/'E' immediately followed by [+-]?digit binds to
      // the literal; anything else leaves 'e' to mean Euler's number.
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && isd(s[k])) {
          while (k < s.size() && isd(s[k])) ++k;
          j = k;
        }
      }
      out.push_back({Token::Type::number, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() &&
             (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
        ++j;
      out.push_back({Token::Type::name, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (std::strchr("+-*/^()=", c)) {
      out.push_back({Token::Type::op, std::string(1, c), i});
      ++i;
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Token::Type::end, "", s.size()});
  return out;
}

mpq_class decimal_to_rational(const std::string& text) {
  std::string mant = text;
  long exp10 = 0;
  auto epos = text.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = text.substr(0, epos);
    exp10 = std::stol(text.substr(epos + 1));
    if (exp10 > 9999 || exp10 < -9999)
      throw SyntaxError("exponent out of range in numeric literal", 0);
  }
  auto dot = mant.find('.');
  mpq_class q;
  // Base 10 explicitly: the default base-0 constructor reads a leading zero
  // (as in the digit string of "0.25") as an octal prefix.
  if (dot == std::string::npos) {
    q = mpq_class(mpz_class(mant, 10));
  } else {
    std::string digits = mant.substr(0, dot) + mant.substr(dot + 1);
    if (digits.empty()) digits = "0";
    mpz_class den = 1;
    for (std::size_t k = dot + 1; k < mant.size(); ++k) den *= 10;
    q = mpq_class(mpz_class(digits, 10), den);
  }
  if (exp10 != 0) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10,
                  static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 > 0)
      q *= p;
    else
      q /= p;
  }
  q.canonicalize();
  return q;
}

// Linear form over the factor basis: sum of coeff * x^power * factor(x),
// plus a constant part.
struct LinForm {
  std::map<std::pair<int, int>, mpq_class> terms;  // (power, factor) -> coeff
  ConstExpr cnst;

  bool pure_const() const { return terms.empty(); }
  bool is_exactly_x(int sign) const {
    if (!cnst.is_zero() || terms.size() != 1) return false;
    const auto& [key, c] = *terms.begin();
    return key == std::make_pair(1, kOne) && c == sign;
  }
};

void add_term(LinForm& f, int power, int factor, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = f.terms.emplace(std::make_pair(power, factor), c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) f.terms.erase(it);
  }
}

LinForm lf_add(LinForm a, const LinForm& b, int sign) {
  for (const auto& [key, c] : b.terms) add_term(a, key.first, key.second, sign > 0 ? c : mpq_class(-c));
  a.cnst = sign > 0 ? ConstExpr::add(a.cnst, b.cnst) : ConstExpr::sub(a.cnst, b.cnst);
  return a;
}

LinForm lf_neg(LinForm a) {
  for (auto& [key, c] : a.terms) c = -c;
  a.cnst = ConstExpr::neg(a.cnst);
  return a;
}

void scale_terms(LinForm& a, const mpq_class& r) {
  if (r == 0) {
    a.terms.clear();
    return;
  }
  for (auto& [key, c] : a.terms) c *= r;
}

LinForm lf_mul(const LinForm& a, const LinForm& b) {
  // Constant * anything: the scalar must be rational to touch x-terms.
  auto scaled = [](const LinForm& terms_side, const LinForm& const_side) {
    LinForm out;
    if (!const_side.cnst.is_rational() && !terms_side.terms.empty() &&
        !const_side.cnst.is_zero())
      throw NotTransformableError(
          "irrational constant '" + const_side.cnst.to_string() +
          "' cannot multiply x-dependent terms (coefficients must be rational)");
    out = terms_side;
    if (const_side.cnst.is_rational())
      scale_terms(out, const_side.cnst.rat());
    out.cnst = ConstExpr::mul(terms_side.cnst, const_side.cnst);
    return out;
  };
  if (a.pure_const()) return scaled(b, a);
  if (b.pure_const()) return scaled(a, b);
  // Term * term products: at most one transcendental factor may survive.
  LinForm out;
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      int fa = ka.second, fb = kb.second;
      if (fa != kOne && fb != kOne)
        throw NotTransformableError("products of two transcendental factors are not supported");
      add_term(out, ka.first + kb.first, fa == kOne ? fb : fa, ca * cb);
    }
  }
  auto cross = [&](const LinForm& terms_side, const ConstExpr& k) {
    if (k.is_zero()) return;
    if (!k.is_rational())
      throw NotTransformableError("irrational constant '" + k.to_string() +
                                  "' cannot multiply x-dependent terms");
    for (const auto& [key, c] : terms_side.terms)
      add_term(out, key.first, key.second, c * k.rat());
  };
  cross(a, b.cnst);
  cross(b, a.cnst);
  out.cnst = ConstExpr::mul(a.cnst, b.cnst);
  return out;
}

LinForm lf_div(const LinForm& a, const LinForm& b, std::size_t op_pos) {
  if (b.pure_const()) {
    if (b.cnst.is_zero()) throw DomainError("division by zero");
    if (b.cnst.is_rational()) {
      LinForm out = a;
      mpq_class inv = 1 / b.cnst.rat();
      scale_terms(out, inv);
      out.cnst = ConstExpr::div(a.cnst, b.cnst);
      return out;
    }
    if (a.pure_const()) {
      LinForm out;
      out.cnst = ConstExpr::div(a.cnst, b.cnst);
      return out;
    }
    throw NotTransformableError("irrational divisor '" + b.cnst.to_string() +
                                "' cannot divide x-dependent terms");
  }
  // Division by c * x^k.
  if (b.terms.size() == 1 && b.cnst.is_zero()) {
    const auto& [key, c] = *b.terms.begin();
    if (key.second == kOne) {
      LinForm out;
      for (const auto& [ka, ca] : a.terms)
        add_term(out, ka.first - key.first, ka.second, ca / c);
      if (!a.cnst.is_zero()) {
        if (!a.cnst.is_rational())
          throw NotTransformableError("irrational constant '" + a.cnst.to_string() +
                                      "' cannot be divided by a power of x");
        add_term(out, -key.first, kOne, a.cnst.rat() / c);
      }
      return out;
    }
  }
  throw SyntaxError("unsupported divisor (expected a constant or c*x^k)", op_pos);
}

LinForm lf_pow(const LinForm& a, long e, std::size_t op_pos) {
  auto rational_pow = [](const mpq_class& base, long exp) {
    if (exp == 0) return mpq_class(1);
    if (base == 0 && exp < 0) throw DomainError("division by zero");
    mpz_class num = base.get_num(), den = base.get_den();
    mpz_class rn, rd;
    unsigned long ue = static_cast<unsigned long>(exp < 0 ? -exp : exp);
    mpz_pow_ui(rn.get_mpz_t(), num.get_mpz_t(), ue);
    mpz_pow_ui(rd.get_mpz_t(), den.get_mpz_t(), ue);
    mpq_class out = exp < 0 ? mpq_class(rd, rn) : mpq_class(rn, rd);
    out.canonicalize();
    return out;
  };
  if (a.pure_const()) {
    if (a.cnst.is_rational()) {
      LinForm out;
      out.cnst = ConstExpr::rational(rational_pow(a.cnst.rat(), e));
      return out;
    }
    if (e == 1) return a;
    throw SyntaxError("powers of irrational constants are not supported", op_pos);
  }
  if (a.terms.size() == 1 && a.cnst.is_zero()) {
    const auto& [key, c] = *a.terms.begin();
    if (key.second == kOne) {
      LinForm out;
      long p = key.first * e;
      if (p > 64 || p < -64) throw SyntaxError("power of x out of range", op_pos);
      add_term(out, static_cast<int>(p), kOne, rational_pow(c, e));
      return out;
    }
  }
  throw SyntaxError("unsupported power base (expected a constant or c*x^k)", op_pos);
}

class Parser {
 public:
  Parser(const std::vector<Token>& toks, std::size_t begin, std::size_t end)
      : toks_(toks), i_(begin), end_(end) {}

  LinForm parse_all() {
    LinForm v = sum();
    if (i_ != end_) throw SyntaxError("unexpected token '" + cur().text + "'", cur().pos);
    return v;
  }

 private:
  const std::vector<Token>& toks_;
  std::size_t i_, end_;

  const Token& cur() const { return i_ < end_ ? toks_[i_] : toks_[end_]; }
  bool at_op(char c) const {
    return i_ < end_ && toks_[i_].type == Token::Type::op && toks_[i_].text[0] == c;
  }
  bool starts_atom() const {
    if (i_ >= end_) return false;
    const Token& t = toks_[i_];
    return t.type == Token::Type::number || t.type == Token::Type::name ||
           (t.type == Token::Type::op && t.text[0] == '(');
  }

  LinForm sum() {
    int sign = 1;
    while (at_op('+') || at_op('-')) {
      if (at_op('-')) sign = -sign;
      ++i_;
    }
    LinForm acc = product();
    if (sign < 0) acc = lf_neg(std::move(acc));
    while (at_op('+') || at_op('-')) {
      int s = at_op('+') ? 1 : -1;
      ++i_;
      acc = lf_add(std::move(acc), product(), s);
    }
    return acc;
  }

  LinForm product() {
    LinForm acc = unary();
    for (;;) {
      if (at_op('*')) {
        ++i_;
        acc = lf_mul(acc, unary());
      } else if (at_op('/')) {
        std::size_t pos = cur().pos;
        ++i_;
        acc = lf_div(acc, unary(), pos);
      } else if (starts_atom()) {
        acc = lf_mul(acc, unary());  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  LinForm unary() {
    if (at_op('-')) {
      ++i_;
      return lf_neg(unary());
    }
    if (at_op('+')) {
      ++i_;
      return unary();
    }
    return postfix();
  }

  long parse_int_exponent() {
    long sign = 1;
    if (at_op('-')) {
      sign = -1;
      ++i_;
    } else if (at_op('+')) {
      ++i_;
    }
    if (cur().type != Token::Type::number || cur().text.find('.') != std::string::npos)
      throw SyntaxError("expected an integer exponent", cur().pos);
    long v = std::stol(cur().text.size() > 6 ? "999999" : cur().text);
    if (v > 64) throw SyntaxError("exponent out of range", cur().pos);
    ++i_;
    return sign * v;
  }

  LinForm postfix() {
    auto [v, is_euler] = atom();
    if (at_op('^')) {
      std::size_t pos = cur().pos;
      ++i_;
      if (is_euler) {
        // e^(...): only e^{-x} (and e^{+x}, rejected with a hint) make sense.
        LinForm arg = unary();
        if (arg.is_exactly_x(-1)) {
          LinForm out;
          add_term(out, 0, kExpm, 1);
          return out;
        }
        if (arg.is_exactly_x(+1))
          throw NotTransformableError(
              "e^x rows do not exist in the table; substitute x -> -s to get e^{-s}");
        if (arg.pure_const() && arg.cnst.is_rational()) {
          if (arg.cnst.is_zero()) {
            LinForm out;
            out.cnst = ConstExpr::rational(1);
            return out;
          }
          throw SyntaxError("powers of e are not supported (only e^-x)", pos);
        }
        throw SyntaxError("unsupported exponent of e (only e^-x)", pos);
      }
      long e = parse_int_exponent();
      return lf_pow(v, e, pos);
    }
    return v;
  }

  std::pair<LinForm, bool> atom() {
    if (i_ >= end_) throw SyntaxError("unexpected end of input", cur().pos);
    const Token& t = toks_[i_];
    if (t.type == Token::Type::number) {
      ++i_;
      LinForm out;
      out.cnst = ConstExpr::rational(decimal_to_rational(t.text));
      return {out, false};
    }
    if (t.type == Token::Type::op && t.text[0] == '(') {
      ++i_;
      LinForm v = sum();
      if (!at_op(')')) throw SyntaxError("expected ')'", cur().pos);
      ++i_;
      return {v, false};
    }
    if (t.type == Token::Type::name) return name_atom();
    throw SyntaxError("unexpected token '" + t.text + "'", t.pos);
  }

  std::pair<LinForm, bool> name_atom() {
    const Token& t = toks_[i_];
    const std::string& id = t.text;
    ++i_;
    LinForm out;
    if (id == "x") {
      add_term(out, 1, kOne, 1);
      return {out, false};
    }
    if (id == "pi") {
      out.cnst = ConstExpr::pi();
      return {out, false};
    }
    if (id == "e") {
      out.cnst = ConstExpr::euler_e();
      return {out, true};
    }
    if (id == "khinchin") {
      out.cnst = ConstExpr::khinchin();
      return {out, false};
    }
    static const std::map<std::string, int> fns = {
        {"cos", kCos}, {"sin", kSin},   {"tan", kTan},   {"cot", kCot},
        {"cosh", kCosh}, {"sinh", kSinh}, {"exp", kExpm}, {"log", -1},
        {"sqrt", -2}};
    auto it = fns.find(id);
    if (it == fns.end())
      // Diagnostic position: one past the unknown identifier.
      throw SyntaxError("unknown name '" + id + "'", t.pos + id.size());
    if (!at_op('(')) throw SyntaxError("expected '(' after '" + id + "'", cur().pos);
    ++i_;
    LinForm arg = sum();
    if (!at_op(')')) throw SyntaxError("expected ')'", cur().pos);
    ++i_;
    if (it->second == -1 || it->second == -2) {
      if (!arg.pure_const())
        throw UnsupportedFunctionError(id + " takes a constant argument", t.pos);
      out.cnst = (it->second == -1) ? ConstExpr::log(arg.cnst) : ConstExpr::sqrt(arg.cnst);
      return {out, false};
    }
    if (it->second == kExpm) {
      if (arg.is_exactly_x(-1)) {
        add_term(out, 0, kExpm, 1);
        return {out, false};
      }
      if (arg.is_exactly_x(+1))
        throw NotTransformableError(
            "exp(x) rows do not exist in the table; substitute x -> -s to get exp(-s)");
      throw UnsupportedFunctionError("exp argument must be exactly -x", t.pos);
    }
    if (!arg.is_exactly_x(+1))
      throw UnsupportedFunctionError(id + " argument must be exactly x", t.pos);
    add_term(out, 0, it->second, 1);
    return {out, false};
  }
};

// Multiply the combined equation by cos (for tan) or sin (for cot) to clear
// the quotient factor; the right side must be rational to move across.
void clear_tan_cot(std::map<std::pair<int, int>, mpq_class>& terms, ConstExpr& rhs) {
  bool has_tan = false, has_cot = false;
  for (const auto& [key, c] : terms) {
    if (key.second == kTan) has_tan = true;
    if (key.second == kCot) has_cot = true;
  }
  if (!has_tan && !has_cot) return;
  if (has_tan && has_cot)
    throw NotTransformableError("tan and cot cannot be combined in one equation");
  int quot = has_tan ? kTan : kCot;
  int cofactor = has_tan ? kCos : kSin;  // the multiplier
  int cleared = has_tan ? kSin : kCos;   // what the quotient factor becomes
  std::map<std::pair<int, int>, mpq_class> out;
  for (const auto& [key, c] : terms) {
    int f = key.second;
    if (f == quot)
      f = cleared;
    else if (f == kOne)
      f = cofactor;
    else
      throw NotTransformableError(std::string(has_tan ? "tan" : "cot") +
                                  " cannot be combined with other transcendental factors");
    auto [it, fresh] = out.emplace(std::make_pair(key.first, f), c);
    if (!fresh) it->second += c;
  }
  if (!rhs.is_zero()) {
    if (!rhs.is_rational())
      throw NotTransformableError(std::string(has_tan ? "tan" : "cot") +
                                  " equations need a rational right-hand side");
    auto [it, fresh] = out.emplace(std::make_pair(0, cofactor), -rhs.rat());
    if (!fresh) it->second += -rhs.rat();
    rhs = ConstExpr();
  }
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  terms = std::move(out);
}

}  // namespace

RawEquation parse_equation(std::string_view text) {
  std::vector<Token> toks = lex(text);
  // Split at the single top-level '='.
  std::size_t eq_idx = toks.size();
  int depth = 0;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].type != Token::Type::op) continue;
    char c = toks[i].text[0];
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (c == '=' && depth == 0) {
      if (eq_idx != toks.size()) throw SyntaxError("multiple '=' signs", toks[i].pos);
      eq_idx = i;
    }
  }
  if (eq_idx == toks.size())
    throw SyntaxError("expected '=' between two sides", text.size());
  if (eq_idx == 0) throw SyntaxError("empty left-hand side", toks[0].pos);
  if (eq_idx + 2 == toks.size())
    throw SyntaxError("empty right-hand side", toks[eq_idx].pos + 1);

  LinForm lhs = Parser(toks, 0, eq_idx).parse_all();
  LinForm rhs = Parser(toks, eq_idx + 1, toks.size() - 1).parse_all();

  // Move everything variable left, constant right.
  std::map<std::pair<int, int>, mpq_class> terms = lhs.terms;
  for (const auto& [key, c] : rhs.terms) {
    auto [it, fresh] = terms.emplace(key, -c);
    if (!fresh) it->second -= c;
  }
  for (auto it = terms.begin(); it != terms.end();)
    it = (it->second == 0) ? terms.erase(it) : std::next(it);
  ConstExpr right = ConstExpr::sub(rhs.cnst, lhs.cnst);

  clear_tan_cot(terms, right);

  // Constant-only one-terms (power 0) belong on the right as well.
  auto c0it = terms.find({0, kOne});
  if (c0it != terms.end()) {
    right = ConstExpr::sub(right, ConstExpr::rational(c0it->second));
    terms.erase(c0it);
  }

  RawEquation eq;
  eq.rhs = right;
  for (const auto& [key, c] : terms)
    eq.terms.push_back(Term{c, key.first, static_cast<Factor>(key.second)});
  return eq;
}

ConstExpr parse_const(std::string_view text) {
  std::vector<Token> toks = lex(text);
  for (const auto& t : toks)
    if (t.type == Token::Type::name && t.text == "x")
      throw SyntaxError("'x' is not allowed in a constant expression", t.pos);
  LinForm v = Parser(toks, 0, toks.size() - 1).parse_all();
  return v.cnst;  // terms impossible without x
}

}  // namespace sphinv
