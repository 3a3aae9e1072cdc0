#include <doctest.h>

#include <cmath>

#include "oracle_data.hpp"
#include "sphinv/errors.hpp"
#include "sphinv/laurent.hpp"
#include "sphinv/parser.hpp"
#include "sphinv/solver.hpp"

using namespace sphinv;

TEST_CASE("normalize: cos(x) = x is the Dottie normal form") {
  EquationNormalForm nf = normalize(parse_equation("cos(x) = x"));
  CHECK(nf.family == Family::Y);
  CHECK(nf.n == 0);
  CHECK(nf.lambda == -1);
  CHECK(nf.c0.is_rational());
  CHECK(nf.c0.rat() == -1);
  CHECK(nf.power_shift == 1);
  CHECK(!nf.annihilated_x0);
  CHECK(!nf.introduced_x0);
}

TEST_CASE("normalize: the k_2 equation keeps its symbolic right side") {
  const char* text =
      "x^-1*exp(-x) + 3*x^-2*exp(-x) + 3*x^-3*exp(-x) = 3/(3*log(2) - pi)";
  EquationNormalForm nf = normalize(parse_equation(text));
  CHECK(nf.family == Family::K);
  CHECK(nf.n == 2);
  CHECK(nf.lambda == 1);
  CHECK(nf.power_shift == 0);
  CHECK(nf.c0 == parse_const("3/(3*log(2) - pi)"));
  CHECK(nf.c0.value() ==
        doctest::Approx(static_cast<double>(oracle::kC0K2Example)).epsilon(1e-15));
}

TEST_CASE("normalize: a uniformly scaled row recovers lambda exactly") {
  const char* text =
      "7/3*x^-1*exp(-x) + 7*x^-2*exp(-x) + 7*x^-3*exp(-x) = 7/(3*log(2) - pi)";
  EquationNormalForm nf = normalize(parse_equation(text));
  CHECK(nf.family == Family::K);
  CHECK(nf.n == 2);
  CHECK(nf.lambda == mpq_class(7, 3));
  CHECK(nf.c0.value() ==
        doctest::Approx(static_cast<double>(oracle::kC0K2Example)).epsilon(1e-14));
}

TEST_CASE("normalize: higher-order trig rows via the power shift") {
  // sin(x) = x/2 divides to j_0 with c0 = 1/2.
  EquationNormalForm nf = normalize(parse_equation("sin(x) = x/2"));
  CHECK(nf.family == Family::J);
  CHECK(nf.n == 0);
  CHECK(nf.lambda == 1);
  CHECK(nf.c0.rat() == mpq_class(1, 2));
  CHECK(nf.power_shift == 1);
  CHECK(nf.annihilated_x0);  // x = 0 solves sin(x) = x/2

  // tan(x) - x = 0 becomes sin(x) - x cos(x) = 0, the j_1 row times x^2.
  nf = normalize(parse_equation("tan(x) - x = 0"));
  CHECK(nf.family == Family::J);
  CHECK(nf.n == 1);
  CHECK(nf.lambda == 1);
  CHECK(nf.c0.is_zero());
  CHECK(nf.power_shift == 2);

  // sinh(x)/x^2 - cosh(x)/x = c matches -i_1.
  nf = normalize(parse_equation("sinh(x)/x^2 - cosh(x)/x = 1/10"));
  CHECK(nf.family == Family::I);
  CHECK(nf.n == 1);
  CHECK(nf.lambda == -1);
  CHECK(nf.c0.rat() == mpq_class(-1, 10));
}

TEST_CASE("normalize rejections") {
  CHECK_THROWS_AS(normalize(parse_equation("cos(x) + sinh(x) = 1")),
                  MixedFactorError);
  CHECK_THROWS_AS(normalize(parse_equation("sin(x) + exp(-x) = 1")),
                  MixedFactorError);
  CHECK_THROWS_AS(normalize(parse_equation("cosh(x) = 3*x")),
                  NotTransformableError);
  // No shift can push cos(x) to a negative power when the right side is a
  // nonzero constant.
  CHECK_THROWS_AS(normalize(parse_equation("cos(x) + sin(x) = 1")),
                  NotTransformableError);
  // Same-depth tie between dominant and cofactor candidates.
  try {
    normalize(parse_equation("cos(x)/x + sin(x)/x = 1"));
    FAIL("expected NotTransformableError");
  } catch (const NotTransformableError& e) {
    CHECK(std::string(e.what()).find("share the deepest power") !=
          std::string::npos);
  }
  // Plain x^k terms demand an exactly zero right-hand side.
  CHECK_THROWS_AS(normalize(parse_equation("cos(x) - x = 1/2")),
                  NotTransformableError);
  // Off-row coefficients report the nearest row.
  try {
    normalize(parse_equation("cos(x)/x^2 + 2*sin(x)/x = 1"));
    FAIL("expected NotTransformableError");
  } catch (const NotTransformableError& e) {
    std::string msg = e.what();
    CHECK(msg.find("nearest table row") != std::string::npos);
    CHECK(msg.find("(-1/x^2)cos(x) + (-1/x)sin(x)") != std::string::npos);
  }
}

TEST_CASE("solve: the three worked equations") {
  // sin(x) = x/2: symmetric pair, plus the annihilated x = 0 caveat.
  SolutionSet s = solve(normalize(parse_equation("sin(x) = x/2")));
  REQUIRE(s.solutions.size() == 2);
  CHECK(s.solutions[0].x ==
        doctest::Approx(-static_cast<double>(oracle::kInvJ0Half)).epsilon(1e-13));
  CHECK(s.solutions[1].x ==
        doctest::Approx(static_cast<double>(oracle::kInvJ0Half)).epsilon(1e-13));
  CHECK(s.x0_caveat);
  CHECK(s.note.find("also admits x = 0") != std::string::npos);
  CHECK(s.note.find("x^-1 scaling") != std::string::npos);

  // tan(x) - x = 0: x = 0 survives (it solves the raw equation), and the
  // positive j_1 zeros follow; 4.49341 sits on branch 2.
  s = solve(normalize(parse_equation("tan(x) - x = 0")));
  CHECK(s.truncated);  // c0 = 0 meets every oscillating branch
  bool saw_zero = false, saw_449 = false;
  for (const Solution& sol : s.solutions) {
    if (sol.x == 0.0) saw_zero = true;
    if (sol.b == 2 &&
        std::fabs(sol.x - static_cast<double>(oracle::kInvJ1B2Zero)) < 1e-10)
      saw_449 = true;
  }
  CHECK(saw_zero);
  CHECK(saw_449);
  CHECK(!s.x0_caveat);

  // The k_2 equation: exactly two solutions, branches -1 and 0.
  const char* k2 =
      "x^-1*exp(-x) + 3*x^-2*exp(-x) + 3*x^-3*exp(-x) = 3/(3*log(2) - pi)";
  EquationNormalForm nf = normalize(parse_equation(k2));
  s = solve(nf);
  REQUIRE(s.solutions.size() == 2);
  CHECK(s.solutions[0].b == -1);
  CHECK(s.solutions[1].b == 0);
  CHECK(s.solutions[0].x ==
        doctest::Approx(static_cast<double>(oracle::kK2SolutionBm1)).epsilon(1e-12));
  CHECK(s.solutions[1].x ==
        doctest::Approx(static_cast<double>(oracle::kK2SolutionB0)).epsilon(1e-12));
  for (const Solution& sol : s.solutions) {
    double resid = eval(Family::K, 2, sol.x) - nf.c0.value();
    CHECK(std::fabs(resid) <= 1e-10);
  }
  CHECK(s.solutions[0].closed_form == "inverse_-1(k_2)(3/(3*log(2) - pi))");
}

TEST_CASE("solve: Dottie") {
  SolutionSet s = solve(normalize(parse_equation("cos(x) = x")));
  REQUIRE(s.solutions.size() == 1);
  CHECK(s.solutions[0].b == 1);
  CHECK(s.solutions[0].closed_form == "inverse_1(y_0)(-1)");
  CHECK(s.solutions[0].x ==
        doctest::Approx(static_cast<double>(oracle::kDottie)).epsilon(1e-15));
}

TEST_CASE("solve: exact x = 0 handling") {
  // sinh(x) = x has only the origin; reported exactly.
  SolutionSet s = solve(normalize(parse_equation("sinh(x) = x")));
  REQUIRE(s.solutions.size() == 1);
  CHECK(s.solutions[0].x == 0.0);
  CHECK(!s.x0_caveat);
  CHECK(s.note.empty());

  // sinh(x) = 2x: the origin root is annihilated by the x^-1 scaling.
  s = solve(normalize(parse_equation("sinh(x) = 2*x")));
  REQUIRE(s.solutions.size() == 2);
  CHECK(s.solutions[0].x == doctest::Approx(-s.solutions[1].x).epsilon(1e-14));
  CHECK(s.solutions[1].x > 2.0);
  CHECK(std::sinh(s.solutions[1].x) ==
        doctest::Approx(2 * s.solutions[1].x).epsilon(1e-12));
  CHECK(s.x0_caveat);

  // sin(x)/x^2 = 1/x: the scaled form j_0(x) = 1 has x = 0, but the raw
  // equation is undefined there; the root is dropped with a note.
  s = solve(normalize(parse_equation("sin(x)/x^2 = 1/x")));
  CHECK(s.solutions.empty());
  CHECK(!s.x0_caveat);
  CHECK(s.note ==
        "x = 0 solves only the scaled form; the original equation is "
        "undefined at x = 0");
}

TEST_CASE("solve: generalized Dottie root counts across the fold") {
  // cos(x) = c x transitions 1 -> 3 -> 1 roots as the slope magnitude crosses
  // the first extremum ordinate 0.336508... of y_0.
  auto count = [](const char* text) {
    return solve(normalize(parse_equation(text))).solutions.size();
  };
  CHECK(count("cos(x) = 2*x") == 1);
  CHECK(count("cos(x) = 0.336508*x") == 3);
  CHECK(count("cos(x) = 0.3*x") == 3);
  CHECK(count("cos(x) = -0.336508*x") == 3);
  CHECK(count("cos(x) = -0.4*x") == 1);
}

TEST_CASE("solve honors branch limits") {
  // j_0 = 1/10 has roots in branches -2..3; capping at |b| <= 2 must cut
  // off the branch-3 root and say so.
  BranchLimits lim;
  lim.max_abs_branch = 2;
  SolutionSet s = solve(normalize(parse_equation("sin(x) = x/10")), lim);
  CHECK(s.truncated);
  for (const Solution& sol : s.solutions) CHECK(std::abs(sol.b) <= 2);
  // Every reported solution satisfies the raw equation.
  for (const Solution& sol : s.solutions)
    CHECK(std::sin(sol.x) == doctest::Approx(sol.x / 10).epsilon(1e-11));
}

TEST_CASE("raw equation rendering") {
  CHECK(to_string(parse_equation("cos(x) = x")) == "cos(x) - x = 0");
  CHECK(to_string(parse_equation("sin(x) = x/2")) == "sin(x) - 1/2*x = 0");
  CHECK(to_string(parse_equation("cos(x) = -0.4*x")) ==
        "cos(x) + 2/5*x = 0");
}

TEST_CASE("factor names") {
  CHECK(std::string(factor_name(Factor::one)) == "1");
  CHECK(std::string(factor_name(Factor::cos)) == "cos(x)");
  CHECK(std::string(factor_name(Factor::expm)) == "exp(-x)");
}
