#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracle_data.hpp"
#include "sphinv/errors.hpp"
#include "sphinv/laurent.hpp"

using namespace sphinv;

namespace {

std::vector<mpz_class> zs(std::vector<long> v) {
  std::vector<mpz_class> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

void check_row(Family f, int n, std::vector<long> p, std::vector<long> q) {
  const LaurentForm& row = coefficients(f, n);
  CHECK(row.family == f);
  CHECK(row.n == n);
  CHECK(row.pcoeffs == zs(p));
  CHECK(row.qcoeffs == zs(q));
}

}  // namespace

TEST_CASE("hand-checked coefficient rows, orders 0..4") {
  // y_n: p on cos, q on sin
  check_row(Family::Y, 0, {-1}, {});
  check_row(Family::Y, 1, {0, -1}, {-1});
  check_row(Family::Y, 2, {1, 0, -3}, {0, -3});
  check_row(Family::Y, 3, {0, 6, 0, -15}, {1, 0, -15});
  check_row(Family::Y, 4, {-1, 0, 45, 0, -105}, {0, 10, 0, -105});
  // j_n: p on sin, q on cos
  check_row(Family::J, 0, {1}, {});
  check_row(Family::J, 1, {0, 1}, {-1});
  check_row(Family::J, 2, {-1, 0, 3}, {0, -3});
  check_row(Family::J, 3, {0, -6, 0, 15}, {1, 0, -15});
  check_row(Family::J, 4, {1, 0, -45, 0, 105}, {0, 10, 0, -105});
  // i_n: p on sinh, q on cosh
  check_row(Family::I, 0, {1}, {});
  check_row(Family::I, 1, {0, -1}, {1});
  check_row(Family::I, 2, {1, 0, 3}, {0, -3});
  check_row(Family::I, 3, {0, -6, 0, -15}, {1, 0, 15});
  check_row(Family::I, 4, {1, 0, 45, 0, 105}, {0, -10, 0, -105});
  // k_n: p on exp(-x), no q
  check_row(Family::K, 0, {1}, {});
  check_row(Family::K, 1, {1, 1}, {});
  check_row(Family::K, 2, {1, 3, 3}, {});
  check_row(Family::K, 3, {1, 6, 15, 15}, {});
  check_row(Family::K, 4, {1, 10, 45, 105, 105}, {});
}

TEST_CASE("recurrence rows agree with the Rayleigh differentiation formula") {
  for (Family f : {Family::Y, Family::J, Family::I, Family::K}) {
    for (int n = 0; n <= 12; ++n) {
      const LaurentForm& a = coefficients(f, n);
      LaurentForm b = rayleigh_coefficients(f, n);
      CHECK(a.pcoeffs == b.pcoeffs);
      CHECK(a.qcoeffs == b.qcoeffs);
    }
  }
}

TEST_CASE("deepest coefficient magnitude is the odd double factorial") {
  for (Family f : {Family::Y, Family::J, Family::I, Family::K}) {
    for (int n = 0; n <= 20; ++n) {
      const LaurentForm& row = coefficients(f, n);
      REQUIRE(row.pcoeffs.size() == static_cast<std::size_t>(n + 1));
      CHECK(abs(row.pcoeffs[n]) == odd_double_factorial(n));
      if (f == Family::K)
        CHECK(row.qcoeffs.empty());
      else
        REQUIRE(row.qcoeffs.size() == static_cast<std::size_t>(n));
    }
  }
}

TEST_CASE("evaluation matches the frozen oracle grid") {
  for (const auto& p : oracle::kEvalGrid) {
    Family f = family_from_char(p.family);
    double v = eval(f, p.n, p.x);
    CHECK(std::fabs(v - p.value) <= 1e-12 * std::fabs(p.value));
    long double vl = eval_ld(f, p.n, static_cast<long double>(p.x));
    CHECK(std::fabs(static_cast<double>(vl) - p.value) <=
          1e-12 * std::fabs(p.value));
  }
}

TEST_CASE("parity symmetries") {
  for (int n = 0; n <= 6; ++n) {
    double sy = (n % 2 == 0) ? -1.0 : 1.0;  // y_n(-x) = (-1)^{n+1} y_n(x)
    double sj = (n % 2 == 0) ? 1.0 : -1.0;  // j_n(-x) = (-1)^n j_n(x)
    for (double x : {0.4, 1.3, 2.9, 7.7, 21.0}) {
      CHECK(eval(Family::Y, n, -x) ==
            doctest::Approx(sy * eval(Family::Y, n, x)).epsilon(1e-13));
      CHECK(eval(Family::J, n, -x) ==
            doctest::Approx(sj * eval(Family::J, n, x)).epsilon(1e-13));
      CHECK(eval(Family::I, n, -x) ==
            doctest::Approx(sj * eval(Family::I, n, x)).epsilon(1e-13));
    }
  }
}

TEST_CASE("three-term recurrences hold numerically") {
  for (double x : {0.7, 1.9, 5.3, 13.1}) {
    for (int n = 1; n <= 7; ++n) {
      double c = (2 * n + 1) / x;
      CHECK(eval(Family::Y, n - 1, x) + eval(Family::Y, n + 1, x) ==
            doctest::Approx(c * eval(Family::Y, n, x)).epsilon(1e-11));
      CHECK(eval(Family::J, n - 1, x) + eval(Family::J, n + 1, x) ==
            doctest::Approx(c * eval(Family::J, n, x)).epsilon(1e-11));
      CHECK(eval(Family::I, n - 1, x) - eval(Family::I, n + 1, x) ==
            doctest::Approx(c * eval(Family::I, n, x)).epsilon(1e-11));
      CHECK(eval(Family::K, n + 1, x) - eval(Family::K, n - 1, x) ==
            doctest::Approx(c * eval(Family::K, n, x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("derivatives agree with central differences") {
  const double h = 1e-5;
  for (Family f : {Family::Y, Family::J, Family::I, Family::K}) {
    for (int n : {0, 1, 3, 6}) {
      for (double x : {0.9, 2.6, 8.1, -1.7}) {
        double fd1 = (eval(f, n, x + h) - eval(f, n, x - h)) / (2 * h);
        double d1 = eval_derivative(f, n, x);
        CHECK(d1 == doctest::Approx(fd1).epsilon(1e-6));
        double fd2 =
            (eval_derivative(f, n, x + h) - eval_derivative(f, n, x - h)) /
            (2 * h);
        double d2 = eval_second_derivative(f, n, x);
        CHECK(d2 == doctest::Approx(fd2).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("values and derivatives at the origin (series limits)") {
  CHECK(eval(Family::J, 0, 0.0) == 1.0);
  CHECK(eval(Family::I, 0, 0.0) == 1.0);
  CHECK(eval(Family::J, 1, 0.0) == 0.0);
  CHECK(eval(Family::I, 2, 0.0) == 0.0);
  CHECK(eval_derivative(Family::J, 0, 0.0) == 0.0);
  CHECK(eval_derivative(Family::J, 1, 0.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(eval_derivative(Family::I, 1, 0.0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(eval_second_derivative(Family::J, 0, 0.0) ==
        doctest::Approx(-1.0 / 3).epsilon(1e-15));
  CHECK(eval_second_derivative(Family::I, 0, 0.0) ==
        doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(eval_second_derivative(Family::J, 2, 0.0) ==
        doctest::Approx(2.0 / 15).epsilon(1e-15));
  CHECK(eval_second_derivative(Family::I, 2, 0.0) ==
        doctest::Approx(2.0 / 15).epsilon(1e-15));
}

TEST_CASE("series and Laurent evaluation agree at the switchover radius") {
  // The near-zero Maclaurin path hands off to the exact Laurent form at an
  // order-dependent radius; both must describe the same function there.
  for (Family f : {Family::J, Family::I}) {
    for (int n : {1, 3, 8}) {
      // Probe a dense band of abscissas spanning any plausible switch point.
      // The two samples legitimately differ by ~ 2e-7 * x * |f'|, so the
      // bound is slope-aware; a seam would show up as a jump at value scale.
      for (double x = 0.05; x < 12.0; x *= 1.07) {
        double lo = eval(f, n, x * (1 - 1e-7));
        double hi = eval(f, n, x * (1 + 1e-7));
        if (lo == 0 && hi == 0) continue;
        double slope = std::fabs(eval_derivative(f, n, x));
        CHECK(std::fabs(hi - lo) <=
              3e-7 * x * slope +
              1e-10 * std::max(std::fabs(lo), std::fabs(hi)));
      }
    }
  }
}

TEST_CASE("poles of y_n and k_n at the origin") {
  CHECK_THROWS_AS(eval(Family::Y, 0, 0.0), PoleError);
  CHECK_THROWS_AS(eval(Family::K, 2, 0.0), PoleError);
  CHECK_THROWS_AS(eval_derivative(Family::Y, 1, 0.0), PoleError);

  EvalOptions above;
  above.at_pole = AtPole::from_above;
  EvalOptions below;
  below.at_pole = AtPole::from_below;
  CHECK(eval(Family::Y, 0, 0.0, above) == -std::numeric_limits<double>::infinity());
  CHECK(eval(Family::Y, 0, 0.0, below) == std::numeric_limits<double>::infinity());
  CHECK(eval(Family::K, 0, 0.0, above) == std::numeric_limits<double>::infinity());
  CHECK(eval(Family::K, 0, 0.0, below) == -std::numeric_limits<double>::infinity());
  // y_1 ~ -1/x^2: even power, same sign from both sides.
  CHECK(eval(Family::Y, 1, 0.0, above) == -std::numeric_limits<double>::infinity());
  CHECK(eval(Family::Y, 1, 0.0, below) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("large-argument envelopes") {
  // y_n(x) -> -cos(x - n pi/2)/x for even n (exact for n = 0).
  CHECK(eval(Family::Y, 0, 300.0) ==
        doctest::Approx(-std::cos(300.0) / 300.0).epsilon(1e-14));
  // Keep the probe away from zeros of cos so the ratio is well conditioned
  // (299 - 95 pi ~ 0.55, cos ~ 0.85).
  for (int n : {2, 4}) {
    double x = 299.0;
    double lead = -std::cos(x - n * 1.5707963267948966) / x;
    CHECK(eval(Family::Y, n, x) / lead == doctest::Approx(1.0).epsilon(0.05));
  }
  // k_n(x) * x * e^x -> 1.
  for (int n : {0, 2, 5}) {
    for (double x : {50.0, 300.0}) {
      double scaled = eval(Family::K, n, x) * x * std::exp(x);
      CHECK(scaled == doctest::Approx(1.0).epsilon(3.0 * n * n / 50.0 + 1e-10));
    }
  }
  // i_n via the exponential split for |x| > 25.
  CHECK(eval(Family::I, 0, 50.0) ==
        doctest::Approx(std::exp(50.0) / 100.0).epsilon(1e-12));
}

TEST_CASE("DLMF normalization factor for the k family") {
  CHECK(kDlmfKFactor == doctest::Approx(std::acos(-1.0) / 2).epsilon(1e-16));
  // DLMF k_0(x) = (pi/2) e^{-x}/x in their normalization.
  double x = 1.7;
  CHECK(kDlmfKFactor * eval(Family::K, 0, x) ==
        doctest::Approx(std::acos(-1.0) / 2 * std::exp(-x) / x).epsilon(1e-14));
}

TEST_CASE("row rendering") {
  CHECK(to_string(coefficients(Family::K, 2)) ==
        "(1/x + 3/x^2 + 3/x^3)exp(-x)");
  CHECK(to_string(coefficients(Family::Y, 1)) ==
        "(-1/x^2)cos(x) + (-1/x)sin(x)");
  CHECK(to_string(coefficients(Family::J, 2)) ==
        "(-1/x + 3/x^3)sin(x) + (-3/x^2)cos(x)");
  CHECK(to_string(coefficients(Family::I, 1)) ==
        "(-1/x^2)sinh(x) + (1/x)cosh(x)");
}

TEST_CASE("odd double factorial") {
  CHECK(odd_double_factorial(0) == 1);
  CHECK(odd_double_factorial(1) == 1);
  CHECK(odd_double_factorial(2) == 3);
  CHECK(odd_double_factorial(3) == 15);
  CHECK(odd_double_factorial(5) == 945);
  CHECK(odd_double_factorial(10) == mpz_class("654729075"));
}

TEST_CASE("family helpers") {
  CHECK(family_from_char('y') == Family::Y);
  CHECK(family_from_char('K') == Family::K);
  CHECK_THROWS_AS(family_from_char('z'), DomainError);
  CHECK(family_has_pole(Family::Y));
  CHECK(family_has_pole(Family::K));
  CHECK(!family_has_pole(Family::J));
  CHECK(family_oscillates(Family::J));
  CHECK(!family_oscillates(Family::I));
}
