#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "arkc/chebyshev.hpp"

using arkc::ChebEval;
using arkc::cheb_first_kind;
using arkc::cheb_second_kind;

TEST_CASE("first kind base cases and low degrees") {
  const ChebEval t0 = cheb_first_kind(0, 0.7);
  CHECK(t0.value == 1.0);
  CHECK(t0.first_deriv == 0.0);
  CHECK(t0.second_deriv == 0.0);

  // T_2(x) = 2x^2 - 1 expanded by hand at x = 2.
  const ChebEval t2 = cheb_first_kind(2, 2.0);
  CHECK(t2.value == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(t2.first_deriv == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(t2.second_deriv == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("first kind endpoint derivatives") {
  // T_j(1) = 1, T_j'(1) = j^2, T_j''(1) = j^2(j^2-1)/3.
  const ChebEval t5 = cheb_first_kind(5, 1.0);
  CHECK(t5.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t5.first_deriv == doctest::Approx(25.0).epsilon(1e-14));
  CHECK(t5.second_deriv == doctest::Approx(200.0).epsilon(1e-14));

  for (int j : {1, 2, 10, 33, 100}) {
    const ChebEval t = cheb_first_kind(j, 1.0);
    const double j2 = static_cast<double>(j) * j;
    CHECK(t.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(t.first_deriv == doctest::Approx(j2).epsilon(1e-12));
    CHECK(t.second_deriv == doctest::Approx(j2 * (j2 - 1.0) / 3.0).epsilon(1e-11));
  }
}

TEST_CASE("second kind values") {
  CHECK(cheb_second_kind(1, 0.3).value == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(cheb_second_kind(3, 1.0).value == doctest::Approx(4.0).epsilon(1e-14));  // U_j(1) = j+1

  // U_{j-1}(x) = T_j'(x)/j slightly above 1.
  const double u9 = cheb_second_kind(9, 1.02).value;
  CHECK(u9 == doctest::Approx(cheb_first_kind(10, 1.02).first_deriv / 10.0).epsilon(1e-13));
}

TEST_CASE("kinds linked by the derivative identity on shifted arguments") {
  for (int j = 1; j <= 500; ++j) {
    for (double eta : {0.05, 0.15, 1.0, 3.0, 10.0, 27.0}) {
      const double x = 1.0 + eta / (static_cast<double>(j) * j);
      const double lhs = cheb_second_kind(j - 1, x).value;
      const double rhs = cheb_first_kind(j, x).first_deriv / j;
      CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
    }
  }
}

TEST_CASE("bounded on the reference interval") {
  for (int j : {1, 3, 7, 20, 64}) {
    for (int i = 0; i <= 200; ++i) {
      const double x = -1.0 + 2.0 * i / 200.0;
      CHECK(std::abs(cheb_first_kind(j, x).value) <= 1.0 + 1e-12);
      CHECK(std::abs(cheb_second_kind(j, x).value) <= j + 1.0 + 1e-12);
    }
  }
}

TEST_CASE("recurrence agrees with trigonometric closed forms") {
  for (int j : {1, 2, 5, 17, 60, 200}) {
    for (int i = 0; i <= 40; ++i) {
      const double x = (-1.0 + 1e-3) + (2.0 - 2e-3) * i / 40.0;
      const double theta = std::acos(x);
      const double tj = std::cos(j * theta);
      const double uj = std::sin((j + 1) * theta) / std::sin(theta);
      CHECK(cheb_first_kind(j, x).value == doctest::Approx(tj).epsilon(1e-9));
      CHECK(cheb_second_kind(j, x).value == doctest::Approx(uj).epsilon(1e-9));
    }
  }
}

TEST_CASE("finite at high degree on the damped arguments") {
  for (double eta : {0.05, 27.0}) {
    const double x = 1.0 + eta / 1e6;  // j = 1000
    const ChebEval t = cheb_first_kind(1000, x);
    const ChebEval u = cheb_second_kind(1000, x);
    CHECK(std::isfinite(t.value));
    CHECK(std::isfinite(t.first_deriv));
    CHECK(std::isfinite(t.second_deriv));
    CHECK(std::isfinite(u.value));
    CHECK(std::isfinite(u.second_deriv));
  }
}

TEST_CASE("negative degree rejected") {
  CHECK_THROWS_AS(cheb_first_kind(-1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cheb_second_kind(-3, 1.0), std::invalid_argument);
}
