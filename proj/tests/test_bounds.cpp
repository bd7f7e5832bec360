#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "parking/bounds.hpp"

using namespace parking;

namespace {
const double kE = std::exp(1.0);

// independent route: direct term-by-term summation with a fixed horizon
double concentration_constant_by_direct_sum(int d, int terms) {
  double sum = 0;
  for (int k = 1; k <= terms; ++k) {
    double power = 1, outer = 1, inner = 1;
    for (int j = 0; j < k; ++j) power *= 2.0 * d - 1.0;
    for (int j = 0; j < d; ++j) {
      outer *= 2.0 * k + 1.0;
      inner *= 2.0 * k - 1.0;
    }
    sum += power * (outer - inner) / factorial(k);
  }
  return 1.0 + (2.0 * d / (2.0 * d - 1.0)) * sum;
}

}  // namespace

TEST_CASE("factorial by running product") {
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(1) == 1.0);
  CHECK(factorial(5) == 120.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK(std::isinf(factorial(171)));
  CHECK_THROWS_AS(factorial(-1), std::invalid_argument);
}

TEST_CASE("concentration constant") {
  SUBCASE("d=1 collapses to 4e-3") {
    CHECK(std::abs(concentration_constant(1) - (4 * kE - 3)) < 1e-12);
  }
  SUBCASE("d=2 equals the resummed closed form 1+32e^3") {
    const double closed = 1.0 + 32.0 * std::exp(3.0);
    CHECK(concentration_constant(2) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(concentration_constant_by_direct_sum(2, 200) ==
          doctest::Approx(closed).epsilon(1e-12));
  }
  SUBCASE("truncation is stable") {
    for (const int d : {1, 2, 3}) {
      const double value = concentration_constant(d);
      const double longer = concentration_constant_by_direct_sum(d, 400);
      CHECK(std::abs(value - longer) < 1e-12 * std::abs(longer));
    }
  }
}

TEST_CASE("gaussian concentration bound") {
  SUBCASE("eps -> 0 limit is e^(1/e)") {
    CHECK(concentration_bound(1, 50, 0) == doctest::Approx(std::exp(1 / kE)).epsilon(1e-14));
    CHECK(std::abs(std::exp(1 / kE) - 1.444667861) < 1e-8);
  }
  SUBCASE("plug-in arithmetic at d=1, n=50, eps=30") {
    const double expected =
        std::exp(1.0 / kE - 900.0 / (4.0 * kE * (4.0 * kE - 3.0) * 101.0));
    CHECK(concentration_bound(1, 50, 30) == doctest::Approx(expected).epsilon(1e-14));
  }
  SUBCASE("monotone decreasing in eps") {
    double prev = concentration_bound(2, 10, 0);
    for (double eps = 1; eps <= 40; eps += 1) {
      const double cur = concentration_bound(2, 10, eps);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("free-boundary concentration bound") {
  SUBCASE("eps=4 carries boundary term 2/3! = 1/3") {
    const double gaussian =
        std::exp(1.0 / kE - 16.0 / (16.0 * kE * (4.0 * kE - 3.0) * 11.0));
    CHECK(concentration_bound_free(5, 4) ==
          doctest::Approx(gaussian + 1.0 / 3.0).epsilon(1e-14));
  }
  SUBCASE("always positive") {
    for (double eps = 0; eps < 400; eps += 7.3)
      CHECK(concentration_bound_free(100, eps) > 0);
  }
  SUBCASE("at eps = |box| the factorial term is beaten by both e^-|box| and the gaussian") {
    const int n = 400;
    const double box = 2.0 * n + 1.0;
    const int index = static_cast<int>(std::ceil(box / 4.0 + 2.0));
    const double log_factorial_term = std::log(2.0) - std::lgamma(index + 1.0);
    CHECK(log_factorial_term < -box);
    const double log_gaussian = 1.0 / kE - box / (16.0 * kE * (4.0 * kE - 3.0));
    CHECK(log_factorial_term < log_gaussian);
  }
}

TEST_CASE("mean deviation bound") {
  SUBCASE("d=1 sharp value 2(e-1)") {
    for (const int n : {1, 5, 50})
      CHECK(mean_deviation_bound(1, n) == doctest::Approx(2 * (kE - 1)).epsilon(1e-14));
    CHECK(std::abs(2 * (kE - 1) - 3.43656366) < 1e-8);
  }
  SUBCASE("general-d series at d=1 stays under twice the sharp value") {
    for (int n = 1; n <= 30; ++n)
      CHECK(mean_deviation_bound_general(1, n) <= 4 * (kE - 1) + 1e-12);
    CHECK(mean_deviation_bound_general(1, 30) ==
          doctest::Approx(4 * (kE - 1)).epsilon(1e-13));
  }
  SUBCASE("d=2, n=3 equals the term-by-term hand sum") {
    // head 4*3^3/4! plus 16 * (3^0*7/1! + 3^1*5/2! + 3^2*3/3!)
    const double hand = 4.0 * 27.0 / 24.0 + 16.0 * (7.0 + 7.5 + 4.5);
    CHECK(mean_deviation_bound(2, 3) == doctest::Approx(hand).epsilon(1e-14));
    CHECK(hand == 308.5);
  }
}

TEST_CASE("mixing coefficient bounds") {
  CHECK(mixing_alpha_bound(1, 1, 8) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(mixing_alpha_bound(2, 2, 4) == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(mixing_alpha_one_inf_bound(1) == doctest::Approx(51.0).epsilon(1e-14));
  CHECK(mixing_alpha_one_inf_bound(5) == doctest::Approx(164.025).epsilon(1e-14));

  SUBCASE("factorial decay wins") {
    CHECK(mixing_alpha_bound(3, 4, 200) < 1e-30);
    CHECK(mixing_alpha_bound(3, 4, 200) < mixing_alpha_bound(3, 4, 100) * 1e-10);
    CHECK(mixing_alpha_one_inf_bound(60) < 1e-30);
  }

  SUBCASE("n^2 alpha_{1,inf}(n) -> 0 by n=30") {
    double prev = 1e300;
    for (int n = 10; n <= 30; ++n) {
      const double value = n * static_cast<double>(n) * mixing_alpha_one_inf_bound(n);
      CHECK(value < prev);
      prev = value;
    }
    CHECK(prev < 1e-12);
  }

  SUBCASE("sum of n * alpha(n)^(1/3) converges") {
    double partial = 0, tail = 0, previous_term = 0, last_ratio = 1;
    for (int n = 1; n <= 400; ++n) {
      const double term = n * std::cbrt(mixing_alpha_bound(1, 1, n));
      partial += term;
      if (n > 200) tail += term;
      if (n > 1 && previous_term > 0) last_ratio = term / previous_term;
      previous_term = term;
    }
    CHECK(partial < 1e4);
    CHECK(tail < 1e-6 * partial);
    CHECK(last_ratio < 0.9);  // successive-term ratio well below 1 and shrinking
  }
}

TEST_CASE("armour escape bound") {
  CHECK(armour_escape_bound(1, 3) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(armour_escape_bound(2, 3) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(armour_escape_bound_d2_simplified(3) == doctest::Approx(4.5).epsilon(1e-14));

  SUBCASE("the d=2 chain 4*3^n/(n+1)! <= 3^n/n! holds for n >= 3") {
    for (int n = 3; n <= 20; ++n) {
      const double chained = 4.0 * std::pow(3.0, n) / factorial(n + 1);
      CHECK(chained <= armour_escape_bound_d2_simplified(n) + 1e-15);
    }
  }
  SUBCASE("vanishes as k grows") {
    CHECK(armour_escape_bound(2, 60) < 1e-40);
  }
}

TEST_CASE("phi mixing bound sums to B - 1 over boundary shells") {
  for (const int d : {1, 2, 3}) {
    double total = 0;
    for (int k = 1; k <= 250; ++k) {
      double outer = 1, inner = 1;
      for (int j = 0; j < d; ++j) {
        outer *= 2.0 * k + 1.0;
        inner *= 2.0 * k - 1.0;
      }
      total += (outer - inner) * phi_mixing_bound(d, k);
    }
    CHECK(total == doctest::Approx(concentration_constant(d) - 1.0).epsilon(1e-12));
  }
}

TEST_CASE("bounds report") {
  const BoundsReport r1 = evaluate_bounds(1, 50, 30, 3, 1);
  CHECK(r1.values.contains("B"));
  CHECK(r1.values.contains("concentration_bound_free"));
  CHECK(!r1.values.contains("mixing_alpha_kl"));
  const BoundsReport r2 = evaluate_bounds(2, 8, 10, 1, 1);
  CHECK(r2.values.contains("mixing_alpha_kl"));
  CHECK(r2.values.contains("mixing_alpha_1inf"));
  for (const auto& [name, value] : r2.values) {
    CHECK(std::isfinite(value));
    CHECK(value >= 0);
  }
}
