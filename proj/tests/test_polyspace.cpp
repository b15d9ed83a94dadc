#include <doctest.h>

#include <cmath>

#include "mzroots/errors.hpp"
#include "mzroots/polyspace.hpp"
#include "oracles.hpp"

using namespace mzroots;

TEST_CASE("evaluation") {
  CHECK(std::abs(eval(Polynomial({1, 1}), 0.0) - cplx(2, 0)) < 1e-15);
  CHECK(std::abs(eval(Polynomial({1, 2, 1}), kPi)) < 1e-15);
  const Polynomial zn({0, 0, 0, 0, 0, 1});
  for (double t : {0.1, 1.3, 5.9}) {
    CHECK(std::abs(eval(zn, t) - std::polar(1.0, 5 * t)) < 1e-14);
    CHECK(std::abs(eval(zn, t)) == doctest::Approx(1.0));
  }
  const auto p = random_poly(40, 3);
  for (double t : {0.0, 0.7, 2.2, 4.4})
    CHECK(std::abs(eval(p, t) - oracle::eval(p.coeffs(), t)) < 1e-13);
}

TEST_CASE("grid evaluation matches pointwise evaluation") {
  const auto p = random_poly(17, 9);
  const CircleGrid grid(64);
  const auto values = eval_on_grid(p, grid);
  for (int m = 0; m < grid.size(); ++m) CHECK(std::abs(values[m] - oracle::eval(p.coeffs(), grid.angle(m))) < 1e-13);
}

TEST_CASE("circle norm") {
  const CircleGrid grid(64);
  for (double p : {1.5, 2.0, 3.0, 7.5}) CHECK(circle_norm(Polynomial({0, 0, 1}), p, grid) == doctest::Approx(1.0));
  CHECK(circle_norm(Polynomial({1, 1}), 2.0, grid) == doctest::Approx(2.0).epsilon(1e-14));
  // (2 + 2 cos t)^2 = 4 + 8 cos t + 4 cos^2 t has mean 4 + 2 = 6
  CHECK(circle_norm(Polynomial({1, 1}), 4.0, grid) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK_THROWS_AS(circle_norm(Polynomial({1, 1, 1}), 2.0, CircleGrid(5)), GridTooCoarse);
  CHECK_NOTHROW(circle_norm(Polynomial({1, 1, 1}), 2.0, CircleGrid(6)));
  CHECK_THROWS_AS(circle_norm(Polynomial({1, 1}), 1.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(circle_norm(Polynomial({1, 1}), 0.5, grid), std::invalid_argument);
}

TEST_CASE("Parseval on the minimal grid") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 1 + static_cast<int>(seed % 37);
    const auto p = random_poly(n, seed);
    const double coeff_sum = p.parseval_norm() * p.parseval_norm();
    CHECK(circle_norm(p, 2.0, CircleGrid(2 * n + 2)) == doctest::Approx(coeff_sum).epsilon(1e-10));
  }
}

TEST_CASE("even p quadrature is grid independent once M > p n") {
  for (int n : {3, 10, 25}) {
    const auto p = random_poly(n, 100 + n);
    for (int power : {2, 4}) {
      const double a = circle_norm(p, power, CircleGrid(power * n + 2));
      const double b = circle_norm(p, power, CircleGrid(8 * power * (n + 1)));
      CHECK(std::abs(a - b) <= 1e-12 * b);
    }
  }
}

TEST_CASE("converged norm for non-even p") {
  const auto p = random_poly(12, 77);
  const auto c = circle_norm_converged(p, 1.5);
  CHECK(c.converged);
  CHECK(c.grid_size >= 32 * 13);
  // independent value on a much finer grid
  CHECK(c.value == doctest::Approx(circle_norm(p, 1.5, CircleGrid(1 << 16))).epsilon(1e-8));
}

TEST_CASE("sample mean") {
  for (int n : {1, 4, 9}) CHECK(sample_mean(Polynomial({1, 1}), roots_of_unity(n), 2.0) == doctest::Approx(2.0));
  for (int n : {3, 4, 12}) CHECK(sample_mean(Polynomial({1, 1}), roots_of_unity(n), 4.0) == doctest::Approx(6.0));
  const auto odd = perturbed_family(6, PerturbationSchedule::random(0.3, 5));
  for (double p : {1.2, 2.0, 5.0}) CHECK(sample_mean(Polynomial({0, 0, 0, 1}), odd, p) == doctest::Approx(1.0));
  CHECK_THROWS_AS(sample_mean(Polynomial({1, 1, 1}), roots_of_unity(1), 2.0), DegreeMismatch);
  // trailing zeros do not count toward the degree
  CHECK_NOTHROW(sample_mean(Polynomial({1, 1, 0, 0}), roots_of_unity(1), 2.0));
}

TEST_CASE("sample mean at roots of unity equals the circle mean for p = 2") {
  for (int n : {1, 2, 5, 16, 33}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto p = random_poly(n, seed);
      CHECK(sample_mean(p, roots_of_unity(n), 2.0) ==
            doctest::Approx(circle_norm(p, 2.0, CircleGrid(4 * (n + 1)))).epsilon(1e-10));
    }
  }
}

TEST_CASE("random polynomials") {
  CHECK(random_poly(6, 42) == random_poly(6, 42));
  CHECK(random_poly(4, 1).coeffs() != random_poly(4, 2).coeffs());
  for (int n : {0, 3, 100}) CHECK(random_poly(n, 5).parseval_norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(random_poly(7, 0).degree_bound() == 7);
}
