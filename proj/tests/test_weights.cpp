#include <doctest.h>

#include <cmath>
#include <random>

#include "mzroots/errors.hpp"
#include "mzroots/weights.hpp"
#include "oracles.hpp"

using namespace mzroots;

namespace {
WeightSamples from_function(int m, auto&& log_w) {
  WeightSamples w{CircleGrid(m), std::vector<double>(m)};
  for (int i = 0; i < m; ++i) w.log_values[i] = log_w(w.grid.angle(i));
  return w;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}
}  // namespace

TEST_CASE("radius rules") {
  CHECK(rho_kappa(99, 10.0) == doctest::Approx(0.9));
  CHECK(rho_kappa(9, 100.0) == 0.5);
  CHECK(RadiusRule::degree_ratio().radius(7) == doctest::Approx(7.0 / 8.0));
  CHECK(RadiusRule::rho(10.0).radius(99) == doctest::Approx(0.9));
  CHECK_THROWS_AS(rho_kappa(3, 0.0), std::invalid_argument);
}

TEST_CASE("generating weight") {
  SUBCASE("n = 0 with r = n/(n+1) is identically 1") {
    const auto w = generating_weight(roots_of_unity(0), RadiusRule::degree_ratio(), CircleGrid(16));
    for (double v : w.log_values) CHECK(v == 0.0);
  }
  SUBCASE("single node at r = 1/2") {
    const auto w = generating_weight(roots_of_unity(0), 0.5, CircleGrid(16));
    CHECK(w.log_values[0] == doctest::Approx(std::log(0.5)));
    CHECK(w.log_values[8] == doctest::Approx(std::log(1.5)));
  }
  SUBCASE("roots of unity match the closed form") {
    for (int n : {3, 16, 63}) {
      const CircleGrid grid(16 * (n + 1) + 6);
      for (double r : {0.5, 0.9, n / (n + 1.0)}) {
        const auto w = generating_weight(roots_of_unity(n), r, grid);
        for (int m = 0; m < grid.size(); ++m)
          CHECK(w.log_values[m] ==
                doctest::Approx(oracle::roots_generating_log(n, r, grid.angle(m))).epsilon(1e-9).scale(1.0));
      }
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(generating_weight(roots_of_unity(8), 0.5, CircleGrid(71)), GridTooCoarse);
    CHECK_THROWS_AS(generating_weight(roots_of_unity(8), 1.0, CircleGrid(72)), std::invalid_argument);
  }
}

TEST_CASE("A_p arc constant") {
  SUBCASE("constant weight") {
    for (double p : {1.5, 2.0, 4.0}) {
      const auto r = ap_constant(from_function(256, [](double) { return 0.3; }), p);
      CHECK(r.k_p == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(r.profile.size() == 6);
    }
  }
  SUBCASE("invariant under scaling the weight") {
    auto f = [](double t) { return 0.4 * std::cos(t) + 0.1 * std::sin(3 * t); };
    const auto a = ap_constant(from_function(512, f), 2.0);
    const auto b = ap_constant(from_function(512, [&](double t) { return f(t) + 7.5; }), 2.0);
    CHECK(b.k_p == doctest::Approx(a.k_p).epsilon(1e-12));
    CHECK(a.k_p > 1.0);
  }
  SUBCASE("monotone in the arc family") {
    auto f = [](double t) { return 0.25 * std::log(std::abs(std::sin(0.5 * t - 0.3)) + 1e-3); };
    const auto w = from_function(1024, f);
    double prev = 0.0;
    for (int level = 0; level <= 7; ++level) {
      const double k = ap_constant(w, 2.0, ArcFamily{level, 8}).k_p;
      CHECK(k >= prev);
      prev = k;
    }
    CHECK(ap_constant(w, 2.0).k_p == doctest::Approx(prev));
  }
  SUBCASE("power weight with an off-grid zero is stable under grid doubling") {
    // w = |e^{it} - e^{it0}|^{1/2}, p = 2; t0 never lands on a grid point.
    const double t0 = kTwoPi / (3.0 * 1024);
    auto f = [t0](double t) { return 0.25 * std::log(std::abs(std::polar(1.0, t) - std::polar(1.0, t0))); };
    const double k1 = ap_constant(from_function(1024, f), 2.0).k_p;
    const double k2 = ap_constant(from_function(2048, f), 2.0).k_p;
    CHECK(std::abs(k2 / k1 - 1.0) < 0.02);
    // Arc with an endpoint at the zero: (2/3 * 2)^{1/2}.
    CHECK(k1 >= 0.99 * std::sqrt(4.0 / 3.0));
    CHECK(k1 < 1.5);
  }
  SUBCASE("arc averages match a Simpson integral of the weight") {
    // Whole circle (level 0): the product is the full-circle average pair.
    auto f = [](double t) { return 0.5 * std::cos(t); };
    const auto r = ap_constant(from_function(4096, f), 2.0, ArcFamily{0, 8});
    const double a = oracle::simpson([](double t) { return std::exp(std::cos(t)); }, 0, kTwoPi, 2000) / kTwoPi;
    const double b = oracle::simpson([](double t) { return std::exp(-std::cos(t)); }, 0, kTwoPi, 2000) / kTwoPi;
    CHECK(r.k_p == doctest::Approx(std::sqrt(a * b)).epsilon(1e-9));
  }
  SUBCASE("errors") {
    auto w = from_function(64, [](double) { return 0.0; });
    w.log_values[3] = -INFINITY;
    CHECK_THROWS_AS(ap_constant(w, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(ap_constant(from_function(64, [](double) { return 0.0; }), 1.0), std::invalid_argument);
  }
}

TEST_CASE("conjugate function") {
  const int m = 64;
  const CircleGrid grid(m);
  auto sample = [&](auto&& f) {
    std::vector<double> v(m);
    for (int i = 0; i < m; ++i) v[i] = f(grid.angle(i));
    return v;
  };
  CHECK(sup_diff(conjugate(sample([](double t) { return std::cos(t); })),
                 sample([](double t) { return std::sin(t); })) < 1e-12);
  CHECK(sup_diff(conjugate(sample([](double) { return 2.5; })), std::vector<double>(m, 0.0)) < 1e-12);
  CHECK(sup_diff(conjugate(sample([](double t) { return std::cos(3 * t) + 2 * std::sin(t); })),
                 sample([](double t) { return std::sin(3 * t) - 2 * std::cos(t); })) < 1e-12);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::vector<double> noise(m);
  for (double& x : noise) x = g(rng);
  CHECK(sup_diff(conjugate(noise), oracle::conjugate(noise)) < 1e-10);
  CHECK_THROWS_AS(conjugate(std::vector<double>(63)), std::invalid_argument);
}

TEST_CASE("v_kappa") {
  const CircleGrid grid(64 * 65);
  SUBCASE("vanishes for the roots of unity") {
    const auto v = v_kappa(64, PerturbationSchedule::constant(0.0), 100.0, grid);
    CHECK(sup_diff(v, std::vector<double>(v.size(), 0.0)) < 1e-12);
  }
  SUBCASE("constant shift gives the constant -2 pi delta") {
    const auto v = v_kappa(64, PerturbationSchedule::constant(0.2), 100.0, grid);
    CHECK(sup_diff(v, std::vector<double>(v.size(), -kTwoPi * 0.2)) < 1e-10);
  }
  SUBCASE("derivative matches the Poisson sum") {
    // v' = sum_j P(theta - s_j - a_j) - (n+1).
    const int n = 20;
    const double rho = rho_kappa(n, 5.0);
    const CircleGrid g(4096);
    const auto v = v_kappa(n, PerturbationSchedule::constant(0.0), 5.0, g);
    for (int m = 1; m + 1 < g.size(); m += 97) {
      const double dv = (v[m + 1] - v[m - 1]) / (2 * g.step());
      CHECK(dv == doctest::Approx(oracle::poisson_sum(n, rho, g.angle(m)) - (n + 1)).epsilon(1e-4).scale(1.0));
    }
  }
  SUBCASE("alternating amplitude stays below 2 pi delta") {
    for (double kappa : {10.0, 50.0, 100.0}) {
      const auto v = v_kappa(64, PerturbationSchedule::alternating(0.2), kappa, grid);
      CHECK(sup_diff(v, std::vector<double>(v.size(), 0.0)) <= kTwoPi * 0.2 + 0.15);
    }
  }
  CHECK_THROWS_AS(v_kappa(8, PerturbationSchedule::explicit_offsets({0.5, 0, 0, 0, 0, 0, 0, 0, 0}), 10.0,
                          CircleGrid(72)),
                  std::invalid_argument);
}

TEST_CASE("Helson-Szego check") {
  SUBCASE("conjugate identity holds numerically") {
    for (int n : {32, 64}) {
      const auto r = helson_szego_check(n, PerturbationSchedule::alternating(0.2), 50.0, CircleGrid(64 * (n + 1)));
      CHECK(r.conj_residual <= 0.05);
      CHECK(r.passes);
      CHECK_FALSE(r.marginal);
    }
  }
  SUBCASE("u stays bounded across n") {
    const auto a = helson_szego_check(64, PerturbationSchedule::alternating(0.2), 50.0, CircleGrid(64 * 65));
    const auto b = helson_szego_check(128, PerturbationSchedule::alternating(0.2), 50.0, CircleGrid(64 * 129));
    CHECK(b.u_sup == doctest::Approx(a.u_sup).epsilon(0.05));
  }
  SUBCASE("constant shifts just below and above 1/4") {
    const CircleGrid grid(64 * 33);
    CHECK(helson_szego_check(32, PerturbationSchedule::constant(0.24), 100.0, grid).passes);
    const auto over = helson_szego_check(32, PerturbationSchedule::constant(0.26), 100.0, grid);
    CHECK_FALSE(over.passes);
    CHECK(over.marginal);
  }
  SUBCASE("reduction scalings") {
    const CircleGrid grid(64 * 33);
    const auto schedule = PerturbationSchedule::constant(0.1);
    const auto half = reduced_helson_szego_check(32, schedule, 4.0, 100.0, grid, ReductionScaling::half_q);
    const auto full = reduced_helson_szego_check(32, schedule, 4.0, 100.0, grid, ReductionScaling::q);
    CHECK(half.v_sup == doctest::Approx(kTwoPi * 0.2).epsilon(1e-9));
    CHECK(full.v_sup == doctest::Approx(kTwoPi * 0.4).epsilon(1e-9));
    CHECK(half.passes);
    CHECK_FALSE(full.passes);
  }
}

TEST_CASE("thresholds") {
  CHECK(perturbation_threshold(2.0) == 0.25);
  CHECK(perturbation_threshold(4.0) == 0.125);
  CHECK(perturbation_threshold(4.0 / 3.0) == doctest::Approx(0.125));
  CHECK(conjugate_exponent_max(1.5) == doctest::Approx(3.0));
  CHECK_THROWS_AS(perturbation_threshold(1.0), std::invalid_argument);
}

TEST_CASE("phi_n and its limit") {
  SUBCASE("ratio form agrees with the full product") {
    const int n = 12;
    const double delta = 0.25;
    const double rho = phi_radius(n);
    const CircleGrid grid(16 * (2 * n + 1) + 2);
    const auto f = generating_weight(necessity_family(n, delta), rho, grid);
    for (int m = 0; m < grid.size(); ++m) {
      const double t = grid.angle(m);
      const double divisor =
          std::log(std::abs(std::polar(1.0, (2 * n + 1) * t) - std::pow(rho, 2 * n + 1)));
      CHECK(phi_log_modulus(n, delta, rho, t) == doctest::Approx(f.log_values[m] - divisor).scale(1.0));
    }
  }
  SUBCASE("delta = 0 gives |phi| = 1") {
    CHECK(phi_log_modulus(30, 0.0, phi_radius(30), 1.234) == 0.0);
  }
  SUBCASE("limit weight") {
    CHECK(limit_weight(kPi / 2, 0.25) == doctest::Approx(1.0));
    CHECK(limit_weight(kPi / 3, 0.5) == doctest::Approx(std::tan(kPi / 6)));
    CHECK(std::exp(phi_log_modulus(512, 0.25, phi_radius(512), kPi / 2)) == doctest::Approx(1.0).epsilon(0.02));
  }
  SUBCASE("deviation shrinks with n") {
    double prev = INFINITY;
    for (int n : {16, 32, 64, 128}) {
      const double d = phi_limit_deviation(n, 0.25, CircleGrid(4096));
      CHECK(d < prev);
      prev = d;
    }
    CHECK_THROWS_AS(phi_limit_deviation(3, 0.25, CircleGrid(64)), std::invalid_argument);
  }
  SUBCASE("limit arc product matches the closed form at p = 2, delta = 1/4") {
    for (double eps : {0.3, kPi / 16, kPi / 64, 1e-4})
      CHECK(limit_weight_arc_product(0.25, 2.0, eps) ==
            doctest::Approx(oracle::limit_product_closed_form(eps)).epsilon(1e-10));
    CHECK_THROWS_AS(limit_weight_arc_product(0.25, 2.0, 0.0), std::invalid_argument);
  }
  SUBCASE("below 1/4 the limit arc product converges to 1/cos(2 pi delta)") {
    // int_0^pi tan(t/2)^a dt = pi / cos(pi a / 2) for |a| < 1.
    const double limit = 1.0 / std::cos(kTwoPi * 0.2);
    double prev = 0.0;
    for (double eps : {1e-2, 1e-4, 1e-8, 1e-12}) {
      const double v = limit_weight_arc_product(0.2, 2.0, eps);
      CHECK(v > prev);
      CHECK(v < limit);
      prev = v;
    }
    CHECK(prev == doctest::Approx(limit).epsilon(0.02));
  }
  SUBCASE("divisor guard") {
    for (int n : {4, 16, 64}) {
      const double rho = phi_radius(n);
      const double exact = 1.0 - std::pow(rho, 2 * n + 1);
      CHECK(divisor_guard(n, rho, CircleGrid(8 * (2 * n + 1))) == doctest::Approx(exact).epsilon(1e-12));
      CHECK(divisor_guard(n, rho, CircleGrid(1000)) >= exact * (1 - 1e-12));
    }
  }
}
