#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "mzroots/lemmas.hpp"
#include "mzroots/weights.hpp"

using namespace mzroots;

TEST_CASE("kernel h") {
  CHECK(kernel_h(0.0, 0.7) == 0.0);
  CHECK(kernel_h(kPi, 0.5) == doctest::Approx(0.0).scale(1.0));
  CHECK(kernel_h(kPi / 2, 0.5) == doctest::Approx(0.4));
  // Odd in t.
  CHECK(kernel_h(-1.1, 0.8) == doctest::Approx(-kernel_h(1.1, 0.8)));
}

TEST_CASE("damped products") {
  SUBCASE("unperturbed product matches the closed form") {
    const int n = 20;
    const auto probe = LemmaProbe::with_default_grid(n, 5.0, 1.0, PerturbationSchedule::constant(0.0));
    const double r = std::pow(rho_kappa(n, 5.0), n + 1);
    const auto p0 = damped_log_product(probe, 0.0);
    for (int m = 0; m < probe.grid.size(); m += 37) {
      const double theta = probe.grid.angle(m);
      CHECK(p0[m] == doctest::Approx(0.5 * std::log(1 + r * r - 2 * r * std::cos((n + 1) * theta))).scale(1.0));
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(damped_log_product(LemmaProbe::with_default_grid(4, 0.0, 1.0, {}), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(damped_log_product(LemmaProbe::with_default_grid(4, 1.0, 0.0, {}), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        lemma_ratio_bound(LemmaProbe::with_default_grid(2, 1.0, 2.0, PerturbationSchedule::explicit_offsets({0.5, 0, 0}))),
        std::invalid_argument);
  }
}

TEST_CASE("ratio bound") {
  SUBCASE("alpha = 1 is exactly zero") {
    for (int n : {16, 64})
      CHECK(lemma_ratio_bound(LemmaProbe::with_default_grid(n, 10.0, 1.0, PerturbationSchedule::random(0.4, 3))) ==
            0.0);
  }
  SUBCASE("no perturbation is exactly zero") {
    CHECK(lemma_ratio_bound(LemmaProbe::with_default_grid(64, 50.0, 2.0, PerturbationSchedule::constant(0.0))) ==
          0.0);
    CHECK(lemma_ratio_bound(LemmaProbe::with_default_grid(64, 50.0, 0.5, PerturbationSchedule::alternating(0.0))) ==
          0.0);
  }
  SUBCASE("alternating delta = 0.2 stays bounded across n") {
    double lo = INFINITY, hi = 0.0;
    for (int n : {64, 128, 256}) {
      const double s = lemma_ratio_bound(LemmaProbe::with_default_grid(n, 50.0, 2.0, PerturbationSchedule::alternating(0.2)));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    CHECK(hi < 1e-3);
    CHECK(lo > 0.0);
  }
  SUBCASE("random schedules, kappa = 50: running max stops growing after n = 128") {
    for (double alpha : {0.5, 2.0}) {
      std::vector<double> maxima;
      double running = 0.0;
      for (int n : {32, 64, 128, 256}) {
        running = std::max(running, lemma_ratio_bound(LemmaProbe::with_default_grid(
                                        n, 50.0, alpha, PerturbationSchedule::random(0.4, 1))));
        maxima.push_back(running);
      }
      CHECK(maxima[3] <= 1.02 * maxima[2]);
    }
  }
  SUBCASE("random schedules, kappa = 10: bounded") {
    for (int n : {32, 128, 256}) {
      const auto schedule = PerturbationSchedule::random(0.4, 1);
      CHECK(lemma_ratio_bound(LemmaProbe::with_default_grid(n, 10.0, 0.5, schedule)) < 0.012);
      CHECK(lemma_ratio_bound(LemmaProbe::with_default_grid(n, 10.0, 2.0, schedule)) < 0.12);
    }
  }
}

TEST_CASE("unperturbed range is bounded independently of n") {
  for (double kappa : {10.0, 50.0}) {
    for (int n : {64, 128, 256}) {
      const auto r = unperturbed_log_range(LemmaProbe::with_default_grid(n, kappa, 1.0, {}));
      CHECK(r.min <= 0.0);
      CHECK(r.max >= 0.0);
      // log|1 -+ rho^{n+1}| with rho^{n+1} -> e^{-kappa}.
      CHECK(r.max - r.min <= 2.1 * std::exp(-kappa) + 1e-12);
    }
  }
}
