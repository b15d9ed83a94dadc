#pragma once

// Numerical side of the alpha-power comparison of damped products: for
// P_beta(theta) = |prod_j (e^{i theta} - rho e^{i lambda_j(beta)})| with
// lambda_j(beta) = 2 pi (j + beta delta_nj)/(n+1), the ratio
// R_n = P_alpha / (P_0 (P_1/P_0)^alpha) stays bounded above and below
// uniformly in n.

#include <vector>

#include "mzroots/nodes.hpp"
#include "mzroots/polyspace.hpp"

namespace mzroots {

/// h(t) = rho sin t / (1 + rho^2 - 2 rho cos t).
double kernel_h(double t, double rho);

struct LemmaProbe {
  int n = 0;
  double kappa = 1.0;
  double alpha = 1.0;
  PerturbationSchedule schedule;
  CircleGrid grid{64};

  /// Default grid of 64(n+1) points.
  static LemmaProbe with_default_grid(int n, double kappa, double alpha,
                                      PerturbationSchedule schedule);

  /// Throws std::invalid_argument unless n >= 0, kappa > 0, alpha > 0 and
  /// the schedule amplitude is below 1/2.
  void validate() const;
};

/// log P_beta on the probe grid.
std::vector<double> damped_log_product(const LemmaProbe& probe, double beta);

/// sup_theta |log P_alpha - alpha (log P_1 - log P_0) - log P_0|.
double lemma_ratio_bound(const LemmaProbe& probe);

struct LogRange {
  double min = 0.0;
  double max = 0.0;
};

/// Range of log P_0 over the grid.
LogRange unperturbed_log_range(const LemmaProbe& probe);

}  // namespace mzroots
