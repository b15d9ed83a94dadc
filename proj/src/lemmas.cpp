#include "mzroots/lemmas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mzroots/weights.hpp"

namespace mzroots {

double kernel_h(double t, double rho) {
  return rho * std::sin(t) / (1.0 + rho * rho - 2.0 * rho * std::cos(t));
}

LemmaProbe LemmaProbe::with_default_grid(int n, double kappa, double alpha,
                                         PerturbationSchedule schedule) {
  return {n, kappa, alpha, std::move(schedule), CircleGrid::oversampled(n, 64)};
}

void LemmaProbe::validate() const {
  if (n < 0) throw std::invalid_argument("LemmaProbe: n must be nonnegative");
  if (!(kappa > 0.0)) throw std::invalid_argument("LemmaProbe: kappa must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("LemmaProbe: alpha must be positive");
  schedule.validate();
  if (!(schedule.amplitude() < 0.5))
    throw std::invalid_argument("LemmaProbe: schedule amplitude must be below 1/2");
}

std::vector<double> damped_log_product(const LemmaProbe& probe, double beta) {
  probe.validate();
  const auto offsets = probe.schedule.offsets(probe.n);
  const double rho = rho_kappa(probe.n, probe.kappa);
  const int size = probe.n + 1;
  std::vector<double> lambda(size);
  for (int j = 0; j < size; ++j) lambda[j] = kTwoPi * (j + beta * offsets[j]) / size;

  // |e^{i theta} - rho e^{i lambda}|^2 = (1-rho)^2 + 4 rho sin^2((theta - lambda)/2),
  // bounded below by (1-rho)^2 > 0.
  const double gap = (1.0 - rho) * (1.0 - rho);
  std::vector<double> out(probe.grid.size());
  for (int m = 0; m < probe.grid.size(); ++m) {
    const double theta = probe.grid.angle(m);
    double acc = 0.0;
    for (double l : lambda) {
      const double s = std::sin(0.5 * (theta - l));
      acc += std::log(gap + 4.0 * rho * s * s);
    }
    out[m] = 0.5 * acc;
  }
  return out;
}

double lemma_ratio_bound(const LemmaProbe& probe) {
  const auto p0 = damped_log_product(probe, 0.0);
  const auto p1 = damped_log_product(probe, 1.0);
  const auto pa = damped_log_product(probe, probe.alpha);
  double worst = 0.0;
  for (std::size_t m = 0; m < p0.size(); ++m)
    worst = std::max(worst, std::abs((pa[m] - p0[m]) - probe.alpha * (p1[m] - p0[m])));
  return worst;
}

LogRange unperturbed_log_range(const LemmaProbe& probe) {
  const auto p0 = damped_log_product(probe, 0.0);
  const auto [lo, hi] = std::minmax_element(p0.begin(), p0.end());
  return {*lo, *hi};
}

}  // namespace mzroots
