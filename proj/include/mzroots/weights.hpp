#pragma once

// Generating-polynomial weights and the uniform (A_p) machinery.
//
// The generating polynomial of a node set is F(z) = prod_j (1 - r conj(z_j) z)
// for a damping radius r < 1. Its boundary modulus |F|^p is the weight whose
// arc averages decide the MZ property. Everything is kept in log space
// because |F| has dynamic range exponential in n.

#include <span>
#include <vector>

#include "mzroots/nodes.hpp"
#include "mzroots/polyspace.hpp"

namespace mzroots {

/// rho_{kappa n} = max(1/2, 1 - kappa/(n+1)).
double rho_kappa(int n, double kappa);

/// Damping radius of a generating polynomial.
class RadiusRule {
 public:
  /// r = n/(n+1).
  static RadiusRule degree_ratio() { return RadiusRule(0.0); }
  /// r = rho_{kappa n}.
  static RadiusRule rho(double kappa);

  double radius(int n) const;
  bool is_degree_ratio() const { return kappa_ == 0.0; }
  double kappa() const { return kappa_; }

 private:
  explicit RadiusRule(double kappa) : kappa_(kappa) {}
  double kappa_;
};

/// log w on a CircleGrid. Entries are finite.
struct WeightSamples {
  CircleGrid grid{8};
  std::vector<double> log_values;
};

/// log |F(e^{i theta_m})| = sum_j log |1 - r e^{i(theta_m - alpha_j)}|.
/// Requires M >= 8(n+1).
WeightSamples generating_weight(const NodeSet& nodes, RadiusRule rule, const CircleGrid& grid);

/// Same sum with an explicit radius in [0, 1).
WeightSamples generating_weight(const NodeSet& nodes, double radius, const CircleGrid& grid);

struct ArcProfileEntry {
  double length = 0.0;
  double product = 1.0;
};

struct ApReport {
  double p = 2.0;
  double k_p = 1.0;
  double argmax_center = 0.0;
  double argmax_length = 0.0;
  std::vector<ArcProfileEntry> profile;
};

/// Dyadic arc family: lengths round(M/2^m) grid points for
/// m = 0..finest_level, centers stepping by 1/center_subdivision of the
/// length. finest_level < 0 selects floor(log2(M/8)).
struct ArcFamily {
  int finest_level = -1;
  int center_subdivision = 8;
};

/// sup over the arc family of
///   (avg_I w)^{1/p} (avg_I w^{-1/(p-1)})^{(p-1)/p},  w = exp(p log_values).
/// Arc averages are rectangle-rule sums over the grid points in the arc.
ApReport ap_constant(const WeightSamples& weight, double p, ArcFamily family = {});

/// Discrete conjugate function: multiplier -i sign(k) on the DFT
/// coefficients, with the mean and Nyquist coefficients zeroed. Requires an
/// even number of samples.
std::vector<double> conjugate(std::span<const double> samples);

/// v_{kappa n}(theta) = sum_j int_0^{theta - s_j} P(eta - a_j) deta - (n+1) theta
/// where a_j = 2 pi j/(n+1), s_j = 2 pi delta_nj/(n+1) and
/// P(x) = (1 - rho^2)/(1 - 2 rho cos x + rho^2), rho = rho_{kappa n}, using
/// the exact antiderivative x + 2 atan2(rho sin x, 1 - rho cos x).
std::vector<double> v_kappa(int n, const PerturbationSchedule& schedule, double kappa,
                            const CircleGrid& grid);

struct HelsonSzegoReport {
  /// sup |log|F_n|^2 - log|F_{kappa n}|^2|.
  double u_sup = 0.0;
  /// sup |v_{kappa n}|.
  double v_sup = 0.0;
  /// sup |conjugate(v) - log|F_{kappa n}|^2| after both sides are centered.
  double conj_residual = 0.0;
  bool passes = false;
  /// v_sup within 5% of pi/2.
  bool marginal = false;
};

HelsonSzegoReport helson_szego_check(int n, const PerturbationSchedule& schedule, double kappa,
                                     const CircleGrid& grid);

/// How the p != 2 reduction rescales the perturbations before the p = 2
/// check is applied: by q/2 (the node display lambda_nj(q/2)) or by q (the
/// display used for G_n). Both are kept available.
enum class ReductionScaling { half_q, q };

/// helson_szego_check on the family with delta_nj multiplied by q/2 or q,
/// q = max(p, p/(p-1)).
HelsonSzegoReport reduced_helson_szego_check(int n, const PerturbationSchedule& schedule,
                                             double p, double kappa, const CircleGrid& grid,
                                             ReductionScaling scaling);

/// q = max(p, p/(p-1)) and the sharp perturbation threshold 1/(2q).
double conjugate_exponent_max(double p);
double perturbation_threshold(double p);

/// log |phi_n(e^{it})| for phi_n = F_{2n}(z)/(z^{2n+1} - rho^{2n+1}), F_{2n} the
/// generating polynomial of necessity_family(n, delta) with radius rho.
/// Evaluated as the ratio of the n differing factor moduli.
double phi_log_modulus(int n, double delta, double rho, double t);

/// Default phi_n radius: rho = max(1/2, 1 - kappa/(2n+1)) with kappa = 1.
double phi_radius(int n, double kappa = 1.0);

/// |(1 - e^{it})/(1 + e^{it})|^{2 delta} = |tan(t/2)|^{2 delta}.
double limit_weight(double t, double delta);

/// sup over grid angles t in [0.1, pi - 0.1] of
/// | |phi_n(e^{it})| - limit_weight(t, delta) |. Requires n >= 4.
double phi_limit_deviation(int n, double delta, const CircleGrid& grid, double kappa = 1.0);

/// Arc product (avg w)^{1/p} (avg w^{-1/(p-1)})^{(p-1)/p} of the limit weight
/// w = |tan(t/2)|^{2 delta p} over [eps, pi - eps], the arc [0, pi] with
/// eps-neighbourhoods of the zero and the pole removed. Computed by adaptive
/// Gauss-Kronrod quadrature on dyadic pieces.
double limit_weight_arc_product(double delta, double p, double eps);

/// min over grid angles of |e^{i(2n+1)t} - rho^{2n+1}|.
double divisor_guard(int n, double rho, const CircleGrid& grid);

}  // namespace mzroots
