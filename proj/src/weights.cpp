#include "mzroots/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/FFT>

#include "mzroots/errors.hpp"

namespace mzroots {

double rho_kappa(int n, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("rho_kappa: kappa must be positive");
  return std::max(0.5, 1.0 - kappa / (n + 1));
}

RadiusRule RadiusRule::rho(double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("RadiusRule::rho: kappa must be positive");
  return RadiusRule(kappa);
}

double RadiusRule::radius(int n) const {
  if (is_degree_ratio()) return static_cast<double>(n) / (n + 1);
  return rho_kappa(n, kappa_);
}

namespace {

// log |e^{ix} - r| = 1/2 log((1-r)^2 + 4 r sin^2(x/2)), no cancellation near x = 0.
double log_factor(double x, double r) {
  const double s = std::sin(0.5 * x);
  return 0.5 * std::log((1.0 - r) * (1.0 - r) + 4.0 * r * s * s);
}

// log(mean(exp(x))) over a circular window, shifted by the window maximum.
double log_mean_exp(const std::vector<double>& x, int start, int len) {
  const int m = static_cast<int>(x.size());
  double top = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < len; ++i) top = std::max(top, x[(start + i) % m]);
  double sum = 0.0;
  for (int i = 0; i < len; ++i) sum += std::exp(x[(start + i) % m] - top);
  return top + std::log(sum / len);
}

}  // namespace

WeightSamples generating_weight(const NodeSet& nodes, double radius, const CircleGrid& grid) {
  if (!(radius >= 0.0 && radius < 1.0))
    throw std::invalid_argument("generating_weight: radius must lie in [0, 1)");
  if (grid.size() < 8 * (nodes.n() + 1))
    throw GridTooCoarse("generating_weight: grid needs at least 8(n+1) points");
  WeightSamples out;
  out.grid = grid;
  out.log_values.assign(grid.size(), 0.0);
  if (radius == 0.0) return out;
  for (int m = 0; m < grid.size(); ++m) {
    const double theta = grid.angle(m);
    double acc = 0.0;
    for (double a : nodes.angles()) acc += log_factor(theta - a, radius);
    out.log_values[m] = acc;
  }
  return out;
}

WeightSamples generating_weight(const NodeSet& nodes, RadiusRule rule, const CircleGrid& grid) {
  return generating_weight(nodes, rule.radius(nodes.n()), grid);
}

ApReport ap_constant(const WeightSamples& weight, double p, ArcFamily family) {
  require_exponent(p);
  const int m = weight.grid.size();
  if (weight.log_values.size() != static_cast<std::size_t>(m))
    throw std::invalid_argument("ap_constant: sample count does not match the grid");
  for (double v : weight.log_values)
    if (!std::isfinite(v)) throw std::invalid_argument("ap_constant: non-finite log weight");
  if (family.center_subdivision < 1)
    throw std::invalid_argument("ap_constant: center_subdivision must be positive");

  std::vector<double> log_w(m), log_dual(m);
  for (int i = 0; i < m; ++i) {
    log_w[i] = p * weight.log_values[i];
    log_dual[i] = -p / (p - 1.0) * weight.log_values[i];
  }
  const int natural = m >= 8 ? static_cast<int>(std::floor(std::log2(m / 8.0))) : 0;
  const int finest = family.finest_level < 0 ? natural : family.finest_level;

  ApReport report;
  report.p = p;
  double best = -std::numeric_limits<double>::infinity();
  for (int level = 0; level <= finest; ++level) {
    const int len = std::max(1, static_cast<int>(std::lround(m / std::ldexp(1.0, level))));
    const int step = std::max(1, static_cast<int>(std::lround(static_cast<double>(len) /
                                                              family.center_subdivision)));
    double level_best = -std::numeric_limits<double>::infinity();
    int level_start = 0;
    for (int start = 0; start < m; start += step) {
      const double value = log_mean_exp(log_w, start, len) / p +
                           (p - 1.0) / p * log_mean_exp(log_dual, start, len);
      if (value > level_best) {
        level_best = value;
        level_start = start;
      }
    }
    const double length = len * weight.grid.step();
    report.profile.push_back({length, std::exp(level_best)});
    if (level_best > best) {
      best = level_best;
      report.argmax_center = reduce_angle(weight.grid.angle(level_start) +
                                          0.5 * (len - 1) * weight.grid.step());
      report.argmax_length = length;
    }
  }
  report.k_p = std::exp(best);
  return report;
}

std::vector<double> conjugate(std::span<const double> samples) {
  const int m = static_cast<int>(samples.size());
  if (m == 0 || m % 2 != 0) throw std::invalid_argument("conjugate: need an even sample count");
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> spec;
  Eigen::FFT<double> fft;
  fft.fwd(spec, in);
  spec[0] = 0.0;
  spec[m / 2] = 0.0;
  const cplx minus_i{0.0, -1.0};
  for (int k = 1; k < m / 2; ++k) spec[k] *= minus_i;
  for (int k = m / 2 + 1; k < m; ++k) spec[k] *= -minus_i;
  std::vector<cplx> back;
  fft.inv(back, spec);
  std::vector<double> out(m);
  for (int i = 0; i < m; ++i) out[i] = back[i].real();
  return out;
}

std::vector<double> v_kappa(int n, const PerturbationSchedule& schedule, double kappa,
                            const CircleGrid& grid) {
  if (!(schedule.amplitude() < 0.5))
    throw std::invalid_argument("v_kappa: schedule amplitude must be below 1/2");
  const auto offsets = schedule.offsets(n);
  const double rho = rho_kappa(n, kappa);
  const int size = n + 1;
  // A(x) = x + 2 atan2(rho sin x, 1 - rho cos x); the linear parts of
  // sum_j [A(theta - s_j - a_j) - A(-a_j)] - (n+1) theta cancel to -sum_j s_j.
  auto bend = [rho](double x) { return std::atan2(rho * std::sin(x), 1.0 - rho * std::cos(x)); };
  std::vector<double> shift(size), base(size);
  double linear = 0.0;
  double origin = 0.0;
  for (int j = 0; j < size; ++j) {
    base[j] = kTwoPi * j / size;
    shift[j] = kTwoPi * offsets[j] / size;
    linear -= shift[j];
    origin += bend(-base[j]);
  }
  std::vector<double> v(grid.size());
  for (int m = 0; m < grid.size(); ++m) {
    const double theta = grid.angle(m);
    double acc = 0.0;
    for (int j = 0; j < size; ++j) acc += bend(theta - shift[j] - base[j]);
    v[m] = linear + 2.0 * (acc - origin);
  }
  return v;
}

HelsonSzegoReport helson_szego_check(int n, const PerturbationSchedule& schedule, double kappa,
                                     const CircleGrid& grid) {
  const NodeSet nodes = perturbed_family(n, schedule);
  const auto damped = generating_weight(nodes, rho_kappa(n, kappa), grid);
  const auto plain = generating_weight(nodes, RadiusRule::degree_ratio(), grid);
  const auto v = v_kappa(n, schedule, kappa, grid);
  const auto conj_v = conjugate(v);

  const int m = grid.size();
  double mean_target = 0.0;
  for (double x : damped.log_values) mean_target += 2.0 * x;
  mean_target /= m;
  double mean_conj = 0.0;
  for (double x : conj_v) mean_conj += x;
  mean_conj /= m;

  HelsonSzegoReport r;
  for (int i = 0; i < m; ++i) {
    const double u = 2.0 * (plain.log_values[i] - damped.log_values[i]);
    r.u_sup = std::max(r.u_sup, std::abs(u));
    r.v_sup = std::max(r.v_sup, std::abs(v[i]));
    const double target = 2.0 * damped.log_values[i] - mean_target;
    r.conj_residual = std::max(r.conj_residual, std::abs(conj_v[i] - mean_conj - target));
  }
  r.passes = r.v_sup < 0.5 * kPi;
  r.marginal = r.v_sup >= 0.95 * 0.5 * kPi;
  return r;
}

double conjugate_exponent_max(double p) {
  require_exponent(p);
  return std::max(p, p / (p - 1.0));
}

double perturbation_threshold(double p) { return 1.0 / (2.0 * conjugate_exponent_max(p)); }

HelsonSzegoReport reduced_helson_szego_check(int n, const PerturbationSchedule& schedule,
                                             double p, double kappa, const CircleGrid& grid,
                                             ReductionScaling scaling) {
  const double q = conjugate_exponent_max(p);
  const double factor = scaling == ReductionScaling::half_q ? 0.5 * q : q;
  return helson_szego_check(n, schedule.scaled(n, factor), kappa, grid);
}

double phi_radius(int n, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("phi_radius: kappa must be positive");
  return std::max(0.5, 1.0 - kappa / (2 * n + 1));
}

double phi_log_modulus(int n, double delta, double rho, double t) {
  const double count = 2.0 * n + 1.0;
  double acc = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double moved = -kTwoPi * (j - 2.0 * delta) / count;
    const double fixed = -kTwoPi * j / count;
    acc += log_factor(t - moved, rho) - log_factor(t - fixed, rho);
  }
  return acc;
}

double limit_weight(double t, double delta) {
  const double ratio = std::abs(std::sin(0.5 * t)) / std::abs(std::cos(0.5 * t));
  return std::pow(ratio, 2.0 * delta);
}

double phi_limit_deviation(int n, double delta, const CircleGrid& grid, double kappa) {
  if (n < 4) throw std::invalid_argument("phi_limit_deviation: n must be >= 4");
  const double rho = phi_radius(n, kappa);
  double worst = 0.0;
  for (int m = 0; m < grid.size(); ++m) {
    const double t = grid.angle(m);
    if (t < 0.1 || t > kPi - 0.1) continue;
    const double phi = std::exp(phi_log_modulus(n, delta, rho, t));
    worst = std::max(worst, std::abs(phi - limit_weight(t, delta)));
  }
  return worst;
}

double limit_weight_arc_product(double delta, double p, double eps) {
  require_exponent(p);
  if (!(eps > 0.0 && eps < 0.5 * kPi))
    throw std::invalid_argument("limit_weight_arc_product: eps must lie in (0, pi/2)");
  const double power = 2.0 * delta * p;
  const double dual = -power / (p - 1.0);
  // tan(t/2)^a on [eps, pi/2] plus its mirror tan(t/2)^{-a} on the same
  // piece (t -> pi - t); dyadic breakpoints keep each piece well resolved.
  auto half_integral = [eps](double a) {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [a](double t) {
      const double tn = std::tan(0.5 * t);
      return std::pow(tn, a) + std::pow(tn, -a);
    };
    double total = 0.0;
    double lo = eps;
    while (lo < 0.5 * kPi) {
      const double hi = std::min(2.0 * lo, 0.5 * kPi);
      total += gauss_kronrod<double, 31>::integrate(f, lo, hi, 15, 1e-13);
      lo = hi;
    }
    return total;
  };
  const double length = kPi - 2.0 * eps;
  const double avg_w = half_integral(power) / length;
  const double avg_dual = half_integral(dual) / length;
  return std::pow(avg_w, 1.0 / p) * std::pow(avg_dual, (p - 1.0) / p);
}

double divisor_guard(int n, double rho, const CircleGrid& grid) {
  const double lift = std::pow(rho, 2 * n + 1);
  double worst = std::numeric_limits<double>::infinity();
  for (int m = 0; m < grid.size(); ++m) {
    const cplx z = std::polar(1.0, (2.0 * n + 1.0) * grid.angle(m));
    worst = std::min(worst, std::abs(z - lift));
  }
  return worst;
}

}  // namespace mzroots
