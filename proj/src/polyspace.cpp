#include "mzroots/polyspace.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

#include "mzroots/errors.hpp"

namespace mzroots {

void require_exponent(double p) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::invalid_argument("exponent p must satisfy 1 < p < inf");
}

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.assign(1, cplx{});
}

int Polynomial::degree() const {
  for (int k = degree_bound(); k > 0; --k)
    if (coeffs_[k] != cplx{}) return k;
  return 0;
}

cplx Polynomial::operator()(cplx z) const {
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx Polynomial::operator()(double angle) const { return (*this)(std::polar(1.0, angle)); }

double Polynomial::parseval_norm() const {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::norm(c);
  return std::sqrt(s);
}

CircleGrid::CircleGrid(int size) : size_(size) {
  if (size < 1) throw std::invalid_argument("CircleGrid: size must be positive");
}

CircleGrid CircleGrid::oversampled(int n, int oversampling) {
  if (n < 0 || oversampling < 1)
    throw std::invalid_argument("CircleGrid::oversampled: bad arguments");
  return CircleGrid(oversampling * (n + 1));
}

cplx eval(const Polynomial& poly, double angle) { return poly(angle); }

std::vector<cplx> eval_on_grid(const Polynomial& poly, const CircleGrid& grid) {
  const int terms = poly.degree() + 1;
  const int m = grid.size();
  if (m < terms) throw GridTooCoarse("eval_on_grid: grid has fewer points than coefficients");
  std::vector<cplx> padded(m, cplx{});
  std::copy_n(poly.coeffs().begin(), terms, padded.begin());
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::Unscaled);
  std::vector<cplx> values;
  fft.inv(values, padded);
  return values;
}

namespace {

double power_abs(cplx v, double p) {
  if (p == 2.0) return std::norm(v);
  if (p == 4.0) {
    const double s = std::norm(v);
    return s * s;
  }
  return std::pow(std::abs(v), p);
}

}  // namespace

double circle_norm(const Polynomial& poly, double p, const CircleGrid& grid) {
  require_exponent(p);
  const int deg = poly.degree();
  if (grid.size() < 2 * deg + 2)
    throw GridTooCoarse("circle_norm: grid size " + std::to_string(grid.size()) +
                        " below 2n+2 = " + std::to_string(2 * deg + 2));
  const auto values = eval_on_grid(poly, grid);
  double sum = 0.0;
  for (const auto& v : values) sum += power_abs(v, p);
  return sum / grid.size();
}

ConvergedNorm circle_norm_converged(const Polynomial& poly, double p, int oversampling) {
  constexpr int kMaxGrid = 1 << 20;
  const int deg = poly.degree();
  int m = std::max(oversampling * (deg + 1), 2 * deg + 2);
  ConvergedNorm out;
  out.value = circle_norm(poly, p, CircleGrid(m));
  out.grid_size = m;
  while (2 * m <= kMaxGrid) {
    m *= 2;
    const double next = circle_norm(poly, p, CircleGrid(m));
    const double scale = std::max(std::abs(next), std::numeric_limits<double>::min());
    const bool close = std::abs(next - out.value) <= 1e-8 * scale;
    out.value = next;
    out.grid_size = m;
    if (close) {
      out.converged = true;
      break;
    }
  }
  return out;
}

double sample_mean(const Polynomial& poly, const NodeSet& nodes, double p) {
  require_exponent(p);
  if (poly.degree() > nodes.n())
    throw DegreeMismatch("sample_mean: polynomial degree " + std::to_string(poly.degree()) +
                         " exceeds node degree " + std::to_string(nodes.n()));
  double sum = 0.0;
  for (double a : nodes.angles()) sum += power_abs(poly(a), p);
  return sum / static_cast<double>(nodes.size());
}

Polynomial random_poly(int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("random_poly: n must be nonnegative");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), 0x706f6c79u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cplx> coeffs(static_cast<std::size_t>(n) + 1);
  double s = 0.0;
  for (auto& c : coeffs) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    c = {re, im};
    s += std::norm(c);
  }
  const double scale = 1.0 / std::sqrt(s);
  for (auto& c : coeffs) c *= scale;
  return Polynomial(std::move(coeffs));
}

}  // namespace mzroots
