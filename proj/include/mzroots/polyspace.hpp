#pragma once

// Holomorphic polynomials of degree <= n on the unit circle: evaluation,
// boundary L^p means by equispaced quadrature, and discrete sampling means
// over a NodeSet.

#include <cstdint>
#include <span>
#include <vector>

#include "mzroots/nodes.hpp"

namespace mzroots {

/// Throws std::invalid_argument unless 1 < p < inf.
void require_exponent(double p);

class Polynomial {
 public:
  Polynomial() : coeffs_(1, cplx{}) {}
  /// Coefficients c_0..c_n; an empty list is the zero polynomial of degree 0.
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree_bound() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// Index of the highest nonzero coefficient (0 for the zero polynomial).
  int degree() const;
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  std::vector<cplx>& coeffs() { return coeffs_; }

  /// Horner evaluation at e^{i angle}.
  cplx operator()(double angle) const;
  cplx operator()(cplx z) const;

  /// sqrt(sum |c_k|^2), the boundary L^2 norm by Parseval.
  double parseval_norm() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<cplx> coeffs_;
};

/// Equispaced angles 2 pi m / M, m = 0..M-1. The rectangle rule on this grid
/// integrates every trigonometric polynomial of degree < M exactly.
class CircleGrid {
 public:
  explicit CircleGrid(int size);

  /// Grid with oversampling * (n+1) points.
  static CircleGrid oversampled(int n, int oversampling);

  int size() const { return size_; }
  double angle(int m) const { return kTwoPi * m / size_; }
  double step() const { return kTwoPi / size_; }

  friend bool operator==(const CircleGrid&, const CircleGrid&) = default;

 private:
  int size_;
};

inline constexpr int kDefaultOversampling = 32;

cplx eval(const Polynomial& poly, double angle);

/// P(e^{i theta_m}) for every grid angle, by one inverse FFT of the zero
/// padded coefficients. Requires M >= n+1.
std::vector<cplx> eval_on_grid(const Polynomial& poly, const CircleGrid& grid);

/// (1/M) sum_m |P(e^{i theta_m})|^p, the rectangle-rule value of the p-th
/// power mean. Throws GridTooCoarse if M < 2 deg + 2.
double circle_norm(const Polynomial& poly, double p, const CircleGrid& grid);

struct ConvergedNorm {
  double value = 0.0;
  int grid_size = 0;
  bool converged = false;
};

/// circle_norm with grid doubling from oversampling * (n+1) points until two
/// successive values agree to a relative 1e-8, capped at 2^20 points.
ConvergedNorm circle_norm_converged(const Polynomial& poly, double p,
                                    int oversampling = kDefaultOversampling);

/// (1/(n+1)) sum_j |P(z_nj)|^p. Throws DegreeMismatch when deg P > nodes.n().
double sample_mean(const Polynomial& poly, const NodeSet& nodes, double p);

/// Standard complex Gaussian coefficients normalized to unit Parseval norm,
/// deterministic in (n, seed).
Polynomial random_poly(int n, std::uint64_t seed);

}  // namespace mzroots
