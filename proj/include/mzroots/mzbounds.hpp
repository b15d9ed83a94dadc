#pragma once

// Two-sided Marcinkiewicz-Zygmund constants of a single node set.
//
// For a node set Z(n) and exponent p write mean(P) = (1/(n+1)) sum |P(z_nj)|^p
// and norm(P) = int |P|^p dtheta/2pi. The frame bounds are
//   lower_frame = inf_P mean/norm,  upper_frame = sup_P mean/norm,
// and the MZ constant is the smallest C with C^{-1} mean <= norm <= C mean,
// i.e. c_p = max(upper_frame, 1/lower_frame) >= 1.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include <Eigen/Dense>

#include "mzroots/nodes.hpp"
#include "mzroots/polyspace.hpp"

namespace mzroots {

enum class MzMethod { svd, probe };

std::string_view to_string(MzMethod method);

struct MZReport {
  int n = 0;
  double p = 2.0;
  double lower_frame = 1.0;
  double upper_frame = 1.0;
  double c_p = 1.0;
  std::optional<double> sigma_min;
  std::optional<double> sigma_max;
  MzMethod method = MzMethod::svd;

  /// For method == probe the frame values are certified bounds only:
  /// lower_frame from above, upper_frame and c_p from below.
  bool is_lower_bound() const { return method == MzMethod::probe; }
};

/// A_jk = z_nj^k / sqrt(n+1), so that mean = |A c|^2 and norm = |c|^2 at p = 2.
Eigen::MatrixXcd sampling_matrix(const NodeSet& nodes);

inline constexpr int kDenseSvdMaxDegree = 1024;
inline constexpr double kSingularThreshold = 1e-13;

/// Exact p = 2 constants from the extremal singular values of the sampling
/// matrix. Throws SingularError if sigma_min < 1e-13 and
/// std::invalid_argument above the dense size cap.
MZReport mz_constant_p2(const NodeSet& nodes, int max_degree = kDenseSvdMaxDegree);

struct ProbeOptions {
  int budget = 256;
  std::uint64_t seed = 0;
  int refine_rounds = 50;
  int oversampling = kDefaultOversampling;
  /// Adds the extremal right singular vectors as probes when p == 2.
  bool singular_vector_probes = true;
};

/// Certified lower bound on c_p from random and structured probe
/// polynomials, each refined by seeded coordinate ascent. Probes for a larger
/// budget extend those for a smaller one, so the bound is monotone in budget.
MZReport mz_constant_probe(const NodeSet& nodes, double p, const ProbeOptions& options);
MZReport mz_constant_probe(const NodeSet& nodes, double p, int budget, std::uint64_t seed);

/// Degree <= n least-squares interpolant through (z_nj, samples_j).
/// Throws SingularError when the sampling matrix is numerically singular.
Polynomial reconstruct_ls(std::span<const cplx> samples, const NodeSet& nodes);

}  // namespace mzroots
