#pragma once

// Triangular node families on the unit circle.
//
// A NodeSet is one row Z(n) = {z_nj}, j = 0..n, of a triangular family. The
// points are stored as angles so they sit exactly on the circle; index j is
// kept in family order (it pairs z_nj with the root of unity w_nj), never
// sorted by angle.

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mzroots {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Reduces an angle to [0, 2pi).
double reduce_angle(double angle);

class NodeSet {
 public:
  /// Validates size (n+1 angles) and pairwise distinctness; throws
  /// CollisionError when two points are closer than 1e-12/(n+1) in chordal
  /// distance. Angles are reduced to [0, 2pi).
  NodeSet(int n, std::vector<double> angles);

  int n() const { return n_; }
  std::size_t size() const { return angles_.size(); }
  const std::vector<double>& angles() const { return angles_; }
  double angle(std::size_t j) const { return angles_[j]; }
  cplx point(std::size_t j) const { return std::polar(1.0, angles_[j]); }
  std::vector<cplx> points() const;

  friend bool operator==(const NodeSet&, const NodeSet&) = default;

 private:
  int n_;
  std::vector<double> angles_;
};

enum class ScheduleKind { constant, alternating, random, one_sided_necessity, explicit_values };

std::string_view to_string(ScheduleKind kind);
/// Accepts the names printed by to_string ("constant", "alternating",
/// "random", "one-sided-necessity", "explicit").
ScheduleKind parse_schedule_kind(std::string_view name);

/// Rule producing the relative perturbations delta_nj of a triangular family;
/// node j of row n is moved to 2pi (j + delta_nj)/(n+1).
struct PerturbationSchedule {
  ScheduleKind kind = ScheduleKind::constant;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> explicit_values;

  static PerturbationSchedule constant(double delta);
  static PerturbationSchedule alternating(double delta);
  static PerturbationSchedule random(double delta, std::uint64_t seed);
  static PerturbationSchedule one_sided_necessity(double delta);
  static PerturbationSchedule explicit_offsets(std::vector<double> values);

  /// Largest |delta_nj| the schedule can produce.
  double amplitude() const;

  /// Throws std::invalid_argument unless the schedule is usable: generated
  /// kinds need 0 <= delta < 1/2, explicit values must be finite.
  void validate() const;

  /// delta_nj for j = 0..n. Deterministic in (n, seed) for the random kind.
  std::vector<double> offsets(int n) const;

  /// The same schedule with every delta_nj multiplied by `factor`, returned
  /// as explicit offsets for row n.
  PerturbationSchedule scaled(int n, double factor) const;

  friend bool operator==(const PerturbationSchedule&, const PerturbationSchedule&) = default;
};

NodeSet roots_of_unity(int n);

/// Angles 2pi (j + delta_nj)/(n+1), reduced mod 2pi, in index order.
NodeSet perturbed_family(int n, const PerturbationSchedule& schedule);

/// The 2n+1 point set {e^{2 pi i j/(2n+1)}, j = 0..n} together with
/// {e^{-2 pi i (j - 2 delta)/(2n+1)}, j = 1..n}. The returned NodeSet has
/// degree parameter 2n. Requires n >= 1 and 0 <= delta < 1/2.
NodeSet necessity_family(int n, double delta);

/// (n+1) times the minimal chordal distance between two distinct nodes.
double separation(const NodeSet& nodes);

}  // namespace mzroots
