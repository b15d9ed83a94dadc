#include "mzroots/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "mzroots/errors.hpp"

namespace mzroots {

double reduce_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round up to exactly 2 pi
  if (r >= kTwoPi) r = 0.0;
  return r;
}

namespace {

double chord(double gap) { return 2.0 * std::sin(0.5 * gap); }

// Smallest angular gap between circularly adjacent points.
double min_gap(const std::vector<double>& angles) {
  if (angles.size() < 2) return kTwoPi;
  std::vector<double> sorted = angles;
  std::sort(sorted.begin(), sorted.end());
  double gap = sorted.front() + kTwoPi - sorted.back();
  for (std::size_t k = 1; k < sorted.size(); ++k) gap = std::min(gap, sorted[k] - sorted[k - 1]);
  return gap;
}

}  // namespace

NodeSet::NodeSet(int n, std::vector<double> angles) : n_(n), angles_(std::move(angles)) {
  if (n < 0) throw std::invalid_argument("NodeSet: n must be nonnegative");
  if (angles_.size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("NodeSet: expected n+1 angles");
  for (double& a : angles_) {
    if (!std::isfinite(a)) throw std::invalid_argument("NodeSet: non-finite angle");
    a = reduce_angle(a);
  }
  if (angles_.size() > 1 && chord(min_gap(angles_)) < 1e-12 / (n + 1))
    throw CollisionError("NodeSet: two nodes coincide (n = " + std::to_string(n) + ")");
}

std::vector<cplx> NodeSet::points() const {
  std::vector<cplx> out;
  out.reserve(angles_.size());
  for (double a : angles_) out.push_back(std::polar(1.0, a));
  return out;
}

std::string_view to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::constant: return "constant";
    case ScheduleKind::alternating: return "alternating";
    case ScheduleKind::random: return "random";
    case ScheduleKind::one_sided_necessity: return "one-sided-necessity";
    case ScheduleKind::explicit_values: return "explicit";
  }
  return "unknown";
}

ScheduleKind parse_schedule_kind(std::string_view name) {
  for (auto kind : {ScheduleKind::constant, ScheduleKind::alternating, ScheduleKind::random,
                    ScheduleKind::one_sided_necessity, ScheduleKind::explicit_values}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

PerturbationSchedule PerturbationSchedule::constant(double delta) {
  return {ScheduleKind::constant, delta, 0, {}};
}
PerturbationSchedule PerturbationSchedule::alternating(double delta) {
  return {ScheduleKind::alternating, delta, 0, {}};
}
PerturbationSchedule PerturbationSchedule::random(double delta, std::uint64_t seed) {
  return {ScheduleKind::random, delta, seed, {}};
}
PerturbationSchedule PerturbationSchedule::one_sided_necessity(double delta) {
  return {ScheduleKind::one_sided_necessity, delta, 0, {}};
}
PerturbationSchedule PerturbationSchedule::explicit_offsets(std::vector<double> values) {
  double amp = 0.0;
  for (double v : values) amp = std::max(amp, std::abs(v));
  return {ScheduleKind::explicit_values, amp, 0, std::move(values)};
}

double PerturbationSchedule::amplitude() const {
  if (kind != ScheduleKind::explicit_values) return delta;
  double amp = 0.0;
  for (double v : explicit_values) amp = std::max(amp, std::abs(v));
  return amp;
}

void PerturbationSchedule::validate() const {
  if (kind == ScheduleKind::explicit_values) {
    for (double v : explicit_values)
      if (!std::isfinite(v)) throw std::invalid_argument("schedule: non-finite explicit value");
    return;
  }
  if (!(delta >= 0.0 && delta < 0.5))
    throw std::invalid_argument("schedule: delta must lie in [0, 1/2)");
}

std::vector<double> PerturbationSchedule::offsets(int n) const {
  if (n < 0) throw std::invalid_argument("schedule: n must be nonnegative");
  validate();
  const auto count = static_cast<std::size_t>(n) + 1;
  std::vector<double> out(count, 0.0);
  switch (kind) {
    case ScheduleKind::constant:
      std::fill(out.begin(), out.end(), delta);
      break;
    case ScheduleKind::alternating:
      for (std::size_t j = 0; j < count; ++j) out[j] = (j % 2 == 0) ? delta : -delta;
      break;
    case ScheduleKind::random: {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(n)};
      std::mt19937_64 rng(seq);
      std::uniform_real_distribution<double> dist(-delta, delta);
      for (auto& v : out) v = dist(rng);
      break;
    }
    case ScheduleKind::one_sided_necessity:
      for (std::size_t j = 0; j < count; ++j)
        out[j] = (j <= static_cast<std::size_t>(n) / 2) ? -delta : delta;
      break;
    case ScheduleKind::explicit_values:
      if (explicit_values.size() != count)
        throw std::invalid_argument("schedule: explicit values must have n+1 entries");
      out = explicit_values;
      break;
  }
  return out;
}

PerturbationSchedule PerturbationSchedule::scaled(int n, double factor) const {
  auto values = offsets(n);
  for (double& v : values) v *= factor;
  return explicit_offsets(std::move(values));
}

NodeSet roots_of_unity(int n) {
  if (n < 0) throw std::invalid_argument("roots_of_unity: n must be nonnegative");
  std::vector<double> angles(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) angles[j] = kTwoPi * j / (n + 1);
  return NodeSet(n, std::move(angles));
}

NodeSet perturbed_family(int n, const PerturbationSchedule& schedule) {
  const auto offsets = schedule.offsets(n);
  std::vector<double> angles(offsets.size());
  for (int j = 0; j <= n; ++j) angles[j] = kTwoPi * (j + offsets[j]) / (n + 1);
  return NodeSet(n, std::move(angles));
}

NodeSet necessity_family(int n, double delta) {
  if (n < 1) throw std::invalid_argument("necessity_family: n must be >= 1");
  if (!(delta >= 0.0 && delta < 0.5))
    throw std::invalid_argument("necessity_family: delta must lie in [0, 1/2)");
  const int count = 2 * n + 1;
  std::vector<double> angles(count);
  for (int j = 0; j <= n; ++j) angles[j] = kTwoPi * j / count;
  // second branch e^{-2 pi i (j - 2 delta)/(2n+1)}, stored at index 2n+1-j
  for (int j = 1; j <= n; ++j) angles[count - j] = -kTwoPi * (j - 2.0 * delta) / count;
  return NodeSet(2 * n, std::move(angles));
}

double separation(const NodeSet& nodes) {
  if (nodes.size() < 2) return std::numeric_limits<double>::infinity();
  return (nodes.n() + 1) * chord(min_gap(nodes.angles()));
}

}  // namespace mzroots
