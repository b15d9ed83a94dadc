#pragma once

// Experiment drivers: threshold sweeps over (n, delta) cells and the
// necessity-family blow-up runs. Cells are computed in a worker pool and
// collected in (n, delta) order, so the emitted rows do not depend on
// scheduling.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mzroots/mzbounds.hpp"
#include "mzroots/nodes.hpp"
#include "mzroots/weights.hpp"

namespace mzroots {

struct SweepConfig {
  double p = 2.0;
  std::vector<int> n_list{16, 32, 64, 128, 256};
  /// Empty selects default_deltas(threshold()).
  std::vector<double> delta_list;
  ScheduleKind schedule_kind = ScheduleKind::one_sided_necessity;
  /// Damping for the Helson-Szego column (reduced by q/2 when p != 2).
  double kappa = 100.0;
  int oversampling = kDefaultOversampling;
  std::uint64_t seed = 0;
  int probe_budget = 32;
  /// 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;

  double q() const { return conjugate_exponent_max(p); }
  double threshold() const { return perturbation_threshold(p); }
  std::vector<double> deltas() const;
  void validate() const;
};

/// 0.05, 0.10, ... below threshold - 0.01, then threshold - 0.01, threshold
/// and threshold + 0.02.
std::vector<double> default_deltas(double threshold);

struct SweepCell {
  int n = 0;
  double delta = 0.0;
  std::optional<MZReport> mz;
  std::optional<ApReport> ap;
  /// Empty when the q/2-scaled perturbation reaches 1/2.
  std::optional<HelsonSzegoReport> hs;
  int grid_size = 0;
  std::string error;
};

/// Growth diagnostic per delta: ratio of the constants at the two largest n.
struct GrowthDiagnostic {
  double delta = 0.0;
  int n_prev = 0;
  int n_last = 0;
  double c_p_ratio = 0.0;
  double k_p_ratio = 0.0;
};

struct SweepResult {
  SweepConfig config;
  std::vector<SweepCell> cells;
  std::vector<GrowthDiagnostic> growth;
  bool any_error() const;
};

SweepResult run_sweep(const SweepConfig& config);

std::string sweep_csv(const SweepResult& result);
std::string sweep_summary_json(const SweepResult& result);

/// Writes sweep.csv and sweep_summary.json into `dir` (created if needed).
void write_sweep_report(const SweepResult& result, const std::filesystem::path& dir);

struct NecessityConfig {
  std::vector<int> n_list{16, 32, 64, 128, 256};
  double delta = 0.25;
  double p = 2.0;
  /// kappa of the phi_n radius max(1/2, 1 - kappa/(2n+1)).
  double phi_kappa = 1.0;
  int oversampling = kDefaultOversampling;
  std::uint64_t seed = 0;
  int probe_budget = 32;
  unsigned workers = 0;

  void validate() const;
};

struct NecessityRow {
  int n = 0;
  MZReport mz;
  ApReport ap;
  int grid_size = 0;
  /// NaN when n < 4.
  double phi_deviation = 0.0;
  double divisor_guard = 0.0;
  /// 1 - rho^{2n+1}, the exact minimum of the divisor on the circle.
  double divisor_guard_exact = 0.0;
};

struct NecessityResult {
  NecessityConfig config;
  std::vector<NecessityRow> rows;
};

NecessityResult run_necessity(const NecessityConfig& config);

std::string necessity_csv(const NecessityResult& result);
std::string necessity_summary_json(const NecessityResult& result);
void write_necessity_report(const NecessityResult& result, const std::filesystem::path& dir);

}  // namespace mzroots
