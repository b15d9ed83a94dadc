#include "mzroots/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mzroots/errors.hpp"
#include "mzroots/serialize.hpp"

namespace mzroots {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs body(i) for i in [0, count) on a small pool. Results are written by
// index, so the output order never depends on scheduling.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << body;
}

MZReport mz_report(const NodeSet& nodes, double p, std::uint64_t seed, int budget) {
  if (p == 2.0) return mz_constant_p2(nodes);
  ProbeOptions options;
  options.budget = budget;
  options.seed = seed;
  return mz_constant_probe(nodes, p, options);
}

double ratio(double a, double b) { return b > 0.0 ? a / b : kNaN; }

}  // namespace

std::vector<double> default_deltas(double threshold) {
  // Rounded so the printed grid reads 0.15 and 0.115 rather than their
  // binary neighbours.
  auto tidy = [](double x) { return std::round(x * 1e9) / 1e9; };
  std::vector<double> out;
  for (int k = 1; k / 20.0 < threshold - 0.01 - 1e-12; ++k) out.push_back(k / 20.0);
  out.push_back(tidy(threshold - 0.01));
  out.push_back(tidy(threshold));
  out.push_back(tidy(threshold + 0.02));
  return out;
}

std::vector<double> SweepConfig::deltas() const {
  return delta_list.empty() ? default_deltas(threshold()) : delta_list;
}

void SweepConfig::validate() const {
  require_exponent(p);
  if (n_list.empty()) throw std::invalid_argument("sweep: empty n list");
  for (int n : n_list)
    if (n < 1) throw std::invalid_argument("sweep: n values must be >= 1");
  for (double d : deltas())
    if (!(d >= 0.0 && d < 0.5)) throw std::invalid_argument("sweep: delta values must lie in [0, 1/2)");
  if (schedule_kind == ScheduleKind::explicit_values)
    throw std::invalid_argument("sweep: explicit schedules cannot be swept");
  if (!(kappa > 0.0)) throw std::invalid_argument("sweep: kappa must be positive");
  if (oversampling < 8) throw std::invalid_argument("sweep: grid oversampling must be >= 8");
  if (probe_budget < 1) throw std::invalid_argument("sweep: probe budget must be >= 1");
}

bool SweepResult::any_error() const {
  return std::any_of(cells.begin(), cells.end(), [](const auto& c) { return !c.error.empty(); });
}

SweepResult run_sweep(const SweepConfig& config) {
  config.validate();
  const auto deltas = config.deltas();
  SweepResult result;
  result.config = config;
  for (int n : config.n_list)
    for (double d : deltas) result.cells.push_back(SweepCell{n, d, {}, {}, {}, 0, {}});

  parallel_for(result.cells.size(), config.workers, [&](std::size_t i) {
    auto& cell = result.cells[i];
    try {
      PerturbationSchedule schedule;
      schedule.kind = config.schedule_kind;
      schedule.delta = cell.delta;
      schedule.seed = config.seed;
      const NodeSet nodes = perturbed_family(cell.n, schedule);
      cell.mz = mz_report(nodes, config.p, config.seed, config.probe_budget);
      const auto grid = CircleGrid::oversampled(cell.n, config.oversampling);
      cell.grid_size = grid.size();
      cell.ap = ap_constant(generating_weight(nodes, RadiusRule::degree_ratio(), grid), config.p);
      if (0.5 * config.q() * cell.delta < 0.5)
        cell.hs = reduced_helson_szego_check(cell.n, schedule, config.p, config.kappa, grid,
                                             ReductionScaling::half_q);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  });

  std::vector<int> ns = config.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.size() >= 2) {
    const int prev = ns[ns.size() - 2];
    const int last = ns.back();
    for (double d : deltas) {
      GrowthDiagnostic g{d, prev, last, kNaN, kNaN};
      const SweepCell* a = nullptr;
      const SweepCell* b = nullptr;
      for (const auto& c : result.cells) {
        if (c.delta != d) continue;
        if (c.n == prev) a = &c;
        if (c.n == last) b = &c;
      }
      if (a && b && a->mz && b->mz) g.c_p_ratio = ratio(b->mz->c_p, a->mz->c_p);
      if (a && b && a->ap && b->ap) g.k_p_ratio = ratio(b->ap->k_p, a->ap->k_p);
      result.growth.push_back(g);
    }
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  const auto& cfg = result.config;
  std::ostringstream out;
  out << "p,q,threshold,n,delta,schedule_kind,lower_frame,upper_frame,c_p,sigma_min,sigma_max,"
         "method,k_p,argmax_center,argmax_length,grid_M,hs_v_sup,hs_passes,error\n";
  const std::string kind(to_string(cfg.schedule_kind));
  for (const auto& c : result.cells) {
    std::vector<std::string> row{format_number(cfg.p),     format_number(cfg.q()),
                                 format_number(cfg.threshold()), std::to_string(c.n),
                                 format_number(c.delta),   kind};
    if (c.mz) {
      row.push_back(format_number(c.mz->lower_frame));
      row.push_back(format_number(c.mz->upper_frame));
      row.push_back(format_number(c.mz->c_p));
      row.push_back(c.mz->sigma_min ? format_number(*c.mz->sigma_min) : "");
      row.push_back(c.mz->sigma_max ? format_number(*c.mz->sigma_max) : "");
      row.push_back(std::string(to_string(c.mz->method)));
    } else {
      row.insert(row.end(), 6, "");
    }
    if (c.ap) {
      row.push_back(format_number(c.ap->k_p));
      row.push_back(format_number(c.ap->argmax_center));
      row.push_back(format_number(c.ap->argmax_length));
    } else {
      row.insert(row.end(), 3, "");
    }
    row.push_back(c.grid_size ? std::to_string(c.grid_size) : "");
    row.push_back(c.hs ? format_number(c.hs->v_sup) : "");
    row.push_back(c.hs ? (c.hs->passes ? "1" : "0") : "");
    row.push_back(c.error);
    out << join_csv(row) << '\n';
  }
  return out.str();
}

std::string sweep_summary_json(const SweepResult& result) {
  using nlohmann::json;
  const auto& cfg = result.config;
  json growth = json::array();
  for (const auto& g : result.growth)
    growth.push_back({{"delta", g.delta},
                      {"n_prev", g.n_prev},
                      {"n_last", g.n_last},
                      {"c_p_ratio", g.c_p_ratio},
                      {"k_p_ratio", g.k_p_ratio},
                      {"below_threshold", g.delta < cfg.threshold()}});
  const auto errors = std::count_if(result.cells.begin(), result.cells.end(),
                                    [](const auto& c) { return !c.error.empty(); });
  json doc{{"schema", kSchemaVersion},
           {"kind", "sweep"},
           {"generated_at", timestamp()},
           {"config",
            {{"p", cfg.p},
             {"q", cfg.q()},
             {"threshold", cfg.threshold()},
             {"n_list", cfg.n_list},
             {"delta_list", cfg.deltas()},
             {"schedule_kind", std::string(to_string(cfg.schedule_kind))},
             {"kappa", cfg.kappa},
             {"grid_oversample", cfg.oversampling},
             {"seed", cfg.seed},
             {"probe_budget", cfg.probe_budget}}},
           {"cells", result.cells.size()},
           {"errors", errors},
           {"growth", growth}};
  return doc.dump(2) + "\n";
}

void write_sweep_report(const SweepResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "sweep.csv", sweep_csv(result));
  write_file(dir / "sweep_summary.json", sweep_summary_json(result));
}

void NecessityConfig::validate() const {
  require_exponent(p);
  if (n_list.empty()) throw std::invalid_argument("necessity: empty n list");
  for (int n : n_list)
    if (n < 1) throw std::invalid_argument("necessity: n values must be >= 1");
  if (!(delta > 0.0 && delta < 0.5))
    throw std::invalid_argument("necessity: delta must lie in (0, 1/2)");
  if (delta > perturbation_threshold(p) + 0.05)
    throw std::invalid_argument("necessity: delta too far above the threshold 1/(2q)");
  if (!(phi_kappa > 0.0)) throw std::invalid_argument("necessity: phi kappa must be positive");
  if (oversampling < 8) throw std::invalid_argument("necessity: grid oversampling must be >= 8");
}

NecessityResult run_necessity(const NecessityConfig& config) {
  config.validate();
  NecessityResult result;
  result.config = config;
  result.rows.resize(config.n_list.size());
  parallel_for(config.n_list.size(), config.workers, [&](std::size_t i) {
    auto& row = result.rows[i];
    row.n = config.n_list[i];
    const NodeSet nodes = necessity_family(row.n, config.delta);
    row.mz = mz_report(nodes, config.p, config.seed, config.probe_budget);
    const auto grid = CircleGrid::oversampled(nodes.n(), config.oversampling);
    row.grid_size = grid.size();
    row.ap = ap_constant(generating_weight(nodes, RadiusRule::degree_ratio(), grid), config.p);
    const double rho = phi_radius(row.n, config.phi_kappa);
    row.phi_deviation = row.n >= 4 ? phi_limit_deviation(row.n, config.delta, grid, config.phi_kappa)
                                   : kNaN;
    row.divisor_guard = divisor_guard(row.n, rho, grid);
    row.divisor_guard_exact = 1.0 - std::pow(rho, 2 * row.n + 1);
  });
  return result;
}

std::string necessity_csv(const NecessityResult& result) {
  const auto& cfg = result.config;
  std::ostringstream out;
  out << "n,degree,delta,p,lower_frame,upper_frame,c_p,sigma_min,sigma_max,method,k_p,"
         "argmax_center,argmax_length,grid_M,phi_deviation,divisor_guard,divisor_guard_exact\n";
  for (const auto& r : result.rows) {
    out << join_csv({std::to_string(r.n), std::to_string(2 * r.n), format_number(cfg.delta),
                     format_number(cfg.p), format_number(r.mz.lower_frame),
                     format_number(r.mz.upper_frame), format_number(r.mz.c_p),
                     r.mz.sigma_min ? format_number(*r.mz.sigma_min) : "",
                     r.mz.sigma_max ? format_number(*r.mz.sigma_max) : "",
                     std::string(to_string(r.mz.method)), format_number(r.ap.k_p),
                     format_number(r.ap.argmax_center), format_number(r.ap.argmax_length),
                     std::to_string(r.grid_size), format_number(r.phi_deviation),
                     format_number(r.divisor_guard), format_number(r.divisor_guard_exact)})
        << '\n';
  }
  return out.str();
}

std::string necessity_summary_json(const NecessityResult& result) {
  using nlohmann::json;
  const auto& cfg = result.config;
  json steps = json::array();
  for (std::size_t i = 1; i < result.rows.size(); ++i) {
    const auto& a = result.rows[i - 1];
    const auto& b = result.rows[i];
    steps.push_back({{"n_prev", a.n},
                     {"n", b.n},
                     {"c_p_ratio", ratio(b.mz.c_p, a.mz.c_p)},
                     {"k_p_ratio", ratio(b.ap.k_p, a.ap.k_p)}});
  }
  json doc{{"schema", kSchemaVersion},
           {"kind", "necessity"},
           {"generated_at", timestamp()},
           {"config",
            {{"p", cfg.p},
             {"q", conjugate_exponent_max(cfg.p)},
             {"threshold", perturbation_threshold(cfg.p)},
             {"delta", cfg.delta},
             {"n_list", cfg.n_list},
             {"phi_kappa", cfg.phi_kappa},
             {"grid_oversample", cfg.oversampling},
             {"seed", cfg.seed},
             {"probe_budget", cfg.probe_budget}}},
           {"growth", steps}};
  return doc.dump(2) + "\n";
}

void write_necessity_report(const NecessityResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "necessity.csv", necessity_csv(result));
  write_file(dir / "necessity_summary.json", necessity_summary_json(result));
}

}  // namespace mzroots
