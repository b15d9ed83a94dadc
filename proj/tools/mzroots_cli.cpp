// mzroots: command line driver for node families, MZ constants, A_p
// estimates, threshold sweeps and the damped-product checks.
//
// Exit codes: 0 success, 1 bad input or failed computation, 2 if any sweep
// cell recorded an error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mzroots/errors.hpp"
#include "mzroots/experiments.hpp"
#include "mzroots/lemmas.hpp"
#include "mzroots/mzbounds.hpp"
#include "mzroots/serialize.hpp"
#include "mzroots/weights.hpp"

using namespace mzroots;
using nlohmann::json;

namespace {

enum class Format { csv, json };

struct Common {
  double p = 2.0;
  double delta = 0.2;
  std::string schedule = "alternating";
  double kappa = 100.0;
  std::vector<int> n{64};
  int oversample = kDefaultOversampling;
  std::uint64_t seed = 0;
  std::string out;
  Format format = Format::csv;
};

PerturbationSchedule make_schedule(const Common& c) {
  PerturbationSchedule s;
  s.kind = parse_schedule_kind(c.schedule);
  if (s.kind == ScheduleKind::explicit_values)
    throw std::invalid_argument("explicit schedules are not available from the command line");
  s.delta = c.delta;
  s.seed = c.seed;
  s.validate();
  return s;
}

void emit(const Common& c, const std::string& file, const std::string& body) {
  if (c.out.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(c.out);
  const auto path = std::filesystem::path(c.out) / file;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << body;
  std::cerr << "wrote " << path.string() << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void add_family_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--n", c.n, "degree(s)")->delimiter(',');
  cmd->add_option("--delta", c.delta, "perturbation amplitude")->check(CLI::Range(0.0, 0.5));
  cmd->add_option("--schedule", c.schedule, "constant|alternating|random|one-sided-necessity");
  cmd->add_option("--seed", c.seed, "seed for random schedules and probes");
}

void add_output_flags(CLI::App* cmd, Common& c) {
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  cmd->add_option("--format", c.format, "csv or json")->transform(CLI::CheckedTransformer(formats));
  cmd->add_option("--out", c.out, "write into DIR instead of stdout");
}

int cmd_nodes(const Common& c) {
  const auto schedule = make_schedule(c);
  json all = json::array();
  std::string csv = "n,j,angle,offset\n";
  for (int n : c.n) {
    const auto z = perturbed_family(n, schedule);
    const auto off = schedule.offsets(n);
    for (int j = 0; j <= n; ++j)
      csv += join_csv({std::to_string(n), std::to_string(j), format_number(z.angle(j)), format_number(off[j])}) +
             "\n";
    json j = z;
    j["schedule"] = schedule;
    j["separation"] = separation(z);
    all.push_back(j);
  }
  if (c.format == Format::json)
    emit(c, "nodes.json", dump({{"schema", kSchemaVersion}, {"families", all}}));
  else
    emit(c, "nodes.csv", csv);
  return 0;
}

int cmd_mzconst(const Common& c, const std::string& method, int budget) {
  const auto schedule = make_schedule(c);
  std::string csv = mz_csv_header() + "\n";
  json all = json::array();
  for (int n : c.n) {
    const auto z = perturbed_family(n, schedule);
    const bool svd = method == "svd" || (method == "auto" && c.p == 2.0);
    if (svd && c.p != 2.0) throw std::invalid_argument("the svd method is exact only for p = 2");
    ProbeOptions opt;
    opt.budget = budget;
    opt.seed = c.seed;
    opt.oversampling = c.oversample;
    const auto r = svd ? mz_constant_p2(z) : mz_constant_probe(z, c.p, opt);
    csv += mz_csv_row(r, c.delta, to_string(schedule.kind)) + "\n";
    all.push_back(r);
  }
  if (c.format == Format::json)
    emit(c, "mzconst.json", dump({{"schema", kSchemaVersion}, {"schedule", schedule}, {"reports", all}}));
  else
    emit(c, "mzconst.csv", csv);
  return 0;
}

int cmd_apconst(const Common& c, bool damped, bool weight_samples) {
  const auto schedule = make_schedule(c);
  const auto rule = damped ? RadiusRule::rho(c.kappa) : RadiusRule::degree_ratio();
  std::string csv = ap_csv_header() + "\n";
  json all = json::array();
  for (int n : c.n) {
    const auto z = perturbed_family(n, schedule);
    const auto grid = CircleGrid::oversampled(n, c.oversample);
    const auto w = generating_weight(z, rule, grid);
    const auto r = ap_constant(w, c.p);
    csv += ap_csv_row(r, n, c.delta, grid.size()) + "\n";
    json j = r;
    j["n"] = n;
    j["grid_M"] = grid.size();
    all.push_back(j);
    if (weight_samples) emit(c, "weight_n" + std::to_string(n) + ".csv", weight_csv(w));
  }
  if (c.format == Format::json)
    emit(c, "apconst.json", dump({{"schema", kSchemaVersion}, {"schedule", schedule}, {"reports", all}}));
  else
    emit(c, "apconst.csv", csv);
  return 0;
}

int cmd_sweep(const Common& c, SweepConfig cfg, const std::string& schedule) {
  cfg.schedule_kind = parse_schedule_kind(schedule);
  const auto result = run_sweep(cfg);
  if (!c.out.empty()) {
    write_sweep_report(result, c.out);
    std::cerr << "wrote " << c.out << "/sweep.csv and sweep_summary.json\n";
  } else {
    std::cout << (c.format == Format::json ? sweep_summary_json(result) : sweep_csv(result));
  }
  if (result.any_error()) {
    std::cerr << "some sweep cells failed; see the error column\n";
    return 2;
  }
  return 0;
}

int cmd_necessity(const Common& c, const NecessityConfig& cfg) {
  const auto result = run_necessity(cfg);
  if (!c.out.empty()) {
    write_necessity_report(result, c.out);
    std::cerr << "wrote " << c.out << "/necessity.csv and necessity_summary.json\n";
  } else {
    std::cout << (c.format == Format::json ? necessity_summary_json(result) : necessity_csv(result));
  }
  return 0;
}

int cmd_lemma(const Common& c, const std::vector<double>& alphas) {
  const auto schedule = make_schedule(c);
  std::string csv = lemma_csv_header() + "\n";
  json rows = json::array();
  for (int n : c.n)
    for (double alpha : alphas) {
      const auto probe = LemmaProbe::with_default_grid(n, c.kappa, alpha, schedule);
      const double sup = lemma_ratio_bound(probe);
      const auto range = unperturbed_log_range(probe);
      csv += lemma_csv_row(n, alpha, c.kappa, c.delta, sup) + "\n";
      rows.push_back({{"n", n},
                      {"alpha", alpha},
                      {"kappa", c.kappa},
                      {"delta", c.delta},
                      {"sup_log_R", sup},
                      {"log_P0_min", range.min},
                      {"log_P0_max", range.max}});
    }
  if (c.format == Format::json)
    emit(c, "lemma.json", dump({{"schema", kSchemaVersion}, {"schedule", schedule}, {"rows", rows}}));
  else
    emit(c, "lemma.csv", csv);
  return 0;
}

int cmd_hs(const Common& c, const std::string& scaling) {
  const auto schedule = make_schedule(c);
  const auto mode = scaling == "q" ? ReductionScaling::q : ReductionScaling::half_q;
  std::string csv = "n,p,delta,kappa,scaling,u_sup,v_sup,conj_residual,passes,marginal\n";
  json rows = json::array();
  for (int n : c.n) {
    const auto grid = CircleGrid::oversampled(n, c.oversample);
    const auto r = c.p == 2.0 ? helson_szego_check(n, schedule, c.kappa, grid)
                              : reduced_helson_szego_check(n, schedule, c.p, c.kappa, grid, mode);
    csv += join_csv({std::to_string(n), format_number(c.p), format_number(c.delta), format_number(c.kappa), scaling,
                     format_number(r.u_sup), format_number(r.v_sup), format_number(r.conj_residual),
                     r.passes ? "1" : "0", r.marginal ? "1" : "0"}) +
           "\n";
    json j = r;
    j["n"] = n;
    rows.push_back(j);
  }
  if (c.format == Format::json)
    emit(c, "hs.json",
         dump({{"schema", kSchemaVersion}, {"p", c.p}, {"kappa", c.kappa}, {"scaling", scaling}, {"rows", rows}}));
  else
    emit(c, "hs.csv", csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Perturbed roots of unity: MZ constants, A_p weights and threshold sweeps"};
  app.require_subcommand(1);
  Common c;

  auto* nodes = app.add_subcommand("nodes", "list a perturbed node family");
  add_family_flags(nodes, c);
  add_output_flags(nodes, c);

  std::string method = "auto";
  int budget = 256;
  auto* mz = app.add_subcommand("mzconst", "two-sided MZ constants");
  add_family_flags(mz, c);
  add_output_flags(mz, c);
  mz->add_option("--p", c.p, "exponent > 1")->check(CLI::PositiveNumber);
  mz->add_option("--method", method, "auto|svd|probe")->check(CLI::IsMember({"auto", "svd", "probe"}));
  mz->add_option("--budget", budget, "random probes for the probe method")->check(CLI::PositiveNumber);
  mz->add_option("--grid-oversample", c.oversample, "probe grid points per degree");

  bool damped = false;
  bool samples = false;
  auto* ap = app.add_subcommand("apconst", "uniform A_p product of |F_n|^p");
  add_family_flags(ap, c);
  add_output_flags(ap, c);
  ap->add_option("--p", c.p, "exponent > 1");
  ap->add_option("--grid-oversample", c.oversample, "grid points per degree");
  ap->add_option("--kappa", c.kappa, "radius rho_{kappa n} when --damped is set");
  ap->add_flag("--damped", damped, "use r = rho_{kappa n} instead of n/(n+1)");
  ap->add_flag("--weight-samples", samples, "also emit theta,log_w per n");

  SweepConfig sweep_cfg;
  std::string sweep_schedule(to_string(sweep_cfg.schedule_kind));
  auto* sweep = app.add_subcommand("sweep", "threshold sweep over (n, delta)");
  sweep->add_option("--p", sweep_cfg.p, "exponent > 1");
  sweep->add_option("--n", sweep_cfg.n_list, "degrees")->delimiter(',');
  sweep->add_option("--delta", sweep_cfg.delta_list, "amplitudes (default brackets 1/(2q))")->delimiter(',');
  sweep->add_option("--schedule", sweep_schedule, "schedule kind");
  sweep->add_option("--kappa", sweep_cfg.kappa, "damping for the Helson-Szego column");
  sweep->add_option("--grid-oversample", sweep_cfg.oversampling, "grid points per degree");
  sweep->add_option("--seed", sweep_cfg.seed, "seed");
  sweep->add_option("--budget", sweep_cfg.probe_budget, "probe budget for p != 2");
  sweep->add_option("--workers", sweep_cfg.workers, "worker threads (0 = all cores)");
  add_output_flags(sweep, c);

  NecessityConfig nec_cfg;
  auto* nec = app.add_subcommand("necessity", "blow-up runs on the necessity family");
  nec->add_option("--p", nec_cfg.p, "exponent > 1");
  nec->add_option("--n", nec_cfg.n_list, "half degrees n (family degree 2n)")->delimiter(',');
  nec->add_option("--delta", nec_cfg.delta, "amplitude");
  nec->add_option("--kappa", nec_cfg.phi_kappa, "phi_n radius kappa");
  nec->add_option("--grid-oversample", nec_cfg.oversampling, "grid points per degree");
  nec->add_option("--seed", nec_cfg.seed, "seed");
  nec->add_option("--budget", nec_cfg.probe_budget, "probe budget for p != 2");
  nec->add_option("--workers", nec_cfg.workers, "worker threads (0 = all cores)");
  add_output_flags(nec, c);

  std::vector<double> alphas{0.5, 2.0};
  auto* lemma = app.add_subcommand("lemma-check", "damped product ratio sup |log R_n|");
  add_family_flags(lemma, c);
  add_output_flags(lemma, c);
  lemma->add_option("--kappa", c.kappa, "damping kappa");
  lemma->add_option("--alpha", alphas, "exponents alpha")->delimiter(',');

  std::string scaling = "half-q";
  auto* hs = app.add_subcommand("hs-check", "Helson-Szego gate via v_{kappa n}");
  add_family_flags(hs, c);
  add_output_flags(hs, c);
  hs->add_option("--p", c.p, "exponent; p != 2 rescales the perturbations");
  hs->add_option("--kappa", c.kappa, "damping kappa");
  hs->add_option("--grid-oversample", c.oversample, "grid points per degree");
  hs->add_option("--scaling", scaling, "half-q|q")->check(CLI::IsMember({"half-q", "q"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*nodes) return cmd_nodes(c);
    if (*mz) return cmd_mzconst(c, method, budget);
    if (*ap) return cmd_apconst(c, damped, samples);
    if (*sweep) return cmd_sweep(c, sweep_cfg, sweep_schedule);
    if (*nec) return cmd_necessity(c, nec_cfg);
    if (*lemma) return cmd_lemma(c, alphas);
    if (*hs) return cmd_hs(c, scaling);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
