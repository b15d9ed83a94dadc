#include "mzroots/serialize.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mzroots {

using nlohmann::json;

void to_json(json& j, const NodeSet& nodes) {
  j = json{{"n", nodes.n()}, {"angles", nodes.angles()}};
}

NodeSet node_set_from_json(const json& j) {
  return NodeSet(j.at("n").get<int>(), j.at("angles").get<std::vector<double>>());
}

void from_json(const json& j, NodeSet& nodes) { nodes = node_set_from_json(j); }

void to_json(json& j, const PerturbationSchedule& s) {
  j = json{{"kind", std::string(to_string(s.kind))}, {"delta", s.delta}, {"seed", s.seed}};
  if (s.kind == ScheduleKind::explicit_values) j["explicit_values"] = s.explicit_values;
}

void from_json(const json& j, PerturbationSchedule& s) {
  const auto kind = parse_schedule_kind(j.at("kind").get<std::string>());
  if (kind == ScheduleKind::explicit_values) {
    s = PerturbationSchedule::explicit_offsets(j.at("explicit_values").get<std::vector<double>>());
    return;
  }
  s.kind = kind;
  s.delta = j.at("delta").get<double>();
  s.seed = j.value("seed", std::uint64_t{0});
  s.explicit_values.clear();
  s.validate();
}

void to_json(json& j, const Polynomial& poly) {
  std::vector<double> flat;
  flat.reserve(2 * poly.coeffs().size());
  for (const auto& c : poly.coeffs()) {
    flat.push_back(c.real());
    flat.push_back(c.imag());
  }
  j = json{{"coeffs", flat}};
}

void from_json(const json& j, Polynomial& poly) {
  const auto flat = j.at("coeffs").get<std::vector<double>>();
  if (flat.size() % 2 != 0) throw std::invalid_argument("polynomial JSON: odd coefficient count");
  std::vector<cplx> coeffs(flat.size() / 2);
  for (std::size_t k = 0; k < coeffs.size(); ++k) coeffs[k] = {flat[2 * k], flat[2 * k + 1]};
  poly = Polynomial(std::move(coeffs));
}

void to_json(json& j, const MZReport& r) {
  j = json{{"n", r.n},
           {"p", r.p},
           {"lower_frame", r.lower_frame},
           {"upper_frame", r.upper_frame},
           {"c_p", r.c_p},
           {"sigma_min", r.sigma_min ? json(*r.sigma_min) : json(nullptr)},
           {"sigma_max", r.sigma_max ? json(*r.sigma_max) : json(nullptr)},
           {"method", std::string(to_string(r.method))},
           {"lower_bound_only", r.is_lower_bound()}};
}

void to_json(json& j, const ApReport& r) {
  json profile = json::array();
  for (const auto& e : r.profile) profile.push_back({{"length", e.length}, {"product", e.product}});
  j = json{{"p", r.p},
           {"k_p", r.k_p},
           {"argmax_center", r.argmax_center},
           {"argmax_length", r.argmax_length},
           {"profile", profile}};
}

void to_json(json& j, const HelsonSzegoReport& r) {
  j = json{{"u_sup", r.u_sup},
           {"v_sup", r.v_sup},
           {"conj_residual", r.conj_residual},
           {"passes", r.passes},
           {"marginal", r.marginal}};
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    const auto& c = cells[i];
    if (c.find_first_of(",\"\n") == std::string::npos) {
      out += c;
      continue;
    }
    out += '"';
    for (char ch : c) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  }
  return out;
}

namespace {
std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : ""; }
}  // namespace

std::string mz_csv_header() {
  return "n,p,delta,schedule_kind,lower_frame,upper_frame,c_p,sigma_min,sigma_max,method";
}

std::string mz_csv_row(const MZReport& r, double delta, std::string_view schedule_kind) {
  return join_csv({std::to_string(r.n), format_number(r.p), format_number(delta),
                   std::string(schedule_kind), format_number(r.lower_frame),
                   format_number(r.upper_frame), format_number(r.c_p), opt_number(r.sigma_min),
                   opt_number(r.sigma_max), std::string(to_string(r.method))});
}

std::string ap_csv_header() { return "p,n,delta,k_p,argmax_center,argmax_length,grid_M"; }

std::string ap_csv_row(const ApReport& r, int n, double delta, int grid_size) {
  return join_csv({format_number(r.p), std::to_string(n), format_number(delta),
                   format_number(r.k_p), format_number(r.argmax_center),
                   format_number(r.argmax_length), std::to_string(grid_size)});
}

std::string weight_csv(const WeightSamples& weight) {
  std::ostringstream out;
  out << "theta,log_w\n";
  for (int m = 0; m < weight.grid.size(); ++m)
    out << format_number(weight.grid.angle(m)) << ',' << format_number(weight.log_values[m])
        << '\n';
  return out.str();
}

std::string lemma_csv_header() { return "n,alpha,kappa,delta,sup_log_R"; }

std::string lemma_csv_row(int n, double alpha, double kappa, double delta, double sup_log_r) {
  return join_csv({std::to_string(n), format_number(alpha), format_number(kappa),
                   format_number(delta), format_number(sup_log_r)});
}

}  // namespace mzroots
