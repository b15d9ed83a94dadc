#pragma once

// JSON and CSV encodings of the domain types.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mzroots/mzbounds.hpp"
#include "mzroots/nodes.hpp"
#include "mzroots/polyspace.hpp"
#include "mzroots/weights.hpp"

namespace mzroots {

inline constexpr int kSchemaVersion = 1;

// {"n": int, "angles": [...]}
void to_json(nlohmann::json& j, const NodeSet& nodes);
void from_json(const nlohmann::json& j, NodeSet& nodes);
NodeSet node_set_from_json(const nlohmann::json& j);

// {"kind": str, "delta": x, "seed": s, "explicit_values": [...]?}
void to_json(nlohmann::json& j, const PerturbationSchedule& schedule);
void from_json(const nlohmann::json& j, PerturbationSchedule& schedule);

// {"coeffs": [re0, im0, re1, im1, ...]}
void to_json(nlohmann::json& j, const Polynomial& poly);
void from_json(const nlohmann::json& j, Polynomial& poly);

void to_json(nlohmann::json& j, const MZReport& report);
void to_json(nlohmann::json& j, const ApReport& report);
void to_json(nlohmann::json& j, const HelsonSzegoReport& report);

/// Shortest round-trip-safe decimal for CSV cells; "nan" for NaN.
std::string format_number(double value);

std::string join_csv(const std::vector<std::string>& cells);

/// n,p,delta,schedule_kind,lower_frame,upper_frame,c_p,sigma_min,sigma_max,method
std::string mz_csv_header();
std::string mz_csv_row(const MZReport& report, double delta, std::string_view schedule_kind);

/// p,n,delta,k_p,argmax_center,argmax_length,grid_M
std::string ap_csv_header();
std::string ap_csv_row(const ApReport& report, int n, double delta, int grid_size);

/// theta,log_w
std::string weight_csv(const WeightSamples& weight);

/// n,alpha,kappa,delta,sup_log_R
std::string lemma_csv_header();
std::string lemma_csv_row(int n, double alpha, double kappa, double delta, double sup_log_r);

}  // namespace mzroots

// NodeSet has no default state, so json::get<NodeSet>() goes through here.
template <>
struct nlohmann::adl_serializer<mzroots::NodeSet> {
  static mzroots::NodeSet from_json(const json& j) { return mzroots::node_set_from_json(j); }
  static void to_json(json& j, const mzroots::NodeSet& nodes) { mzroots::to_json(j, nodes); }
};
