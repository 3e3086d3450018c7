#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "saidi/network.hpp"
#include "saidi/planner.hpp"

namespace saidi {

/// "%.12g"; every number the CLI or the service reports goes through this.
std::string format_number(double x);
/// A JSON number holding exactly the value format_number prints.
nlohmann::json json_number(double x);

struct AnalyzeOptions {
  std::optional<double> p;
  std::string mode = "exact";  // exact | k-order | polynomial
  int k = 3;
};

nlohmann::json analyze_report(const Network& net, const AnalyzeOptions& options);
nlohmann::json risks_report(const Network& net, std::optional<double> p, std::size_t top, int order);
nlohmann::json curve_report(const Network& net, double p_min, double p_max, int points);
std::string curve_csv(const nlohmann::json& curve);

/// mode: exact | k-order | auto (exact, k-order when the exact engines refuse).
nlohmann::json whatif_report(const Network& net, const CandidateEdge& edge, std::optional<double> p,
                             const std::string& mode = "auto", std::size_t top = 5);
nlohmann::json suggest_report(const Network& net, const std::vector<CandidateEdge>& candidates, double budget,
                              std::optional<double> p, const std::string& mode = "k-order");
nlohmann::json audit_report(const Network& net);

/// Candidate list: JSON array of {id?, u, v, p_fail, cost}.
std::vector<CandidateEdge> parse_candidates(const nlohmann::json& j);

std::string render_text(const std::string& command, const nlohmann::json& report);

void check_probability(std::optional<double> p, const std::string& what = "p");

}  // namespace saidi
