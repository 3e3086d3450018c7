#include "saidi/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "saidi/exact.hpp"
#include "saidi/risk.hpp"

namespace saidi {

using nlohmann::json;

std::string format_number(double x) {
  if (x == 0.0) return "0";  // no "-0"
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

void check_probability(std::optional<double> p, const std::string& what) {
  if (p && !(*p >= 0.0 && *p <= 1.0)) throw ValidationError(what + " must be within [0, 1]");
}

namespace {

json ids(const std::vector<std::string>& v) { return json(v); }

json risk_row(const RiskRecord& r) {
  return {{"cutset", ids(r.cutset.edges)},
          {"order", r.order()},
          {"kind", to_string(r.kind)},
          {"disconnected_weight", json_number(r.disconnected_weight)},
          {"reach", json_number(r.reach_prob)},
          {"reach_exact", r.reach_exact},
          {"fail", json_number(r.fail_prob)},
          {"risk", json_number(r.risk)},
          {"disconnected_nodes", ids(r.disconnected_nodes)},
          {"chains", ids(r.chains)}};
}

json risk_table(const Network& net, std::optional<double> p, std::size_t top, int order) {
  json rows = json::array();
  for (const auto& r : top_risks(net, top, p, order)) rows.push_back(risk_row(r));
  return rows;
}

json p_field(std::optional<double> p) { return p ? json_number(*p) : json(nullptr); }

}  // namespace

json analyze_report(const Network& net, const AnalyzeOptions& o) {
  check_probability(o.p);
  EvalRequest req;
  req.p = o.p;
  req.k = o.k;
  if (o.mode == "exact") req.mode = EvalMode::numeric;
  else if (o.mode == "k-order") req.mode = EvalMode::korder;
  else if (o.mode == "polynomial") req.mode = EvalMode::exact_polynomial;
  else throw ValidationError("mode must be exact, k-order or polynomial");
  if (req.mode == EvalMode::korder && (o.k < 1 || o.k > 5)) throw ValidationError("k must be within 1..5");
  EvalResult res = evaluate(net, req);
  json out = {{"mode", o.mode},
              {"p", p_field(o.p)},
              {"saidi", json_number(res.saidi)},
              {"normalized", json_number(res.normalized)},
              {"nodes", net.node_count()},
              {"edges", net.edge_count()},
              {"consumers", net.consumer_count()},
              {"total_weight", json_number(net.total_weight())}};
  if (req.mode == EvalMode::korder) out["k"] = o.k;
  if (res.polynomial) {
    json coeffs = json::array();
    for (const auto& c : res.polynomial->coeffs()) coeffs.push_back(c.get_str());
    out["polynomial"] = coeffs;
  }
  return out;
}

json risks_report(const Network& net, std::optional<double> p, std::size_t top, int order) {
  check_probability(p);
  if (order < 1 || order > 3) throw ValidationError("order must be within 1..3");
  return {{"p", p_field(p)}, {"top", top}, {"order", order}, {"risks", risk_table(net, p, top, order)}};
}

json curve_report(const Network& net, double p_min, double p_max, int points) {
  check_probability(p_min, "p-min");
  check_probability(p_max, "p-max");
  if (p_min > p_max) throw ValidationError("p-min must not exceed p-max");
  if (points < 1) throw ValidationError("points must be at least 1");
  json rows = json::array();
  for (int i = 0; i < points; ++i) {
    double p = points == 1 ? p_min : p_min + (p_max - p_min) * i / (points - 1);
    EvalResult r = evaluate(net, EvalRequest{EvalMode::numeric, p, 3});
    rows.push_back({{"p", json_number(p)}, {"saidi", json_number(r.saidi)}, {"normalized", json_number(r.normalized)}});
  }
  return {{"columns", {"p", "saidi", "normalized"}}, {"rows", rows}};
}

std::string curve_csv(const json& curve) {
  std::ostringstream out;
  out << "p,saidi,normalized\n";
  for (const auto& r : curve["rows"])
    out << format_number(r["p"].get<double>()) << ',' << format_number(r["saidi"].get<double>()) << ','
        << format_number(r["normalized"].get<double>()) << '\n';
  return out.str();
}

namespace {

RiskMode risk_mode(const std::string& mode) {
  if (mode == "exact") return RiskMode::exact;
  if (mode == "k-order") return RiskMode::approx;
  throw ValidationError("mode must be exact, k-order or auto");
}

json delta_json(const RiskDelta& d) {
  json cuts = json::array();
  for (const auto& [x, v] : d.cut_deltas) cuts.push_back({{"cutset", ids(x.edges)}, {"delta", json_number(v)}});
  json inter = json::array();
  for (const auto& c : d.inter_deltas) inter.push_back({{"chain", c.chain}, {"delta", json_number(c.value)}});
  return {{"edge",
           {{"id", d.edge.id}, {"u", d.edge.u}, {"v", d.edge.v}, {"p_fail", json_number(d.edge.p_fail)},
            {"cost", json_number(d.edge.cost)}}},
          {"kind", to_string(d.kind)},
          {"mode", d.exact ? "exact" : "k-order"},
          {"saidi", json_number(d.saidi_before)},
          {"new_saidi", json_number(d.saidi_after)},
          {"delta", json_number(d.total)},
          {"effectiveness", json_number(d.effectiveness)},
          {"infinite_effectiveness", d.infinite_effectiveness},
          {"cut_deltas", cuts},
          {"inter_deltas", inter}};
}

}  // namespace

json whatif_report(const Network& net, const CandidateEdge& edge, std::optional<double> p, const std::string& mode,
                   std::size_t top) {
  check_probability(p);
  RiskDelta d;
  if (mode == "auto") {
    try {
      d = evaluate_candidate(net, edge, p, RiskMode::exact);
    } catch (const SizeGuardError&) {
      d = evaluate_candidate(net, edge, p, RiskMode::approx);
    }
  } else {
    d = evaluate_candidate(net, edge, p, risk_mode(mode));
  }
  json out = delta_json(d);
  out["p"] = p_field(p);
  Network after = net.with_edge({d.edge.id, d.edge.u, d.edge.v, d.edge.p_fail});
  out["updated_top_risks"] = risk_table(after, p, top, 3);
  return out;
}

json suggest_report(const Network& net, const std::vector<CandidateEdge>& candidates, double budget,
                    std::optional<double> p, const std::string& mode) {
  check_probability(p);
  if (!(budget >= 0.0)) throw ValidationError("budget must be nonnegative");
  auto plan = suggest_edges(net, candidates, budget, p, risk_mode(mode));
  json steps = json::array();
  for (const auto& s : plan) {
    json j = delta_json(s.delta);
    j["cumulative_cost"] = json_number(s.cumulative_cost);
    steps.push_back(j);
  }
  return {{"p", p_field(p)}, {"budget", json_number(budget)}, {"mode", mode}, {"plan", steps}};
}

json audit_report(const Network& net) {
  AuditReport a = design_rule_audit(net);
  json hist = json::object();
  for (const auto& [d, n] : a.hub_degree_histogram) hist[std::to_string(d)] = n;
  json viol = json::array();
  for (const auto& v : a.violations) viol.push_back({{"rule", v.rule}, {"detail", v.detail}});
  return {{"passed", a.passed()},
          {"bridges", ids(a.bridges)},
          {"hub_count", a.hub_count},
          {"chain_count", a.chain_count},
          {"hub_degree_histogram", hist},
          {"three_regular", a.three_regular},
          {"three_connected", a.three_connected},
          {"super_three_connected", a.super_three_connected},
          {"chain_length_min", a.chain_length_min},
          {"chain_length_max", a.chain_length_max},
          {"chain_length_spread", a.chain_length_spread},
          {"violations", viol}};
}

std::vector<CandidateEdge> parse_candidates(const json& j) {
  if (!j.is_array()) throw ValidationError("$: candidates must be an array");
  std::vector<CandidateEdge> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "$[" + std::to_string(i) + "]";
    const json& c = j[i];
    if (!c.is_object()) throw ValidationError(path + ": must be an object");
    CandidateEdge e;
    try {
      e.id = c.value("id", "cand" + std::to_string(i + 1));
      e.u = c.at("u").get<std::string>();
      e.v = c.at("v").get<std::string>();
      e.p_fail = c.at("p_fail").get<double>();
      e.cost = c.value("cost", 1.0);
    } catch (const json::exception& ex) {
      throw ValidationError(path + ": " + ex.what());
    }
    if (!(e.p_fail >= 0.0 && e.p_fail <= 1.0)) throw ValidationError(path + ".p_fail: must be within [0, 1]");
    if (!(e.cost >= 0.0)) throw ValidationError(path + ".cost: must be nonnegative");
    out.push_back(e);
  }
  return out;
}

namespace {

std::string num(const json& v) { return v.is_null() ? "-" : format_number(v.get<double>()); }

std::string join(const json& arr, const char* sep = "+") {
  std::string s;
  for (const auto& x : arr) s += (s.empty() ? "" : sep) + x.get<std::string>();
  return s;
}

}  // namespace

std::string render_text(const std::string& command, const json& r) {
  std::ostringstream out;
  if (command == "analyze") {
    out << "mode        " << r["mode"].get<std::string>() << (r.contains("k") ? " k=" + std::to_string(r["k"].get<int>()) : "")
        << "\n";
    out << "p           " << (r["p"].is_null() ? std::string("edge values") : num(r["p"])) << "\n";
    out << "saidi       " << num(r["saidi"]) << "\n";
    out << "normalized  " << num(r["normalized"]) << "\n";
    if (r.contains("polynomial")) out << "polynomial  " << join(r["polynomial"], " ") << "\n";
  } else if (command == "risks") {
    out << "rank\tcutset\torder\tkind\tD\treach\trisk\n";
    int rank = 1;
    for (const auto& row : r["risks"])
      out << rank++ << '\t' << join(row["cutset"]) << '\t' << row["order"].get<int>() << '\t'
          << row["kind"].get<std::string>() << '\t' << num(row["disconnected_weight"]) << '\t' << num(row["reach"])
          << '\t' << num(row["risk"]) << '\n';
  } else if (command == "whatif") {
    const json& e = r["edge"];
    out << "edge        " << e["id"].get<std::string>() << " " << e["u"].get<std::string>() << "-"
        << e["v"].get<std::string>() << " p=" << num(e["p_fail"]) << " cost=" << num(e["cost"]) << "\n";
    out << "kind        " << r["kind"].get<std::string>() << "\n";
    out << "mode        " << r["mode"].get<std::string>() << "\n";
    out << "saidi       " << num(r["saidi"]) << "\n";
    out << "new_saidi   " << num(r["new_saidi"]) << "\n";
    out << "delta       " << num(r["delta"]) << "\n";
    out << "per_cost    " << (r["infinite_effectiveness"].get<bool>() ? std::string("inf") : num(r["effectiveness"]))
        << "\n";
  } else if (command == "suggest") {
    out << "step\tedge\tu\tv\tkind\tdelta\tnew_saidi\tcumulative_cost\n";
    int step = 1;
    for (const auto& s : r["plan"])
      out << step++ << '\t' << s["edge"]["id"].get<std::string>() << '\t' << s["edge"]["u"].get<std::string>() << '\t'
          << s["edge"]["v"].get<std::string>() << '\t' << s["kind"].get<std::string>() << '\t' << num(s["delta"])
          << '\t' << num(s["new_saidi"]) << '\t' << num(s["cumulative_cost"]) << '\n';
    if (r["plan"].empty()) out << "(empty plan)\n";
  } else if (command == "audit") {
    out << "passed                " << (r["passed"].get<bool>() ? "yes" : "no") << "\n";
    out << "bridges               " << r["bridges"].size() << "\n";
    out << "hubs / chains         " << r["hub_count"].get<std::size_t>() << " / " << r["chain_count"].get<std::size_t>()
        << "\n";
    out << "hub degrees           ";
    for (auto it = r["hub_degree_histogram"].begin(); it != r["hub_degree_histogram"].end(); ++it)
      out << it.key() << ":" << it.value().get<int>() << " ";
    out << "\n";
    out << "3-regular             " << (r["three_regular"].get<bool>() ? "yes" : "no") << "\n";
    out << "3-connected           " << (r["three_connected"].get<bool>() ? "yes" : "no") << "\n";
    out << "super 3-connected     " << (r["super_three_connected"].get<bool>() ? "yes" : "no") << "\n";
    out << "chain length spread   " << r["chain_length_spread"].get<std::size_t>() << " ("
        << r["chain_length_min"].get<std::size_t>() << ".." << r["chain_length_max"].get<std::size_t>() << ")\n";
    for (const auto& v : r["violations"])
      out << "violation: " << v["rule"].get<std::string>() << ": " << v["detail"].get<std::string>() << "\n";
  } else {
    out << r.dump(2) << "\n";
  }
  return out.str();
}

}  // namespace saidi
