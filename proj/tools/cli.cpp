#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "saidi/analysis.hpp"
#include "saidi/generators.hpp"
#include "saidi/io.hpp"

namespace saidi {

using nlohmann::json;

namespace {

std::optional<double> opt(const CLI::Option* o, double v) {
  if (o->count() == 0) return std::nullopt;
  return v;
}

// "u,v,p[,cost]"
CandidateEdge parse_edge_spec(const std::string& spec, const std::string& id) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) throw ValidationError("--edge: expected u,v,p[,cost]");
  CandidateEdge e;
  e.id = id;
  e.u = parts[0];
  e.v = parts[1];
  try {
    e.p_fail = std::stod(parts[2]);
    e.cost = parts.size() == 4 ? std::stod(parts[3]) : 1.0;
  } catch (const std::exception&) {
    throw ValidationError("--edge: p and cost must be numbers");
  }
  return e;
}

struct GenerateArgs {
  std::string family;
  int n = 10, k = 2, m = 0, h = 4, rows = 7, cols = 4, total = 0;
  double p = 0.1;
  std::string pattern = "basic";
  std::string name;
};

Network generate(const GenerateArgs& g) {
  const std::string& f = g.family;
  if (f == "star") return star(g.n, g.p);
  if (f == "path") return path(g.n, g.p);
  if (f == "binary_tree") return balanced_binary_tree(g.n, g.p);
  if (f == "ring") return ring(g.n, g.p);
  if (f == "k_rings") return k_rings(g.n, g.k, KRingsVariant::rings_at_source, g.p);
  if (f == "k_chains") return k_rings(g.n, g.k, KRingsVariant::chains_to_hub, g.p);
  if (f == "multi_star") return multi_star(g.n, g.m, g.p);
  if (f == "two_connected_rings") return two_connected_rings(g.h, g.p);
  if (f == "petersen") return petersen(g.p);
  if (f == "petersen_subdivision") return subdivide_equal(petersen(g.p), g.total > 0 ? g.total : 40, g.p);
  if (f == "rings_subdivision")
    return subdivide_equal(two_connected_rings(g.h, g.p), g.total > 0 ? g.total : 4 * g.h, g.p);
  if (f == "grid") return grid(g.rows, g.cols, parse_grid_pattern(g.pattern), {}, g.p);
  throw ValidationError("unknown family " + f);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path + ": invalid JSON: " + e.what());
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"SAIDI reliability toolkit", "saidi"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON output");

  std::string file;
  double p = 0.0;
  std::string mode;
  int k = 3;

  auto* analyze = app.add_subcommand("analyze", "SAIDI and normalized SAIDI of a network");
  analyze->add_option("file", file, "network JSON")->required();
  auto* analyze_p = analyze->add_option("--p", p, "uniform edge failure probability");
  analyze->add_option("--mode", mode, "exact | k-order | polynomial")->default_str("exact");
  analyze->add_option("--k", k, "approximation order (k-order)");
  analyze->add_flag("--json", as_json);

  std::size_t top = 5;
  int order = 3;
  auto* risks = app.add_subcommand("risks", "top minimal-cut-set risks");
  risks->add_option("file", file)->required();
  auto* risks_p = risks->add_option("--p", p);
  risks->add_option("--top", top);
  risks->add_option("--order", order);
  risks->add_flag("--json", as_json);

  std::vector<std::string> files;
  double p_min = 0.0, p_max = 0.1;
  int points = 11;
  auto* curve = app.add_subcommand("curve", "CSV of SAIDI against uniform p");
  curve->add_option("files", files)->required();
  curve->add_option("--p-min", p_min);
  curve->add_option("--p-max", p_max);
  curve->add_option("--points", points);
  curve->add_flag("--json", as_json);

  std::string edge_spec, edge_id = "new";
  auto* whatif = app.add_subcommand("whatif", "effect of adding one edge");
  whatif->add_option("file", file)->required();
  whatif->add_option("--edge", edge_spec, "u,v,p[,cost]")->required();
  whatif->add_option("--id", edge_id, "id of the new edge");
  auto* whatif_p = whatif->add_option("--p", p);
  whatif->add_option("--mode", mode, "auto | exact | k-order");
  whatif->add_flag("--json", as_json);

  std::string candidates_file;
  double budget = 0.0;
  auto* suggest = app.add_subcommand("suggest", "greedy budgeted edge plan");
  suggest->add_option("file", file)->required();
  suggest->add_option("--candidates", candidates_file)->required();
  suggest->add_option("--budget", budget)->required();
  auto* suggest_p = suggest->add_option("--p", p);
  suggest->add_option("--mode", mode, "k-order | exact");
  suggest->add_flag("--json", as_json);

  auto* audit = app.add_subcommand("audit", "design-rule audit");
  audit->add_option("file", file)->required();
  audit->add_flag("--json", as_json);

  GenerateArgs gen;
  std::string out_file;
  auto* generate_cmd = app.add_subcommand("generate", "write a generated network");
  generate_cmd->add_option("family", gen.family)->required();
  generate_cmd->add_option("--n", gen.n);
  generate_cmd->add_option("--k", gen.k);
  generate_cmd->add_option("--m", gen.m);
  generate_cmd->add_option("--hubs", gen.h, "hub count (two_connected_rings, rings_subdivision)");
  generate_cmd->add_option("--rows", gen.rows);
  generate_cmd->add_option("--cols", gen.cols);
  generate_cmd->add_option("--total", gen.total);
  generate_cmd->add_option("--pattern", gen.pattern);
  generate_cmd->add_option("--p", gen.p);
  generate_cmd->add_option("--name", gen.name);
  generate_cmd->add_option("--out", out_file);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    auto emit = [&](const std::string& command, const json& report) {
      if (as_json) out << report.dump(2) << "\n";
      else out << render_text(command, report);
    };
    if (analyze->parsed()) {
      AnalyzeOptions o;
      o.p = opt(analyze_p, p);
      if (!mode.empty()) o.mode = mode;
      o.k = k;
      emit("analyze", analyze_report(load(file), o));
    } else if (risks->parsed()) {
      emit("risks", risks_report(load(file), opt(risks_p, p), top, order));
    } else if (curve->parsed()) {
      if (as_json) {
        json all = json::array();
        for (const auto& f : files) {
          json c = curve_report(load(f), p_min, p_max, points);
          c["file"] = f;
          all.push_back(c);
        }
        out << (files.size() == 1 ? all[0] : all).dump(2) << "\n";
      } else if (files.size() == 1) {
        out << curve_csv(curve_report(load(files[0]), p_min, p_max, points));
      } else {
        out << "network,p,saidi,normalized\n";
        for (const auto& f : files) {
          std::string csv = curve_csv(curve_report(load(f), p_min, p_max, points));
          std::istringstream lines(csv);
          std::string line;
          std::getline(lines, line);
          while (std::getline(lines, line)) out << f << ',' << line << '\n';
        }
      }
    } else if (whatif->parsed()) {
      CandidateEdge e = parse_edge_spec(edge_spec, edge_id);
      emit("whatif", whatif_report(load(file), e, opt(whatif_p, p), mode.empty() ? "auto" : mode));
    } else if (suggest->parsed()) {
      auto cands = parse_candidates(read_json_file(candidates_file));
      emit("suggest", suggest_report(load(file), cands, budget, opt(suggest_p, p), mode.empty() ? "k-order" : mode));
    } else if (audit->parsed()) {
      emit("audit", audit_report(load(file)));
    } else if (generate_cmd->parsed()) {
      NetworkDocument doc = document_from_network(generate(gen), gen.name.empty() ? gen.family : gen.name);
      if (out_file.empty()) out << dump_document(doc);
      else save_document(doc, out_file);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace saidi
