#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "saidi/generators.hpp"
#include "saidi/io.hpp"

using namespace saidi;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
  json j() const { return json::parse(out); }
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(SAIDI_DATA_DIR) + "/" + name; }

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

std::string write_net(const Network& net, const std::string& name) {
  std::string path = temp(name);
  save(net, path);
  return path;
}

}  // namespace

TEST_CASE("cli analyze") {
  Run r = cli({"analyze", data("ring3.json"), "--p", "0.1", "--json"});
  REQUIRE(r.code == 0);
  CHECK(r.j()["normalized"].get<double>() == doctest::Approx(0.0301).epsilon(1e-12));
  CHECK(r.j()["saidi"].get<double>() == doctest::Approx(0.0903).epsilon(1e-12));

  Run text = cli({"analyze", data("ring3.json"), "--p", "0.1"});
  CHECK(text.out.find("normalized  0.0301") != std::string::npos);

  std::string tree = write_net(balanced_binary_tree(9, 0.1), "cli_tree.json");
  double want = oracle::saidi(load(tree).with_uniform_p(0.2));
  CHECK(cli({"analyze", tree, "--p", "0.2", "--json"}).j()["saidi"].get<double>() == doctest::Approx(want).epsilon(1e-11));
  CHECK(cli({"analyze", tree, "--p", "0", "--json"}).j()["saidi"].get<double>() == 0.0);
  // Per-edge probabilities when --p is absent.
  Network own = oracle::Gen(3).connected(6, 9);
  std::string own_file = write_net(own, "cli_own.json");
  CHECK(cli({"analyze", own_file, "--json"}).j()["saidi"].get<double>() ==
        doctest::Approx(oracle::saidi(own)).epsilon(1e-11));
  Run k = cli({"analyze", data("petersen25.json"), "--p", "0.001", "--mode", "k-order", "--k", "3", "--json"});
  Run ex = cli({"analyze", data("petersen25.json"), "--p", "0.001", "--json"});
  CHECK(k.j()["saidi"].get<double>() == doctest::Approx(ex.j()["saidi"].get<double>()).epsilon(1e-4));

  CHECK(cli({"analyze", data("ring3.json"), "--p", "1.5"}).code == 2);
  CHECK(cli({"analyze", "/nonexistent.json"}).code == 2);
  CHECK(cli({"analyze"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);

  // A dense mesh with no closed form exceeds the exact guard.
  std::string dense = write_net(oracle::Gen(5).bridgeless(30, 90), "cli_dense.json");
  Run big = cli({"analyze", dense, "--p", "0.1"});
  CHECK(big.code == 3);
  CHECK(big.err.find("guard") != std::string::npos);
  CHECK(cli({"analyze", dense, "--p", "0.01", "--mode", "k-order"}).code == 0);
}

TEST_CASE("cli risks") {
  Run r = cli({"risks", data("mesh_sample.json"), "--p", "0.1", "--top", "5", "--json"});
  REQUIRE(r.code == 0);
  auto rows = r.j()["risks"];
  CHECK(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1]["risk"].get<double>() >= rows[i]["risk"].get<double>());
  // Trees: the highest risks are single bridges.
  Run t = cli({"risks", data("binary_tree7.json"), "--top", "3", "--json"});
  for (const auto& row : t.j()["risks"]) CHECK(row["order"] == 1);
  Run none = cli({"risks", data("ring30.json"), "--order", "1", "--json"});
  CHECK(none.j()["risks"].empty());
}

TEST_CASE("cli curve") {
  Run r = cli({"curve", data("ring3.json"), "--p-min", "0", "--p-max", "0.5", "--points", "6"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "p,saidi,normalized");
  CHECK(first == "0,0,0");
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 7);
  CHECK(cli({"curve", data("ring3.json"), "--p-min", "0.5", "--p-max", "0.1"}).code == 2);
  Run single = cli({"curve", data("ring3.json"), "--p-min", "0", "--p-max", "0", "--points", "1", "--json"});
  CHECK(single.j()["rows"][0]["saidi"] == 0.0);

  // In-family orderings of the figure: star <= binary tree <= path, ring <= path at small p.
  Run all = cli({"curve", data("star30.json"), data("binary_tree30.json"), data("path30.json"), data("ring30.json"),
                 "--p-min", "0.01", "--p-max", "0.3", "--points", "5", "--json"});
  REQUIRE(all.code == 0);
  auto f = all.j();
  for (int i = 0; i < 5; ++i) {
    double st = f[0]["rows"][i]["saidi"], bt = f[1]["rows"][i]["saidi"], pa = f[2]["rows"][i]["saidi"],
           ri = f[3]["rows"][i]["saidi"];
    CHECK(st <= bt);
    CHECK(bt <= pa);
    if (i == 0) CHECK(ri <= pa);
  }
  Run csv = cli({"curve", data("star30.json"), data("ring30.json"), "--points", "3"});
  CHECK(csv.out.rfind("network,p,saidi,normalized\n", 0) == 0);
}

TEST_CASE("cli whatif and suggest") {
  std::string file = data("ring3.json");
  Run w = cli({"whatif", file, "--edge", "s,v1,0.1", "--p", "0.1", "--json"});
  REQUIRE(w.code == 0);
  Network base = load(file).with_uniform_p(0.1);
  double want = oracle::saidi(base) - oracle::saidi(base.with_edge({"x", "s", "v1", 0.1}));
  CHECK(w.j()["delta"].get<double>() > 0.0);
  CHECK(w.j()["delta"].get<double>() == doctest::Approx(want).epsilon(1e-12));
  CHECK(w.j()["mode"] == "exact");
  CHECK(cli({"whatif", file, "--edge", "s,zz,0.1"}).code == 2);
  CHECK(cli({"whatif", file, "--edge", "s,v1"}).code == 2);

  std::string cands = temp("cli_cands.json");
  std::ofstream(cands) << "[]";
  Run empty = cli({"suggest", data("theta13.json"), "--candidates", cands, "--budget", "10", "--json"});
  REQUIRE(empty.code == 0);
  CHECK(empty.j()["plan"].empty());

  std::ofstream(cands) << R"([{"u": "v1", "v": "v3", "p_fail": 0.1, "cost": 1},
                              {"u": "s", "v": "v2", "p_fail": 0.1, "cost": 2},
                              {"u": "v1", "v": "v2", "p_fail": 0.1, "cost": 1}])";
  Run plan = cli({"suggest", data("ring30.json"), "--candidates", cands, "--budget", "1e9", "--p", "0.1", "--mode", "exact",
                  "--json"});
  REQUIRE(plan.code == 0);
  CHECK(plan.j()["plan"].size() == 3);
  Run zero = cli({"suggest", data("ring30.json"), "--candidates", cands, "--budget", "0", "--json"});
  CHECK(zero.j()["plan"].empty());
  CHECK(cli({"suggest", data("ring30.json"), "--candidates", cands, "--budget", "-1"}).code == 2);
}

TEST_CASE("cli generate and audit") {
  std::string out = temp("cli_gen.json");
  REQUIRE(cli({"generate", "petersen_subdivision", "--total", "55", "--out", out}).code == 0);
  Run a = cli({"audit", out, "--json"});
  REQUIRE(a.code == 0);
  CHECK(a.j()["passed"] == true);
  CHECK(a.j()["chain_length_spread"] == 0);

  REQUIRE(cli({"generate", "ring", "--n", "6", "--out", out}).code == 0);
  Run r = cli({"audit", out, "--json"});
  CHECK(r.j()["passed"] == false);
  CHECK(r.j()["three_regular"] == false);
  CHECK(cli({"audit", out}).out.find("passed                no") != std::string::npos);

  CHECK(cli({"generate", "hypercube"}).code == 2);
  CHECK(cli({"generate", "two_connected_rings", "--hubs", "5"}).code == 2);

  // Deterministic output, byte for byte.
  Run g1 = cli({"generate", "grid", "--rows", "6", "--cols", "3", "--pattern", "middle_row"});
  Run g2 = cli({"generate", "grid", "--rows", "6", "--cols", "3", "--pattern", "middle_row"});
  CHECK(g1.code == 0);
  CHECK(g1.out == g2.out);
  CHECK(cli({"risks", data("mesh_sample.json"), "--json"}).out == cli({"risks", data("mesh_sample.json"), "--json"}).out);
}
