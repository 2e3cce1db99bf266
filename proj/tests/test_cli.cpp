#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "app.hpp"
#include "support/bridge.hpp"

using namespace oscurve;
using namespace oscurve::cli;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("oscurve_cli_" + name)).string();
}

RunConfig json_config(const std::string& curve = "") {
  RunConfig cfg;
  cfg.curve = curve;
  cfg.format = "json";
  return cfg;
}

Json run_json(int (*cmd)(const RunConfig&, std::ostream&), const RunConfig& cfg, int expected_code = kExitOk) {
  std::ostringstream out;
  CHECK(cmd(cfg, out) == expected_code);
  return Json::parse(out.str());
}

}  // namespace

TEST_CASE("parameter strings") {
  const auto p = parse_params("a=12, b = 5,scale=0.5");
  CHECK(p.at("a") == 12);
  CHECK(p.at("b") == 5);
  CHECK(p.at("scale") == 0.5);
  CHECK(parse_params("").empty());
  CHECK_THROWS_AS(parse_params("a"), ConfigError);
  CHECK_THROWS_AS(parse_params("a=x"), ConfigError);
  CHECK_THROWS_AS(parse_params("=1"), ConfigError);
}

TEST_CASE("configuration validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.n = 2000;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.format = "xml";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.family = "tangent";
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.s_min = 2;
  cfg.s_max = 1;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = {};
  cfg.tol.bar = 0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("curve resolution") {
  RunConfig cfg;
  CHECK_THROWS_AS(resolve_curve(cfg), ConfigError);
  cfg.curve = "helix_12_5";
  cfg.input = "x.csv";
  CHECK_THROWS_AS(resolve_curve(cfg), ConfigError);
  cfg.input.clear();
  cfg.curve = "nosuch";
  CHECK_THROWS_AS(resolve_curve(cfg), ConfigError);
  cfg.curve = "circular_helix";
  cfg.params = {{"scale", -1}};
  CHECK_THROWS_AS(resolve_curve(cfg), ConfigError);
  cfg.params.clear();
  cfg.curve = "root_curve";
  cfg.s_max = 1.5;
  CHECK_THROWS_AS(resolve_curve(cfg), DomainError);
  cfg.s_max = 0.5;
  cfg.n = 101;
  const auto rc = resolve_curve(cfg);
  CHECK(rc.samples.grid.s_max() == 0.5);
  CHECK(rc.samples.size() == 101);
}

TEST_CASE("catalog command") {
  const auto j = run_json(cmd_catalog, json_config());
  REQUIRE(j.size() == 4);
  CHECK(j[3]["name"] == "helix_12_5");
  CHECK(j[3]["valid_domain"][0].is_null());
  CHECK(j[2]["valid_domain"][0].get<double>() == Catch::Approx(1e-3));
  std::ostringstream text;
  CHECK(cmd_catalog(RunConfig{}, text) == kExitOk);
  CHECK(text.str().find("valid domain: [-inf") == std::string::npos);
  CHECK(text.str().find("unbounded") != std::string::npos);
}

TEST_CASE("frenet command writes the frame table") {
  auto cfg = json_config("helix_12_5");
  cfg.n = 201;
  cfg.output = temp_path("frame.csv");
  cfg.format = "csv";
  std::ostringstream out;
  CHECK(cmd_frenet(cfg, out) == kExitOk);
  std::ifstream in(cfg.output);
  std::string header;
  std::getline(in, header);
  CHECK(header == "s,Tx,Ty,Tz,Nx,Ny,Nz,Bx,By,Bz,kappa,tau,valid");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 201);
  std::remove(cfg.output.c_str());
}

TEST_CASE("frenet command on a line is a domain error") {
  const auto path = temp_path("line.csv");
  save_csv(testing::sample(Grid(0, 1, 21), [](oracle::Real s) { return oracle::V3{s, 0, 0}; }), path);
  RunConfig cfg;
  cfg.input = path;
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_frenet(cfg, out), DegenerateCurve);
  auto c = json_config();
  c.input = path;
  const auto j = run_json(cmd_classify, c);
  CHECK(j["is_line"] == true);
  std::remove(path.c_str());
}

TEST_CASE("direct command reports its checks") {
  const auto j = run_json(cmd_direct, json_config("helix_12_5"));
  CHECK(j["mannheim_check"] == "pass");
  CHECK(j["curvature_torsion_check"] == "pass");
  CHECK(j["sigma_it"]["mean"].get<double>() == Catch::Approx(2.4).epsilon(1e-4));
  CHECK(j["donor_recovery_max_rel"].get<double>() < 1e-3);
  CHECK(j["unit_field_deviation"].get<double>() < 1e-9);

  auto cfg = json_config("helix_12_5");
  cfg.family = "principal";
  const auto p = run_json(cmd_direct, cfg);
  CHECK(p["max_speed_deviation"].get<double>() < 1e-8);
}

TEST_CASE("classify command keys") {
  const auto j = run_json(cmd_classify, json_config("circular_helix"));
  for (const char* key : {"curve", "is_line", "is_plane", "is_general_helix", "is_slant_helix", "is_rectifying",
                          "helix_ratio_mean", "sigma_it_mean", "rectifying_slope", "normal_component"}) {
    CHECK(j.contains(key));
  }
  CHECK(j["is_general_helix"] == true);
  CHECK(j["is_rectifying"] == false);
  CHECK(j["helix_ratio_mean"].get<double>() == Catch::Approx(1).epsilon(1e-9));
}

TEST_CASE("od command on a donor whose OD curve is rectifying") {
  const Grid g(0, 20, 2001);
  auto pts = oracle::frenet_serret_curve([](oracle::Real s) { return 1 / (1 + (s + 1) * (s + 1)); },
                                         [](oracle::Real) { return 0.5L; }, 0, g.spacing(), g.size() - 1);
  const auto path = temp_path("control.csv");
  std::size_t k = 0;
  save_csv(testing::sample(g, [&](oracle::Real) { return pts[k++]; }), path);
  auto cfg = json_config();
  cfg.input = path;
  const auto j = run_json(cmd_od, cfg);
  CHECK(j["result"] == "pass");
  CHECK(j["unit_speed"] == true);
  std::remove(path.c_str());
}

TEST_CASE("od command rejects zero constants before computing") {
  auto cfg = json_config("helix_12_5");
  cfg.a = 0;
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_od(cfg, out), ConfigError);
}

TEST_CASE("verify filters and exit codes") {
  auto cfg = json_config("circular_helix");
  cfg.only = "mannheim";
  const auto j = run_json(cmd_verify, cfg);
  REQUIRE(j["checks"].size() == 1);
  CHECK(j["all_passed"] == true);

  cfg.only = "frenet-residual";
  cfg.tol.frenet = 1e-14;
  const auto tight = run_json(cmd_verify, cfg, kExitNumerical);
  CHECK(tight["all_passed"] == false);

  cfg.only = "nosuch";
  std::ostringstream out;
  CHECK_THROWS_AS(cmd_verify(cfg, out), ConfigError);
  cfg.only = "od-rectifying";
  CHECK_THROWS_AS(cmd_verify(cfg, out), ConfigError);
  cfg.only.clear();
  cfg.input = "x.csv";
  CHECK_THROWS_AS(cmd_verify(cfg, out), ConfigError);
}

TEST_CASE("verify suite lists every check id") {
  auto cfg = json_config();
  std::ostringstream out;
  cmd_verify(cfg, out);
  const auto j = Json::parse(out.str());
  std::set<std::string> seen;
  for (const auto& row : j["checks"]) seen.insert(row["check"].get<std::string>());
  CHECK(seen.size() == check_ids().size());
}
