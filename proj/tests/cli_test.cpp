#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "circv/cli/run.hpp"
#include "circv/classv/scenario.hpp"
#include "circv/errors.hpp"
#include "circv/fieldexpr/expr.hpp"

using namespace circv;
using namespace circv::cli;

namespace {

const CheckRecord& find_check(const SuiteResult& r, const std::string& id) {
  for (const auto& c : r.checks) {
    if (c.id == id) return c;
  }
  throw Error("missing check " + id);
}

std::string strip_wall_time(const std::string& json) {
  const auto pos = json.find("\"wall_ms\"");
  return pos == std::string::npos ? json : json.substr(0, pos);
}

classv::Scenario broken_scenario() {
  classv::Scenario s;
  s.name = "broken";
  s.A = fieldexpr::parse("x1");
  s.B = fieldexpr::parse("1");
  s.domain.min = Vec3(1.5, -1, -1);
  s.domain.max = Vec3(3, 1, 1);
  return s;
}

std::string write_temp(const classv::Scenario& s, const std::string& name) {
  const std::string path = std::string("circv_test_") + name + ".json";
  classv::save_scenario(s, path);
  return path;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CIRCV_CLI_PATH) + " " + args +
                          " > circv_cli_out.txt 2> circv_cli_err.txt";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("structure suite passes on constants") {
  RunConfig cfg;
  cfg.suite = "structure";
  cfg.samples = 50;
  cfg.seed = 7;
  const SuiteResult r =
      run(cfg, classv::builtin_scenario(classv::Family::Constants));
  CHECK(r.pass);
  CHECK(exit_code(r) == 0);
  for (const auto& c : r.checks) {
    CHECK_MESSAGE(c.defect < 1e-12, c.id);
  }
  CHECK(find_check(r, "structure.det_f").anchor ==
        "det f = 2 (A-B)^2 (A+2B)");
}

TEST_CASE("connection suite rejects the broken scenario") {
  RunConfig cfg;
  cfg.suite = "connection";
  cfg.samples = 20;
  cfg.seed = 3;
  const SuiteResult r = run(cfg, broken_scenario());
  CHECK_FALSE(r.pass);
  CHECK(exit_code(r) == 1);
  const CheckRecord& grad = find_check(r, "connection.gradient_condition");
  CHECK(grad.anchor == "Eq.(4) grad A = grad B . S");
  CHECK_FALSE(grad.pass);
  CHECK(grad.defect > 0.5);
  CHECK(find_check(r, "connection.nabla_q").defect > 1e-3);
}

TEST_CASE("theorem2 suite on the flat construction") {
  RunConfig cfg;
  cfg.suite = "theorem2";
  cfg.samples = 25;
  cfg.seed = 42;
  const SuiteResult r =
      run(cfg, classv::builtin_scenario(classv::Family::FlatBar));
  CHECK(r.pass);
  CHECK(find_check(r, "theorem2.tau_star_plus_tau").anchor == "tau* = -tau");
  CHECK(find_check(r, "theorem2.eq18_reconstruction").anchor ==
        "Eq.(18) reconstruction");
  CHECK(find_check(r, "theorem2.synthetic.eq33_ricci_form").pass);
}

TEST_CASE("deformation suite needs a beta-deformed scenario") {
  RunConfig cfg;
  cfg.suite = "deformation";
  CHECK_THROWS_AS(run(cfg, classv::builtin_scenario(classv::Family::Constants)),
                  ScenarioError);
}

TEST_CASE("explicit point runs skip sampling") {
  RunConfig cfg;
  cfg.suite = "structure";
  cfg.point = Point(0.25, 0.0, -0.25);
  const SuiteResult r =
      run(cfg, classv::builtin_scenario(classv::Family::Constants));
  CHECK(r.pass);
  for (const auto& c : r.checks) CHECK(c.point == *cfg.point);

  cfg.point = Point(7, 7, 7);
  CHECK_THROWS_AS(run(cfg, classv::builtin_scenario(classv::Family::Constants)),
                  GuardError);
}

TEST_CASE("json output is deterministic apart from the wall time") {
  RunConfig cfg;
  cfg.suite = "structure";
  cfg.samples = 100;
  cfg.seed = 42;
  const classv::Scenario s =
      classv::builtin_scenario(classv::Family::GeneralFamily);
  const SuiteResult first = run(cfg, s);
  const std::string a = to_json(first);
  const std::string b = to_json(run(cfg, s));
  CHECK(strip_wall_time(a) == strip_wall_time(b));
  CHECK(a.find("\"seed\": 42") != std::string::npos);
  CHECK(a.find("\"anchor\"") != std::string::npos);
  CHECK(a.find("\"tol\": 1e-10") != std::string::npos);

  // floats carry 17 significant digits: a sampled coordinate round-trips
  char expect[40];
  std::snprintf(expect, sizeof(expect), "%.17g", first.checks.at(0).point[0]);
  CHECK(a.find(expect) != std::string::npos);
}

TEST_CASE("tolerance overrides: flags win over the scenario file") {
  classv::Scenario s = classv::builtin_scenario(classv::Family::Constants);
  s.tolerances["structure.det_f"] = 1e-3;
  RunConfig cfg;
  cfg.suite = "structure";
  cfg.samples = 5;
  const SuiteResult file_tol = run(cfg, s);
  CHECK(find_check(file_tol, "structure.det_f").tol == 1e-3);

  cfg.tol_overrides["structure.det_f"] = 1e-5;
  const SuiteResult flag_tol = run(cfg, s);
  CHECK(find_check(flag_tol, "structure.det_f").tol == 1e-5);

  // family-level override
  cfg.tol_overrides.clear();
  cfg.tol_overrides["structure"] = 1e-4;
  const SuiteResult family_tol = run(cfg, s);
  CHECK(find_check(family_tol, "structure.q_cubed").tol == 1e-4);
}

TEST_CASE("unknown suites and bad sample counts are input errors") {
  RunConfig cfg;
  cfg.suite = "nonsense";
  CHECK_THROWS_AS(run(cfg, classv::builtin_scenario(classv::Family::Constants)),
                  ScenarioError);
  cfg.suite = "structure";
  cfg.samples = 0;
  CHECK_THROWS_AS(run(cfg, classv::builtin_scenario(classv::Family::Constants)),
                  ScenarioError);
}

TEST_CASE("suite 'all' skips deformation checks without beta") {
  RunConfig cfg;
  cfg.samples = 5;
  const SuiteResult r =
      run(cfg, classv::builtin_scenario(classv::Family::Constants));
  CHECK(r.pass);
  CHECK_FALSE(r.notes.empty());
  CHECK_THROWS_AS(find_check(r, "deformation.formula_vs_direct"), Error);
  // synthetic theorem checks still run
  CHECK(find_check(r, "theorem2.synthetic.tau_recomputed").pass);
}

TEST_CASE("suite 'all' tolerates a non-flat deformed metric") {
  classv::Scenario s = classv::builtin_scenario(classv::Family::GeneralFamily);
  s.beta = fieldexpr::parse("1/(x1+x2+x3+5)^2");
  RunConfig cfg;
  cfg.samples = 5;
  const SuiteResult r = run(cfg, s);
  CHECK(r.pass);
  CHECK_FALSE(r.notes.empty());
  CHECK(find_check(r, "transfer.eq17_vs_direct").pass);
  CHECK_THROWS_AS(find_check(r, "theorem2.eq20_ricci_form"), Error);
  CHECK(find_check(r, "theorem2.synthetic.eq20_ricci_form").pass);

  // explicit theorem2 on the same scenario is a premise violation
  cfg.suite = "theorem2";
  CHECK_THROWS_AS(run(cfg, s), PremiseError);
}

TEST_CASE("validate summary") {
  const auto good = validate_scenario(
      classv::builtin_scenario(classv::Family::GeneralFamily), 50, 7);
  CHECK(good.pass);
  CHECK(good.worst_classv < 1e-10);

  const auto bad = validate_scenario(broken_scenario(), 20, 7);
  CHECK_FALSE(bad.pass);
  CHECK(bad.worst_classv > 0.5);
}

TEST_CASE("report text shows the curvature summary") {
  const classv::Scenario s =
      classv::builtin_scenario(classv::Family::Constants);
  const std::string text = report_text(s, Point::Zero(), 6.0);
  CHECK(text.find("tau = 0") != std::string::npos);
  CHECK(text.find("mu(e1, q e1) direct   = -0.5") != std::string::npos);
  CHECK(text.find("Gamma(g)") != std::string::npos);

  // a flat u-family point reports vanishing curvature
  const classv::Scenario uf = classv::builtin_scenario(
      classv::Family::UFamily, {{"b", "1+0.1*(x1+x2+x3)^2"}, {"c", "1"}});
  const std::string flat = report_text(uf, Point(0.2, 0.1, -0.3), {});
  CHECK(flat.find("max |R(g)| = 0") != std::string::npos);
}

TEST_CASE("command line end to end") {
  const std::string constants =
      write_temp(classv::builtin_scenario(classv::Family::Constants),
                 "constants");
  const std::string broken = write_temp(broken_scenario(), "broken");

  CHECK(run_cli("verify " + constants + " --suite structure --samples 50 "
                "--seed 7") == 0);
  CHECK(run_cli("verify " + broken + " --suite connection --samples 10") == 1);
  CHECK(run_cli("verify missing_file.json --suite structure") == 2);
  CHECK(run_cli("verify " + constants + " --suite deformation") == 2);
  CHECK(run_cli("validate " + constants) == 0);
  CHECK(run_cli("report " + constants + " --point 0,0,0 --tau 6") == 0);
  CHECK(run_cli("scenario --family flat-bar -o circv_test_fb.json") == 0);
  CHECK(run_cli("verify circv_test_fb.json --suite deformation --samples 20 "
                "--seed 5") == 0);

  // generated flat-bar file carries the beta-denominator guard
  const classv::Scenario fb = classv::load_scenario("circv_test_fb.json");
  REQUIRE(fb.guards.size() == 2);
  CHECK(fb.guards[1].source().find("sqrt(2)") != std::string::npos);

  std::remove(constants.c_str());
  std::remove(broken.c_str());
  std::remove("circv_test_fb.json");
  std::remove("circv_cli_out.txt");
  std::remove("circv_cli_err.txt");
}
