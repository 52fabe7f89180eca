#include <doctest.h>

#include <cmath>

#include "circv/classv/frame.hpp"
#include "circv/classv/scenario.hpp"
#include "circv/errors.hpp"
#include "circv/fieldexpr/eval.hpp"

using namespace circv;
using namespace circv::classv;

namespace {

Scenario constants_scenario(double a0 = 3.0, double b0 = 1.0) {
  return builtin_scenario(Family::Constants,
                          {{"A0", std::to_string(a0)},
                           {"B0", std::to_string(b0)}});
}

Scenario broken_scenario() {
  Scenario s;
  s.name = "broken";
  s.A = fieldexpr::parse("x1");
  s.B = fieldexpr::parse("1");
  s.domain.min = Vec3(1.5, -1, -1);
  s.domain.max = Vec3(3, 1, 1);
  return s;
}

}  // namespace

TEST_CASE("structure affinors match their defining layout") {
  const StructureAffinors a = structure_affinors();
  CHECK(a.q == (Mat3() << 0, 1, 0, 0, 0, 1, 1, 0, 0).finished());
  CHECK(a.q_tilde == (Mat3() << 0, 0, 1, 1, 0, 0, 0, 1, 0).finished());
  CHECK(a.S == (Mat3() << -1, 1, 1, 1, -1, 1, 1, 1, -1).finished());
  CHECK(a.Phi == (Mat3() << 0, 1, 1, 1, 0, 1, 1, 1, 0).finished());

  // q^3 = E exactly, and q applied to e1 gives e2
  CHECK(Mat3(a.q * a.q * a.q) == Mat3::Identity());
  CHECK(apply_affinor(a.q, Vec3(1, 0, 0)) == Vec3(0, 1, 0));
  CHECK(Mat3(a.q * a.q_tilde) == Mat3::Identity());
}

TEST_CASE("metric frame for constants") {
  const Scenario s = constants_scenario();
  const MetricFrame fr = metrics_at(s, Point(0.25, -0.5, 0.75));
  CHECK(fr.g.mat() == tensor3::circulant(3, 1).mat());
  CHECK(fr.f.mat() == tensor3::circulant(2, 4).mat());
  CHECK_FALSE(fr.gbar.has_value());
  for (int k = 0; k < 3; ++k) {
    CHECK(fr.dg[k].max_abs() == 0.0);
    CHECK(fr.df[k].max_abs() == 0.0);
  }
}

TEST_CASE("deformed metric is the stated linear combination") {
  Scenario s = constants_scenario();
  s.alpha = fieldexpr::parse("1");
  s.beta = fieldexpr::parse("2");
  const MetricFrame fr = metrics_at(s, Point::Zero());
  REQUIRE(fr.gbar.has_value());
  // alpha g + beta f = circulant(3 + 2*2, 1 + 2*4)
  CHECK(fr.gbar->mat() == tensor3::circulant(7, 9).mat());
  CHECK_FALSE(fr.pure_beta_f);
}

TEST_CASE("det f matches 2(A-B)^2(A+2B)") {
  const Scenario s = constants_scenario();
  const MetricFrame fr = metrics_at(s, Point::Zero());
  // direct cofactor determinant at (A,B) = (3,1)
  const Mat3 f = fr.f.mat();
  const double cofactor =
      f(0, 0) * (f(1, 1) * f(2, 2) - f(1, 2) * f(2, 1)) -
      f(0, 1) * (f(1, 0) * f(2, 2) - f(1, 2) * f(2, 0)) +
      f(0, 2) * (f(1, 0) * f(2, 1) - f(1, 1) * f(2, 0));
  CHECK(cofactor == doctest::Approx(40.0));
  CHECK(det_f_relative_defect(fr) < 1e-15);

  const Scenario g = builtin_scenario(Family::GeneralFamily);
  for (const Point& p : sample_points(g, 50, 99)) {
    CHECK(det_f_relative_defect(metrics_at(g, p)) < 1e-10);
  }
}

TEST_CASE("frame construction rejects bad points") {
  const Scenario s = constants_scenario();
  CHECK_THROWS_AS(metrics_at(s, Point(5, 0, 0)), GuardError);  // outside box
  CHECK_THROWS_AS(metrics_at(broken_scenario(), Point::Zero()), GuardError);

  Scenario guarded = constants_scenario();
  guarded.guards.push_back(fieldexpr::parse("x1"));
  CHECK_THROWS_AS(metrics_at(guarded, Point(0.01, 0, 0)), GuardError);
  CHECK_NOTHROW(metrics_at(guarded, Point(0.5, 0, 0)));
}

TEST_CASE("ordering violations are reported") {
  Scenario s;
  s.name = "inverted";
  s.A = fieldexpr::parse("1");
  s.B = fieldexpr::parse("3");
  CHECK_THROWS_AS(metrics_at(s, Point::Zero()), OrderingError);
  // validate_point reports instead of throwing
  const ValidationReport rep = validate_point(s, Point::Zero());
  CHECK_FALSE(rep.positivity_pass);
  CHECK(rep.eig_perp == doctest::Approx(-2.0));
}

TEST_CASE("validation of the constants scenario") {
  const Scenario s = constants_scenario();
  const ValidationReport rep = validate_point(s, Point::Zero());
  CHECK(rep.classv_defect == 0.0);
  CHECK(rep.classv_pass);
  CHECK(rep.positivity_pass);
  CHECK(rep.eig_sum == doctest::Approx(5.0));
  CHECK(rep.eig_perp == doctest::Approx(2.0));
}

TEST_CASE("validation flags the broken scenario") {
  const ValidationReport rep = validate_point(broken_scenario(), Point(2, 0, 0));
  // grad A = (1,0,0), S grad B = 0
  CHECK(rep.classv_defect == doctest::Approx(1.0));
  CHECK_FALSE(rep.classv_pass);
}

TEST_CASE("u-family satisfies the gradient condition everywhere") {
  const Scenario s = builtin_scenario(Family::UFamily);
  for (const Point& p : sample_points(s, 100, 4242)) {
    CHECK(validate_point(s, p).classv_defect < 1e-12);
  }
}

TEST_CASE("general family satisfies the gradient condition everywhere") {
  const Scenario s = builtin_scenario(Family::GeneralFamily);
  for (const Point& p : sample_points(s, 200, 31337)) {
    CHECK(validate_point(s, p).classv_defect < 1e-10);
  }
}

TEST_CASE("identity suite at (A,B) = (3,1) against hand-multiplied forms") {
  const Scenario s = constants_scenario();
  const Point p(0.1, 0.2, 0.3);
  const DefectList defects = structure_identity_suite(s, p);
  REQUIRE(defects.size() == 8);

  // oracles: (J - I)(-2I + 4J) = 2I + 6J = 2g + f and
  //          f^{-1} = circulant(-0.3, 0.2), g f^{-1} = circulant(-0.5, 0.5)
  const Mat3 J = Mat3::Ones();
  const Mat3 I = Mat3::Identity();
  CHECK((Mat3((J - I) * (-2 * I + 4 * J)) - Mat3(2 * I + 6 * J))
            .cwiseAbs()
            .maxCoeff() < 1e-13);
  const Mat3 f = tensor3::circulant(2, 4).mat();
  CHECK((f * tensor3::circulant(-0.3, 0.2).mat() - I).cwiseAbs().maxCoeff() <
        1e-13);

  CHECK(defect_of(defects, "q_cubed") == 0.0);
  CHECK(defect_of(defects, "phi_f_is_2g_plus_f") < 1e-13);
  CHECK(defect_of(defects, "g_finv_is_half_s") < 1e-13);
  for (const auto& [key, defect] : defects) {
    CHECK_MESSAGE(defect < 1e-12, key);
  }
}

TEST_CASE("identity suite over every builtin family") {
  for (const Family family : {Family::Constants, Family::UFamily,
                              Family::GeneralFamily, Family::FlatBar}) {
    const Scenario s = builtin_scenario(family);
    for (const Point& p : sample_points(s, 60, 555)) {
      for (const auto& [key, defect] : structure_identity_suite(s, p)) {
        CHECK_MESSAGE(defect < 1e-12, s.name << ": " << key);
      }
    }
  }
}

TEST_CASE("positivity restated through the eigenvalues") {
  const Scenario s = builtin_scenario(Family::GeneralFamily);
  for (const Point& p : sample_points(s, 100, 77)) {
    const ValidationReport rep = validate_point(s, p);
    CHECK(rep.eig_sum > 0);
    CHECK(rep.eig_perp > 0);
    // eigenvector check: g (1,1,1) = (A + 2B)(1,1,1)
    const MetricFrame fr = metrics_at(s, p);
    const Vec3 ones(1, 1, 1);
    CHECK((fr.g.mat() * ones - rep.eig_sum * ones).cwiseAbs().maxCoeff() <
          1e-12 * rep.eig_sum);
  }
}

TEST_CASE("general family defaults") {
  const Scenario s = builtin_scenario(Family::GeneralFamily);
  CHECK(s.name == "general(eps=0.1,c0=1,k=1)");
  CHECK(s.domain.min == Vec3(-1, -1, -1));
  CHECK(s.domain.max == Vec3(1, 1, 1));
  // B at the origin is c0, A is c0 + k
  CHECK(fieldexpr::eval_value(s.B, Point::Zero()) == doctest::Approx(1.0));
  CHECK(fieldexpr::eval_value(s.A, Point::Zero()) == doctest::Approx(2.0));
}

TEST_CASE("builtin families validate their parameters") {
  CHECK_THROWS_AS(builtin_scenario(Family::Constants, {{"A0", "1"}, {"B0", "2"}}),
                  ScenarioError);
  CHECK_THROWS_AS(builtin_scenario(Family::UFamily, {{"c", "-1"}}),
                  ScenarioError);
  CHECK_THROWS_AS(builtin_scenario(Family::FlatBar, {{"c", "0"}}),
                  ScenarioError);
  CHECK_THROWS_AS(builtin_scenario(Family::Constants, {{"A0", "zebra"}}),
                  ScenarioError);
}

TEST_CASE("flat-bar guards and ordering hold on samples") {
  const Scenario s = builtin_scenario(
      Family::FlatBar, {{"p0", "3"}, {"q0", "0.5"}, {"c", "1"}, {"d", "10"}});
  REQUIRE(s.guards.size() == 2);
  const auto points = sample_points(s, 200, 2024);
  CHECK(points.size() == 200);
  for (const Point& p : points) {
    const MetricFrame fr = metrics_at(s, p);  // would throw on violation
    CHECK(fr.A.value() > fr.B.value());
    CHECK(fr.B.value() > 0);
  }
}

TEST_CASE("scenario json round trip") {
  const Scenario s = builtin_scenario(Family::FlatBar);
  const std::string text = scenario_to_json_text(s);
  const Scenario back = scenario_from_json_text(text);
  CHECK(back.name == s.name);
  CHECK(back.A.source() == s.A.source());
  CHECK(back.B.source() == s.B.source());
  REQUIRE(back.beta.has_value());
  CHECK(back.beta->source() == s.beta->source());
  CHECK(back.guards.size() == s.guards.size());
  CHECK(back.guard_margin == s.guard_margin);
  CHECK(back.domain.min == s.domain.min);
  CHECK(back.domain.max == s.domain.max);
}

TEST_CASE("scenario schema violations") {
  CHECK_THROWS_AS(scenario_from_json_text("not json"), ScenarioError);
  CHECK_THROWS_AS(scenario_from_json_text(R"({"name":"x","A":"1"})"),
                  ScenarioError);
  CHECK_THROWS_AS(scenario_from_json_text(
                      R"({"name":"x","A":"2","B":"1",
                          "domain":{"min":[1,0,0],"max":[0,1,1]}})"),
                  ScenarioError);
  CHECK_THROWS_AS(scenario_from_json_text(
                      R"({"name":"x","A":"2 +","B":"1",
                          "domain":{"min":[0,0,0],"max":[1,1,1]}})"),
                  ScenarioError);
  // defaults
  const Scenario s = scenario_from_json_text(
      R"({"name":"x","A":"2","B":"1",
          "domain":{"min":[-1,-1,-1],"max":[1,1,1]}})");
  CHECK(s.guard_margin == 0.05);
  CHECK(s.guards.empty());
  CHECK_FALSE(s.has_gbar());
}

TEST_CASE("sampling is deterministic and respects guards") {
  const Scenario s = builtin_scenario(Family::GeneralFamily);
  const auto a = sample_points(s, 25, 42);
  const auto b = sample_points(s, 25, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
  const auto c = sample_points(s, 25, 43);
  CHECK(a[0] != c[0]);

  Scenario starved = constants_scenario();
  starved.guards.push_back(fieldexpr::parse("-1"));
  CHECK_THROWS_AS(sample_points(starved, 5, 1), SamplingError);
}

TEST_CASE("u substitution in the u-family parameter") {
  const Scenario s =
      builtin_scenario(Family::UFamily, {{"b", "2 + 0.3*u"}, {"c", "0.5"}});
  const double at = fieldexpr::eval_value(s.B, Point(0.1, 0.2, 0.3));
  CHECK(at == doctest::Approx(2 + 0.3 * 0.6));
  // coordinates may be used directly as well
  const Scenario t = builtin_scenario(
      Family::UFamily, {{"b", "1+0.1*(x1+x2+x3)^2"}, {"c", "1"}});
  CHECK(fieldexpr::eval_value(t.B, Point(0.5, 0.5, 0.5)) ==
        doctest::Approx(1 + 0.1 * 1.5 * 1.5));
}
