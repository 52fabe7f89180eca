#include "circv/classv/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "circv/errors.hpp"
#include "circv/numfmt.hpp"
#include "circv/fieldexpr/eval.hpp"
#include "circv/rng.hpp"

namespace circv::classv {

using json = nlohmann::json;

namespace {

fieldexpr::ScalarField parse_field(const std::string& text,
                                   const std::string& key) {
  try {
    return fieldexpr::parse(text);
  } catch (const ParseError& e) {
    throw ScenarioError("field '" + key + "': " + e.what());
  }
}

Vec3 vec3_from_json(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 3) {
    throw ScenarioError("'" + key + "' must be an array of 3 numbers");
  }
  Vec3 v;
  for (int i = 0; i < 3; ++i) {
    if (!j[i].is_number()) {
      throw ScenarioError("'" + key + "' must be an array of 3 numbers");
    }
    v[i] = j[i].get<double>();
  }
  return v;
}

double number_param(const std::map<std::string, std::string>& params,
                    const std::string& key, double fallback) {
  const auto it = params.find(key);
  if (it == params.end()) return fallback;
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw ScenarioError("parameter '" + key + "' is not a number: '" +
                        it->second + "'");
  }
}

std::string string_param(const std::map<std::string, std::string>& params,
                         const std::string& key, const std::string& fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

/// Replaces the standalone identifier u with (x1+x2+x3). Operates on the
/// raw text so that family parameters can be written as functions of u.
std::string substitute_u(const std::string& text) {
  std::string out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const bool boundary_before =
        i == 0 || (!std::isalnum(static_cast<unsigned char>(text[i - 1])) &&
                   text[i - 1] != '_');
    const bool boundary_after =
        i + 1 >= text.size() ||
        (!std::isalnum(static_cast<unsigned char>(text[i + 1])) &&
         text[i + 1] != '_');
    if (text[i] == 'u' && boundary_before && boundary_after) {
      out += "(x1+x2+x3)";
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace

Scenario scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ScenarioError("scenario must be a JSON object");

  Scenario s;
  for (const char* key : {"name", "A", "B"}) {
    if (!j.contains(key) || !j[key].is_string()) {
      throw ScenarioError(std::string("missing required string key '") + key +
                          "'");
    }
  }
  s.name = j["name"].get<std::string>();
  s.A = parse_field(j["A"].get<std::string>(), "A");
  s.B = parse_field(j["B"].get<std::string>(), "B");
  if (j.contains("alpha")) {
    s.alpha = parse_field(j["alpha"].get<std::string>(), "alpha");
  }
  if (j.contains("beta")) {
    s.beta = parse_field(j["beta"].get<std::string>(), "beta");
  }

  if (!j.contains("domain") || !j["domain"].is_object()) {
    throw ScenarioError("missing required object key 'domain'");
  }
  s.domain.min = vec3_from_json(j["domain"]["min"], "domain.min");
  s.domain.max = vec3_from_json(j["domain"]["max"], "domain.max");
  for (int i = 0; i < 3; ++i) {
    if (!(s.domain.min[i] < s.domain.max[i])) {
      throw ScenarioError("domain box is empty: min must be < max");
    }
  }

  if (j.contains("guards")) {
    if (!j["guards"].is_array()) throw ScenarioError("'guards' must be an array");
    int idx = 0;
    for (const auto& g : j["guards"]) {
      if (!g.is_string()) throw ScenarioError("'guards' entries must be strings");
      s.guards.push_back(
          parse_field(g.get<std::string>(), "guards[" + std::to_string(idx) + "]"));
      ++idx;
    }
  }
  if (j.contains("guard_margin")) {
    if (!j["guard_margin"].is_number()) {
      throw ScenarioError("'guard_margin' must be a number");
    }
    s.guard_margin = j["guard_margin"].get<double>();
  }
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) {
      throw ScenarioError("'tolerances' must be an object");
    }
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!v.is_number()) throw ScenarioError("tolerance values must be numbers");
      s.tolerances[k] = v.get<double>();
    }
  }
  return s;
}

std::string scenario_to_json_text(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["A"] = s.A.source();
  j["B"] = s.B.source();
  if (s.alpha) j["alpha"] = s.alpha->source();
  if (s.beta) j["beta"] = s.beta->source();
  j["domain"]["min"] = {s.domain.min[0], s.domain.min[1], s.domain.min[2]};
  j["domain"]["max"] = {s.domain.max[0], s.domain.max[1], s.domain.max[2]};
  if (!s.guards.empty()) {
    json guards = json::array();
    for (const auto& g : s.guards) guards.push_back(g.source());
    j["guards"] = guards;
  }
  j["guard_margin"] = s.guard_margin;
  if (!s.tolerances.empty()) j["tolerances"] = s.tolerances;
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return scenario_from_json_text(ss.str());
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ScenarioError("cannot write scenario file '" + path + "'");
  out << scenario_to_json_text(s);
}

Family family_from_name(const std::string& name) {
  if (name == "constants") return Family::Constants;
  if (name == "u-family" || name == "u_family") return Family::UFamily;
  if (name == "general" || name == "general_family") return Family::GeneralFamily;
  if (name == "flat-bar" || name == "flat_bar") return Family::FlatBar;
  throw ScenarioError("unknown scenario family '" + name + "'");
}

Scenario builtin_scenario(Family family,
                          const std::map<std::string, std::string>& params) {
  Scenario s;
  switch (family) {
    case Family::Constants: {
      const double a0 = number_param(params, "A0", 3.0);
      const double b0 = number_param(params, "B0", 1.0);
      if (!(a0 > b0 && b0 > 0)) {
        throw ScenarioError("constants family requires A0 > B0 > 0");
      }
      s.name = "constants(A0=" + format_roundtrip(a0) + ",B0=" + format_roundtrip(b0) + ")";
      s.A = fieldexpr::parse(format_roundtrip(a0));
      s.B = fieldexpr::parse(format_roundtrip(b0));
      break;
    }
    case Family::UFamily: {
      // B = b(u) with u = x1+x2+x3; A = B + c. grad B is then parallel to
      // (1,1,1), which S maps to itself, so grad A = grad B . S holds.
      const std::string b_expr = string_param(params, "b", "1+0.1*u^2");
      const double c = number_param(params, "c", 1.0);
      if (!(c > 0)) throw ScenarioError("u_family requires c > 0");
      const std::string b_text = substitute_u(b_expr);
      s.name = "u_family(b=" + b_expr + ",c=" + format_roundtrip(c) + ")";
      s.B = fieldexpr::parse(b_text);
      s.A = fieldexpr::parse("(" + b_text + ") + " + format_roundtrip(c));
      s.guards.push_back(s.B);  // keep B comfortably positive
      break;
    }
    case Family::GeneralFamily: {
      // B = eps sin(x1-x2) + (c0 + 0.1 u^2), A = (c0 + 0.1 u^2)
      //     - 2 eps sin(x1-x2) + k.
      const double eps = number_param(params, "eps", 0.1);
      const double c0 = number_param(params, "c0", 1.0);
      const double k = number_param(params, "k", 1.0);
      s.name = "general(eps=" + format_roundtrip(eps) + ",c0=" + format_roundtrip(c0) +
               ",k=" + format_roundtrip(k) + ")";
      const std::string phi = "(" + format_roundtrip(c0) + " + 0.1*(x1+x2+x3)^2)";
      const std::string psi = format_roundtrip(eps) + "*sin(x1 - x2)";
      s.B = fieldexpr::parse(psi + " + " + phi);
      s.A = fieldexpr::parse(phi + " - 2*" + psi + " + " + format_roundtrip(k));
      s.guards.push_back(s.B);
      s.guards.push_back(
          fieldexpr::parse("(" + s.A.source() + ") - (" + s.B.source() + ")"));
      break;
    }
    case Family::FlatBar: {
      // u-family base with B = ((p0 + q0 u/sqrt(3))^2 - 2c)/6, A = B + c,
      // and beta = 1/Omega^2 where Omega = p0 u/sqrt(3) + q0 u^2/6
      //          + sqrt(c)(x1-x2)/sqrt(2) + d.
      const double p0 = number_param(params, "p0", 3.0);
      const double q0 = number_param(params, "q0", 0.5);
      const double c = number_param(params, "c", 1.0);
      const double d = number_param(params, "d", 10.0);
      if (!(c > 0)) throw ScenarioError("flat_bar requires c > 0");
      s.name = "flat_bar(p0=" + format_roundtrip(p0) + ",q0=" + format_roundtrip(q0) +
               ",c=" + format_roundtrip(c) + ",d=" + format_roundtrip(d) + ")";
      const std::string lin =
          "(" + format_roundtrip(p0) + " + " + format_roundtrip(q0) + "*(x1+x2+x3)/sqrt(3))";
      const std::string b_text =
          "(" + lin + "^2 - " + format_roundtrip(2 * c) + ")/6";
      const std::string omega = "(" + format_roundtrip(p0) + "*(x1+x2+x3)/sqrt(3) + " +
                                format_roundtrip(q0) + "*(x1+x2+x3)^2/6 + sqrt(" +
                                format_roundtrip(c) + ")*(x1 - x2)/sqrt(2) + " + format_roundtrip(d) +
                                ")";
      s.B = fieldexpr::parse(b_text);
      s.A = fieldexpr::parse("(" + b_text + ") + " + format_roundtrip(c));
      s.beta = fieldexpr::parse(omega + "^-2");
      s.guards.push_back(
          fieldexpr::parse(lin + "^2 - " + format_roundtrip(2 * c)));  // B > 0
      s.guards.push_back(fieldexpr::parse(omega + "^2"));   // beta finite
      break;
    }
  }
  return s;
}

bool admissible(const Scenario& s, const Point& p) {
  if (!s.domain.contains(p)) return false;
  try {
    for (const auto& g : s.guards) {
      if (!(fieldexpr::eval_value(g, p) > s.guard_margin)) return false;
    }
    const double a = fieldexpr::eval_value(s.A, p);
    const double b = fieldexpr::eval_value(s.B, p);
    return a > b && b > 0;
  } catch (const DomainError&) {
    return false;
  }
}

std::vector<Point> sample_points(const Scenario& s, int count,
                                 std::uint64_t seed) {
  if (count < 1) throw SamplingError("sample count must be >= 1");
  SplitMix64 rng(seed);
  std::vector<Point> points;
  points.reserve(static_cast<std::size_t>(count));
  const long long max_attempts = 100LL * count;
  for (long long attempt = 0;
       attempt < max_attempts && points.size() < static_cast<std::size_t>(count);
       ++attempt) {
    Point p;
    for (int i = 0; i < 3; ++i) {
      p[i] = rng.uniform(s.domain.min[i], s.domain.max[i]);
    }
    if (admissible(s, p)) points.push_back(p);
  }
  if (points.size() < static_cast<std::size_t>(count)) {
    throw SamplingError(
        "could not find " + std::to_string(count) + " admissible points in " +
        std::to_string(max_attempts) + " attempts (found " +
        std::to_string(points.size()) + "); check guards and the domain box");
  }
  return points;
}

}  // namespace circv::classv
