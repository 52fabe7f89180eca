#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circv/fieldexpr/expr.hpp"
#include "circv/types.hpp"

namespace circv::classv {

struct DomainBox {
  Vec3 min = Vec3::Constant(-1.0);
  Vec3 max = Vec3::Constant(1.0);

  bool contains(const Point& p) const {
    for (int i = 0; i < 3; ++i)
      if (!(p[i] >= min[i] && p[i] <= max[i])) return false;
    return true;
  }
};

/// One manifold instance: the scalar fields that generate the structure
/// tensors, the sampling box, and guard expressions that keep samples away
/// from singular loci (each guard must exceed guard_margin).
struct Scenario {
  std::string name;
  fieldexpr::ScalarField A, B;
  std::optional<fieldexpr::ScalarField> alpha, beta;
  DomainBox domain;
  std::vector<fieldexpr::ScalarField> guards;
  double guard_margin = 0.05;
  std::map<std::string, double> tolerances;

  bool has_gbar() const { return alpha.has_value() || beta.has_value(); }
  /// True when the deformed metric is exactly beta * f (no alpha term).
  bool pure_beta_f() const { return beta.has_value() && !alpha.has_value(); }
};

Scenario scenario_from_json_text(const std::string& text);
std::string scenario_to_json_text(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);

enum class Family { Constants, UFamily, GeneralFamily, FlatBar };

/// Builds one of the stock scenario families. Parameters (all optional,
/// with documented defaults):
///   constants: A0 (3), B0 (1)                       -- requires A0 > B0 > 0
///   u_family:  b ("1+0.1*u^2"), c (1)               -- b is an expression in
///              u; the identifier u stands for x1+x2+x3. c > 0.
///   general:   eps (0.1), c0 (1), k (1)
///   flat_bar:  p0 (3), q0 (0.5), c (1), d (10)      -- c > 0
Scenario builtin_scenario(Family family,
                          const std::map<std::string, std::string>& params = {});

Family family_from_name(const std::string& name);  // throws ScenarioError

/// True when p lies in the box, every guard exceeds the margin and
/// A > B > 0 there. Domain errors during evaluation count as rejection.
bool admissible(const Scenario& s, const Point& p);

/// Deterministic rejection sampling: uniform in the box, keep admissible
/// points, give up (SamplingError) after 100 * count attempts.
std::vector<Point> sample_points(const Scenario& s, int count,
                                 std::uint64_t seed);

}  // namespace circv::classv
