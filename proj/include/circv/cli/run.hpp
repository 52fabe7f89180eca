#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "circv/classv/scenario.hpp"
#include "circv/types.hpp"

namespace circv::cli {

struct RunConfig {
  std::string scenario_path;
  std::string suite = "all";  // structure | connection | deformation |
                              // transfer | theorem2 | corollaries | all
  int samples = 100;
  std::uint64_t seed = 1;
  std::map<std::string, double> tol_overrides;  // flag overrides, win over file
  std::optional<Point> point;  // evaluate at this point instead of sampling
  std::optional<double> tau0;  // scalar curvature for synthetic/corollary runs
  enum class Format { Text, Json } format = Format::Text;
};

struct CheckRecord {
  std::string id;
  std::string anchor;   // the identity being certified, in formula text
  double defect = 0.0;  // worst over all evaluated points
  Point point = Point::Zero();  // where the worst defect occurred
  double tol = 0.0;
  bool pass = true;
};

struct SuiteResult {
  std::string scenario;
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;
  std::vector<std::string> notes;  // skipped sub-suites etc. (text output only)
  bool pass = true;
  double wall_ms = 0.0;
};

/// Runs the selected suites over sampled (or pinned) points of a loaded
/// scenario. Throws circv errors for input/validation problems; check
/// failures are reported through the records, not exceptions.
SuiteResult run(const RunConfig& config, const classv::Scenario& scenario);
SuiteResult run(const RunConfig& config);  // loads config.scenario_path

std::string to_json(const SuiteResult& result);
std::string to_text(const SuiteResult& result);

/// 0: every check passed; 1: at least one failed.
int exit_code(const SuiteResult& result);

/// Human-readable pointwise report: metrics, connections, curvature and the
/// scalar invariants; with tau0, the sectional-curvature cross-check.
std::string report_text(const classv::Scenario& s, const Point& p,
                        std::optional<double> tau0);

/// Per-point validation summary used by the `validate` subcommand.
struct ValidateSummary {
  int points = 0;
  double worst_classv = 0.0;
  std::optional<double> worst_theorem1;
  bool positivity_ok = true;
  bool pass = true;
};

ValidateSummary validate_scenario(const classv::Scenario& s, int samples,
                                  std::uint64_t seed);

}  // namespace circv::cli
