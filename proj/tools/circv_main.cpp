// circv: numerical certification of circulant-metric 3-manifold identities.
//
// Subcommands:
//   validate <file>                      admissibility + class membership
//   report   <file> --point a,b,c        pointwise metrics and curvature
//   verify   <file> --suite S ...        run an identity suite over samples
//   scenario --family F [--params ...]   generate a stock scenario file
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 input error.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "circv/cli/run.hpp"
#include "circv/classv/scenario.hpp"
#include "circv/errors.hpp"

namespace {

circv::Point parse_point(const std::string& text) {
  circv::Point p;
  const int n = std::sscanf(text.c_str(), "%lf,%lf,%lf", &p[0], &p[1], &p[2]);
  if (n != 3) {
    throw circv::ScenarioError("--point expects three comma-separated numbers");
  }
  return p;
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& raw) {
  std::map<std::string, double> out;
  for (const auto& item : raw) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw circv::ScenarioError("--tol expects name=value, got '" + item + "'");
    }
    try {
      out[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw circv::ScenarioError("--tol value is not a number in '" + item + "'");
    }
  }
  return out;
}

std::map<std::string, std::string> parse_params(const std::string& raw) {
  std::map<std::string, std::string> out;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    auto comma = raw.find(',', pos);
    if (comma == std::string::npos) comma = raw.size();
    const std::string item = raw.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw circv::ScenarioError("--params expects k=v[,k=v...], got '" + item +
                                 "'");
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification engine for circulant-metric 3-manifolds"};
  app.require_subcommand(1);

  std::string path, point_text, suite = "all", format = "text";
  std::string family, params_text, out_path = "scenario.json";
  std::vector<std::string> tol_args;
  int samples = 100;
  std::uint64_t seed = 1;
  double tau0 = 0.0;
  bool tau0_set = false;

  auto* validate = app.add_subcommand("validate", "check a scenario file");
  validate->add_option("file", path, "scenario JSON file")->required();
  validate->add_option("--samples", samples, "points to sample (default 100)");
  validate->add_option("--seed", seed, "sampling seed (default 1)");

  auto* report = app.add_subcommand("report", "pointwise report");
  report->add_option("file", path, "scenario JSON file")->required();
  report->add_option("--point", point_text, "evaluation point, a,b,c")
      ->required();
  report->add_option("--tau", tau0)->each([&](const std::string&) {
    tau0_set = true;
  });

  auto* verify = app.add_subcommand("verify", "run an identity suite");
  verify->add_option("file", path, "scenario JSON file")->required();
  verify->add_option("--suite", suite,
                     "structure|connection|deformation|transfer|theorem2|"
                     "corollaries|all (default all)");
  verify->add_option("--samples", samples, "points to sample (default 100)");
  verify->add_option("--seed", seed, "sampling seed (default 1)");
  verify->add_option("--tol", tol_args,
                     "override a tolerance, name=value (repeatable)");
  verify->add_option("--point", point_text,
                     "evaluate at one explicit point instead of sampling");
  verify->add_option("--tau", tau0, "scalar curvature for synthetic checks")
      ->each([&](const std::string&) { tau0_set = true; });
  verify->add_option("--format", format)
      ->check(CLI::IsMember({"text", "json"}));

  auto* scenario = app.add_subcommand("scenario", "generate a stock scenario");
  scenario->add_option("--family", family,
                       "constants|u-family|general|flat-bar")
      ->required();
  scenario->add_option("--params", params_text, "family parameters, k=v,...");
  scenario->add_option("-o,--output", out_path,
                       "output path (default scenario.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (validate->parsed()) {
      const auto s = circv::classv::load_scenario(path);
      const auto sum = circv::cli::validate_scenario(s, samples, seed);
      std::printf("scenario: %s\n", s.name.c_str());
      std::printf("points sampled: %d\n", sum.points);
      std::printf("positivity: %s\n", sum.positivity_ok ? "pass" : "FAIL");
      std::printf("worst class membership defect: %.3e\n", sum.worst_classv);
      if (sum.worst_theorem1) {
        std::printf("worst alpha/beta condition defect: %.3e\n",
                    *sum.worst_theorem1);
      }
      std::printf("%s\n", sum.pass ? "PASS" : "FAIL");
      return sum.pass ? 0 : 1;
    }

    if (report->parsed()) {
      const auto s = circv::classv::load_scenario(path);
      const auto p = parse_point(point_text);
      std::optional<double> tau = tau0_set ? std::optional<double>(tau0)
                                           : std::nullopt;
      std::cout << circv::cli::report_text(s, p, tau);
      return 0;
    }

    if (verify->parsed()) {
      circv::cli::RunConfig cfg;
      cfg.scenario_path = path;
      cfg.suite = suite;
      cfg.samples = samples;
      cfg.seed = seed;
      cfg.tol_overrides = parse_tols(tol_args);
      if (!point_text.empty()) cfg.point = parse_point(point_text);
      if (tau0_set) cfg.tau0 = tau0;
      cfg.format = format == "json" ? circv::cli::RunConfig::Format::Json
                                    : circv::cli::RunConfig::Format::Text;
      const auto result = circv::cli::run(cfg);
      std::cout << (cfg.format == circv::cli::RunConfig::Format::Json
                        ? circv::cli::to_json(result)
                        : circv::cli::to_text(result));
      return circv::cli::exit_code(result);
    }

    if (scenario->parsed()) {
      const auto fam = circv::classv::family_from_name(family);
      const auto s =
          circv::classv::builtin_scenario(fam, parse_params(params_text));
      circv::classv::save_scenario(s, out_path);
      std::printf("wrote %s (%s)\n", out_path.c_str(), s.name.c_str());
      return 0;
    }
  } catch (const circv::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
