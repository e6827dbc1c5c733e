#include "zgs/cli.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zgs/errors.hpp"
#include "zgs/runner.hpp"

namespace zgs {

namespace {

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ScenarioError("--values: '" + item + "' is not a number");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ScenarioError("--values: '" + item + "' is not a number");
    }
    values.push_back(v);
  }
  return values;
}

Scenario load(const std::string& path, std::ostream& err) {
  Scenario s = load_scenario(path);
  for (const auto& w : s.warnings) err << "warning: " << w << "\n";
  return s;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-gradient-sum distributed optimization: simulate and analyze", "zgs"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = ".";
  std::string axis;
  std::string values;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write CSV + JSON summary");
  run->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  run->add_option("--out-dir", out_dir, "Output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "Repeat a scenario over one parameter axis");
  sweep_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  sweep_cmd->add_option("--axis", axis, "step-size | graph-size | curvature-ratio")->required();
  sweep_cmd->add_option("--values", values, "Comma-separated values")->required();
  sweep_cmd->add_option("--out-dir", out_dir, "Output directory");

  auto* analyze_cmd = app.add_subcommand("analyze", "Print rate bounds without integrating");
  analyze_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  auto* validate_cmd = app.add_subcommand("validate", "Parse the scenario and check x(0)");
  validate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) {
      const Scenario s = load(scenario_path, err);
      const RunResult r = run_scenario(s, out_dir);
      out << "wrote " << (std::filesystem::path(out_dir) / s.csv_path).string() << " and "
          << (std::filesystem::path(out_dir) / s.summary_path).string() << "\n";
      if (!r.summary.rates.applicable) out << "rate analysis: " << r.summary.rates.reason << "\n";
    } else if (sweep_cmd->parsed()) {
      const Scenario s = load(scenario_path, err);
      const auto rows = sweep(s, parse_axis(axis), parse_values(values), out_dir);
      out << sweep_csv(rows);
    } else if (analyze_cmd->parsed()) {
      out << summary_json(analyze(load(scenario_path, err)));
    } else if (validate_cmd->parsed()) {
      const Scenario s = load(scenario_path, err);
      const NetworkProblem p = build_problem(s);
      const CheckedState x0 = validate_initialization(p, initial_state(s, p));
      out << "ok: " << p.nodes() << " nodes, " << p.graph().edges().size()
          << " edges, dimension " << p.dim() << ", gradient-sum residual "
          << format_number(x0.residual()) << "\n";
    }
  } catch (const ManifoldViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitManifold;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidGraph& e) {
    err << "error: graph: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIntegration;
  }
  return kExitOk;
}

}  // namespace zgs
