#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "zgs/dynamics.hpp"
#include "zgs/integrator.hpp"

namespace zgs {

inline constexpr int kSchemaVersion = 1;

struct GraphSpec {
  std::string generator = "explicit";  // explicit | path | ring | complete | random-connected
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based
  double edge_probability = 0.5;
  std::optional<std::uint64_t> seed;  // falls back to the scenario seed
};

struct RandomQuadraticSpec {
  double eig_min = 1.0;
  double eig_max = 1.0;
  double center_scale = 5.0;  // centers uniform in [-scale, scale]^n
};

struct ObjectivesSpec {
  enum class Mode { kExplicit, kTemplate, kRandomQuadratic };
  Mode mode = Mode::kExplicit;
  std::vector<Objective> per_node;  // kExplicit: one per node; kTemplate: exactly one
  RandomQuadraticSpec random;
};

struct CouplingSpec {
  enum class Kind { kQuadraticPotential, kRandomQuadraticPotential, kSumOfEndpoints, kElementwise };
  Kind kind = Kind::kQuadraticPotential;
  Eigen::MatrixXd A;  // kQuadraticPotential
  double eig_min = 1.0, eig_max = 1.0;  // kRandomQuadraticPotential
  Psi psi = Psi::kTanh;
};

struct InitSpec {
  bool explicit_states = false;
  std::vector<Eigen::VectorXd> states;
};

struct Scenario {
  int schema_version = kSchemaVersion;
  std::string name = "scenario";
  std::uint64_t seed = 0;
  int dim = 1;
  GraphSpec graph;
  ObjectivesSpec objectives;
  CouplingSpec default_coupling;
  std::map<Edge, CouplingSpec> coupling_overrides;  // keys 0-based
  InitSpec init;
  IntegratorConfig integrator;
  std::string csv_path;      // relative to the output directory
  std::string summary_path;
  std::vector<std::string> warnings;  // non-fatal parse findings (e.g. symmetrized matrices)
};

/// Parses the JSON scenario text. Throws ScenarioError naming the offending
/// field. Honors the ZGS_SEED environment variable when `apply_env` is set.
Scenario parse_scenario(const std::string& text, bool apply_env = true);
Scenario load_scenario(const std::filesystem::path& file, bool apply_env = true);

Graph build_graph(const Scenario& s);
/// Constructs the network problem; random components are drawn from the
/// scenario seed, so the result is seed-deterministic.
NetworkProblem build_problem(const Scenario& s);
StackedState initial_state(const Scenario& s, const NetworkProblem& p);

}  // namespace zgs
