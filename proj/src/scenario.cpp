#include "zgs/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "zgs/errors.hpp"
#include "zgs/linalg.hpp"
#include "zgs/random.hpp"

namespace zgs {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ScenarioError(field + ": " + what);
}

const json& require(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object() || !obj.contains(key)) fail(path + "." + key, "missing");
  return obj.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& path) {
  if (!obj.contains(key)) return fallback;
  return number(obj.at(key), path + "." + key);
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string string_of(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

Eigen::VectorXd vector_of(const json& j, int n, const std::string& path) {
  Eigen::VectorXd v(n);
  if (j.is_number() && n == 1) {
    v(0) = j.get<double>();
    return v;
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(path, "expected an array of " + std::to_string(n) + " numbers");
  }
  for (int i = 0; i < n; ++i) v(i) = number(j[i], path + "[" + std::to_string(i) + "]");
  return v;
}

// Row-major nested array, or a number meaning a multiple of the identity.
Eigen::MatrixXd matrix_of(const json& j, int n, const std::string& path,
                          std::vector<std::string>& warnings) {
  if (j.is_number()) return j.get<double>() * Eigen::MatrixXd::Identity(n, n);
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    fail(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto row = vector_of(j[r], n, path + "[" + std::to_string(r) + "]");
    m.row(r) = row.transpose();
  }
  double asym = 0.0;
  m = symmetrize(m, &asym);
  if (asym > 1e-9) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", asym);
    warnings.push_back(path + ": asymmetric by " + buf + ", symmetrized as (A + A^T)/2");
  }
  return m;
}

Objective objective_of(const json& j, int n, const std::string& path,
                       std::vector<std::string>& warnings) {
  const std::string kind = string_of(require(j, "kind", path), path + ".kind");
  try {
    if (kind == "quadratic") {
      const Eigen::MatrixXd A = matrix_of(require(j, "A", path), n, path + ".A", warnings);
      if (j.contains("center")) {
        return Objective::weighted_quadratic(A, vector_of(j.at("center"), n, path + ".center"));
      }
      Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
      if (j.contains("b")) b = vector_of(j.at("b"), n, path + ".b");
      return Objective(Quadratic{A, b, number_or(j, "c", 0.0, path)});
    }
    if (kind == "logistic") {
      RegularizedLogistic l;
      l.theta = number(require(j, "theta", path), path + ".theta");
      if (j.contains("samples")) {
        const auto& s = j.at("samples");
        if (!s.is_array()) fail(path + ".samples", "expected an array");
        for (std::size_t k = 0; k < s.size(); ++k) {
          const std::string sp = path + ".samples[" + std::to_string(k) + "]";
          l.samples.push_back({vector_of(require(s[k], "a", sp), n, sp + ".a"),
                               integer(require(s[k], "label", sp), sp + ".label")});
        }
      }
      return Objective(n, std::move(l));
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown objective kind '" + kind + "'");
}

CouplingSpec coupling_of(const json& j, int n, const std::string& path,
                         std::vector<std::string>& warnings) {
  CouplingSpec c;
  const std::string kind = string_of(require(j, "kind", path), path + ".kind");
  if (kind == "elementwise") {
    c.kind = CouplingSpec::Kind::kElementwise;
    const std::string psi = j.contains("psi") ? string_of(j.at("psi"), path + ".psi") : "tanh";
    if (psi == "tanh") {
      c.psi = Psi::kTanh;
    } else if (psi == "rational") {
      c.psi = Psi::kRational;
    } else {
      fail(path + ".psi", "expected 'tanh' or 'rational'");
    }
    return c;
  }
  if (kind != "gradient_diff") fail(path + ".kind", "unknown coupling kind '" + kind + "'");
  if (!j.contains("potential")) {
    c.A = Eigen::MatrixXd::Identity(n, n);
    return c;
  }
  const auto& pot = j.at("potential");
  const std::string pp = path + ".potential";
  const std::string pk = string_of(require(pot, "kind", pp), pp + ".kind");
  if (pk == "quadratic") {
    c.kind = CouplingSpec::Kind::kQuadraticPotential;
    c.A = matrix_of(require(pot, "A", pp), n, pp + ".A", warnings);
    try {
      (void)LinkPotential::quadratic(c.A);
    } catch (const Error& e) {
      fail(pp + ".A", e.what());
    }
  } else if (pk == "random_quadratic") {
    c.kind = CouplingSpec::Kind::kRandomQuadraticPotential;
    c.eig_min = number_or(pot, "eig_min", 1.0, pp);
    c.eig_max = number_or(pot, "eig_max", c.eig_min, pp);
    if (!(c.eig_min > 0.0 && c.eig_max >= c.eig_min)) {
      fail(pp, "require 0 < eig_min <= eig_max");
    }
  } else if (pk == "sum_of_endpoints") {
    c.kind = CouplingSpec::Kind::kSumOfEndpoints;
  } else {
    fail(pp + ".kind", "unknown potential kind '" + pk + "'");
  }
  return c;
}

std::pair<int, int> edge_of(const json& j, int nodes, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [i, j]");
  const int a = integer(j[0], path + "[0]");
  const int b = integer(j[1], path + "[1]");
  if (a < 1 || a > nodes || b < 1 || b > nodes) {
    fail(path, "node index out of range 1.." + std::to_string(nodes));
  }
  return {a - 1, b - 1};
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

enum Stream : std::uint64_t { kGraphStream = 1, kObjectiveStream = 2, kLinkStream = 3 };

std::uint64_t stream_seed(std::uint64_t seed, Stream s) { return splitmix(seed ^ splitmix(s)); }

}  // namespace

Scenario parse_scenario(const std::string& text, bool apply_env) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) fail("scenario", "top level must be an object");

  Scenario s;
  s.schema_version = integer(require(root, "schema_version", "scenario"), "schema_version");
  if (s.schema_version != kSchemaVersion) {
    fail("schema_version", "unsupported version " + std::to_string(s.schema_version));
  }
  if (root.contains("name")) s.name = string_of(root.at("name"), "name");
  if (root.contains("seed")) {
    const auto& sj = root.at("seed");
    if (!sj.is_number_unsigned()) fail("seed", "expected a non-negative integer");
    s.seed = sj.get<std::uint64_t>();
  }
  if (apply_env) {
    if (const char* env = std::getenv("ZGS_SEED"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end == nullptr || *end != '\0') fail("ZGS_SEED", "expected a non-negative integer");
      s.seed = v;
    }
  }
  s.dim = root.contains("dimension") ? integer(root.at("dimension"), "dimension") : 1;
  if (s.dim < 1) fail("dimension", "must be >= 1");
  const int n = s.dim;

  // graph
  const auto& g = require(root, "graph", "scenario");
  s.graph.nodes = integer(require(g, "nodes", "graph"), "graph.nodes");
  if (s.graph.nodes < 2) fail("graph.nodes", "must be >= 2");
  s.graph.generator = g.contains("generator") ? string_of(g.at("generator"), "graph.generator")
                                              : std::string("explicit");
  if (s.graph.generator == "explicit") {
    const auto& e = require(g, "edges", "graph");
    if (!e.is_array()) fail("graph.edges", "expected an array of [i, j] pairs");
    for (std::size_t k = 0; k < e.size(); ++k) {
      s.graph.edges.push_back(edge_of(e[k], s.graph.nodes, "graph.edges[" + std::to_string(k) + "]"));
    }
  } else if (s.graph.generator == "random-connected") {
    s.graph.edge_probability = number_or(g, "edge_probability", 0.5, "graph");
    if (!(s.graph.edge_probability > 0.0 && s.graph.edge_probability <= 1.0)) {
      fail("graph.edge_probability", "must be in (0, 1]");
    }
    if (g.contains("seed")) {
      if (!g.at("seed").is_number_unsigned()) fail("graph.seed", "expected a non-negative integer");
      s.graph.seed = g.at("seed").get<std::uint64_t>();
    }
  } else if (s.graph.generator != "path" && s.graph.generator != "ring" &&
             s.graph.generator != "complete") {
    fail("graph.generator", "unknown generator '" + s.graph.generator + "'");
  }
  try {
    (void)build_graph(s);
  } catch (const InvalidGraph& e) {
    fail("graph", e.what());
  }

  // objectives
  const auto& o = require(root, "objectives", "scenario");
  if (o.is_array()) {
    s.objectives.mode = ObjectivesSpec::Mode::kExplicit;
    if (static_cast<int>(o.size()) != s.graph.nodes) {
      fail("objectives", "expected " + std::to_string(s.graph.nodes) + " entries, got " +
                             std::to_string(o.size()));
    }
    for (std::size_t k = 0; k < o.size(); ++k) {
      s.objectives.per_node.push_back(
          objective_of(o[k], n, "objectives[" + std::to_string(k) + "]", s.warnings));
    }
  } else if (o.is_object() && o.contains("template")) {
    s.objectives.mode = ObjectivesSpec::Mode::kTemplate;
    s.objectives.per_node.push_back(
        objective_of(o.at("template"), n, "objectives.template", s.warnings));
  } else if (o.is_object() && o.contains("random_quadratic")) {
    s.objectives.mode = ObjectivesSpec::Mode::kRandomQuadratic;
    const auto& r = o.at("random_quadratic");
    const std::string rp = "objectives.random_quadratic";
    s.objectives.random.eig_min = number_or(r, "eig_min", 1.0, rp);
    s.objectives.random.eig_max = number_or(r, "eig_max", s.objectives.random.eig_min, rp);
    s.objectives.random.center_scale = number_or(r, "center_scale", 5.0, rp);
    if (!(s.objectives.random.eig_min > 0.0 &&
          s.objectives.random.eig_max >= s.objectives.random.eig_min)) {
      fail(rp, "require 0 < eig_min <= eig_max");
    }
  } else {
    fail("objectives", "expected an array, {\"template\": ...} or {\"random_quadratic\": ...}");
  }

  // couplings
  s.default_coupling.A = Eigen::MatrixXd::Identity(n, n);
  if (root.contains("coupling")) {
    const auto& c = root.at("coupling");
    if (!c.is_object()) fail("coupling", "expected an object");
    if (c.contains("default")) {
      s.default_coupling = coupling_of(c.at("default"), n, "coupling.default", s.warnings);
    }
    if (c.contains("overrides")) {
      const auto& ov = c.at("overrides");
      if (!ov.is_array()) fail("coupling.overrides", "expected an array");
      for (std::size_t k = 0; k < ov.size(); ++k) {
        const std::string op = "coupling.overrides[" + std::to_string(k) + "]";
        const auto [a, b] = edge_of(require(ov[k], "edge", op), s.graph.nodes, op + ".edge");
        const Edge e{std::min(a, b), std::max(a, b)};
        if (s.graph.generator == "explicit" && build_graph(s).edge_index(e.lo, e.hi) < 0) {
          fail(op + ".edge", "not an edge of the graph");
        }
        s.coupling_overrides[e] = coupling_of(ov[k], n, op, s.warnings);
      }
    }
  }

  // initialization
  if (root.contains("initialization")) {
    const auto& in = root.at("initialization");
    const std::string kind =
        string_of(require(in, "kind", "initialization"), "initialization.kind");
    if (kind == "explicit") {
      s.init.explicit_states = true;
      const auto& st = require(in, "states", "initialization");
      if (!st.is_array() || static_cast<int>(st.size()) != s.graph.nodes) {
        fail("initialization.states", "expected " + std::to_string(s.graph.nodes) + " vectors");
      }
      for (std::size_t k = 0; k < st.size(); ++k) {
        s.init.states.push_back(
            vector_of(st[k], n, "initialization.states[" + std::to_string(k) + "]"));
      }
    } else if (kind != "local_minimizers") {
      fail("initialization.kind", "expected 'local_minimizers' or 'explicit'");
    }
  }

  // integrator
  if (root.contains("integrator")) {
    const auto& ij = root.at("integrator");
    const std::string ip = "integrator";
    auto& cfg = s.integrator;
    const std::string method = ij.contains("method") ? string_of(ij.at("method"), ip + ".method")
                                                     : std::string("rk4");
    if (method == "rk4") {
      cfg.method = Method::kRk4Fixed;
    } else if (method == "rk45") {
      cfg.method = Method::kRk45Adaptive;
    } else {
      fail(ip + ".method", "expected 'rk4' or 'rk45'");
    }
    cfg.step = number_or(ij, "step", cfg.step, ip);
    cfg.abs_tol = number_or(ij, "abs_tol", cfg.abs_tol, ip);
    cfg.rel_tol = number_or(ij, "rel_tol", cfg.rel_tol, ip);
    cfg.h_init = number_or(ij, "h_init", cfg.h_init, ip);
    cfg.h_min = number_or(ij, "h_min", cfg.h_min, ip);
    cfg.h_max = number_or(ij, "h_max", cfg.h_max, ip);
    cfg.t_end = number_or(ij, "t_end", cfg.t_end, ip);
    cfg.sample_every = number_or(ij, "sample_every", cfg.sample_every, ip);
  }
  try {
    s.integrator.validate();
  } catch (const InvalidArgument& e) {
    throw ScenarioError(e.what());
  }

  s.csv_path = s.name + ".csv";
  s.summary_path = s.name + ".json";
  if (root.contains("output")) {
    const auto& out = root.at("output");
    if (out.contains("csv")) s.csv_path = string_of(out.at("csv"), "output.csv");
    if (out.contains("summary")) s.summary_path = string_of(out.at("summary"), "output.summary");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& file, bool apply_env) {
  std::ifstream in(file);
  if (!in) throw ScenarioError(file.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), apply_env);
}

Graph build_graph(const Scenario& s) {
  const auto& g = s.graph;
  if (g.generator == "path") return Graph::path(g.nodes);
  if (g.generator == "ring") return Graph::ring(g.nodes);
  if (g.generator == "complete") return Graph::complete(g.nodes);
  if (g.generator == "random-connected") {
    return Graph::random_connected(g.nodes, g.edge_probability,
                                   g.seed ? *g.seed : stream_seed(s.seed, kGraphStream));
  }
  return Graph(g.nodes, g.edges);
}

NetworkProblem build_problem(const Scenario& s) {
  Graph graph = build_graph(s);
  const int N = graph.size();
  const int n = s.dim;

  std::vector<Objective> objectives;
  switch (s.objectives.mode) {
    case ObjectivesSpec::Mode::kExplicit:
      if (static_cast<int>(s.objectives.per_node.size()) != N) {
        throw ScenarioError("objectives: expected " + std::to_string(N) + " entries");
      }
      objectives = s.objectives.per_node;
      break;
    case ObjectivesSpec::Mode::kTemplate:
      objectives.assign(static_cast<std::size_t>(N), s.objectives.per_node.front());
      break;
    case ObjectivesSpec::Mode::kRandomQuadratic: {
      Rng rng(stream_seed(s.seed, kObjectiveStream));
      const auto& r = s.objectives.random;
      for (int i = 0; i < N; ++i) {
        const Eigen::MatrixXd W = rng.spd(n, r.eig_min, r.eig_max);
        const Eigen::VectorXd center = rng.uniform_vector(n, -r.center_scale, r.center_scale);
        objectives.push_back(Objective::weighted_quadratic(W, center));
      }
      break;
    }
  }

  Rng link_rng(stream_seed(s.seed, kLinkStream));
  std::vector<EdgeCoupling> couplings;
  for (const auto& e : graph.edges()) {
    const auto it = s.coupling_overrides.find(e);
    const CouplingSpec& c = it != s.coupling_overrides.end() ? it->second : s.default_coupling;
    switch (c.kind) {
      case CouplingSpec::Kind::kQuadraticPotential:
        couplings.emplace_back(e, GradientDiff{LinkPotential::quadratic(c.A)});
        break;
      case CouplingSpec::Kind::kRandomQuadraticPotential:
        couplings.emplace_back(
            e, GradientDiff{LinkPotential::quadratic(link_rng.spd(n, c.eig_min, c.eig_max))});
        break;
      case CouplingSpec::Kind::kSumOfEndpoints:
        couplings.emplace_back(
            e, GradientDiff{LinkPotential::sum_of_endpoints(objectives[e.lo], objectives[e.hi])});
        break;
      case CouplingSpec::Kind::kElementwise:
        couplings.emplace_back(e, Elementwise{c.psi});
        break;
    }
  }
  return NetworkProblem(std::move(graph), std::move(objectives), std::move(couplings));
}

StackedState initial_state(const Scenario& s, const NetworkProblem& p) {
  StackedState x0(p.state_size());
  for (int i = 0; i < p.nodes(); ++i) {
    if (s.init.explicit_states) {
      if (static_cast<int>(s.init.states.size()) != p.nodes()) {
        throw ScenarioError("initialization.states: expected " + std::to_string(p.nodes()) +
                            " vectors");
      }
      p.node(x0, i) = s.init.states[i];
    } else {
      p.node(x0, i) = p.objective(i).local_minimizer();
    }
  }
  return x0;
}

}  // namespace zgs
