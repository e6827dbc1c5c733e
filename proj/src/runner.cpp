#include "zgs/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "zgs/errors.hpp"
#include "zgs/oracle.hpp"

namespace zgs {

namespace {

constexpr double kFitStart = 0.5;
constexpr double kFitEnd = 0.95;

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    if (c == '"' || c == '\\') {
      out += '\\';
      out += ch;
    } else if (c < 0x20) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04x", c);
      out += buf;
    } else {
      out += ch;
    }
  }
  return out + "\"";
}

std::string json_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_number(*v);
}

std::string optional_cell(std::optional<double> v) { return v ? format_number(*v) : ""; }

// Constants shared by simulate() and analyze().
struct Prepared {
  NetworkProblem problem;
  CheckedState x0;
  OracleResult oracle;
};

Prepared prepare(const Scenario& s) {
  NetworkProblem p = build_problem(s);
  CheckedState x0 = validate_initialization(p, initial_state(s, p));
  OracleResult oracle = solve_centralized(p);
  return {std::move(p), std::move(x0), std::move(oracle)};
}

RunSummary base_summary(const Scenario& s, const Prepared& prep) {
  RunSummary sum;
  sum.name = s.name;
  sum.x_star = prep.oracle.x_star;
  sum.x_star_grad_norm = prep.oracle.grad_norm;
  sum.v0 = lyapunov(prep.problem, prep.x0.state(), prep.oracle.x_star);
  const auto spec = prep.problem.graph().spectrum();
  sum.lambda2 = spec.lambda2;
  sum.lambdaN = spec.lambdaN;
  sum.theta = prep.problem.objective(0).convexity();
  for (const auto& f : prep.problem.objectives()) sum.theta = std::min(sum.theta, f.convexity());
  try {
    sum.rates.constants = estimate_rate_constants(prep.problem, prep.x0, prep.oracle.x_star);
    sum.rates.bounds = compute_rate_bounds(prep.problem.graph(), sum.rates.constants);
    sum.rates.applicable = true;
  } catch (const NotApplicable& e) {
    sum.rates.applicable = false;
    sum.rates.reason = e.what();
  }
  return sum;
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::optional<double> fitted_decay_rate(const std::vector<double>& t, const std::vector<double>& V,
                                        double t_end) {
  const double lo = kFitStart * t_end;
  const double hi = kFitEnd * t_end;
  double st = 0, sy = 0, stt = 0, sty = 0;
  int m = 0;
  for (std::size_t k = 0; k < t.size() && k < V.size(); ++k) {
    if (t[k] < lo || t[k] > hi || !(V[k] > 0.0)) continue;
    const double y = std::log(V[k]);
    st += t[k];
    sy += y;
    stt += t[k] * t[k];
    sty += t[k] * y;
    ++m;
  }
  if (m < 2) return std::nullopt;
  const double denom = m * stt - st * st;
  if (!(denom > 0.0)) return std::nullopt;
  return -(m * sty - st * sy) / denom;
}

RunResult simulate(const Scenario& s) {
  const Prepared prep = prepare(s);
  RunResult r;
  r.summary = base_summary(s, prep);
  r.trajectory = integrate(prep.problem, prep.x0, prep.oracle.x_star, s.integrator);

  const auto& diag = r.trajectory.diagnostics;
  std::vector<double> V;
  V.reserve(diag.size());
  double drift = 0.0;
  for (const auto& d : diag) {
    V.push_back(d.V);
    drift = std::max(drift, d.grad_sum_norm);
  }
  r.summary.max_drift = drift;
  r.summary.final_err = diag.back().err_to_xstar;
  r.summary.fitted_rate = fitted_decay_rate(r.trajectory.times, V, s.integrator.t_end);
  r.summary.fit_t0 = kFitStart * s.integrator.t_end;
  r.summary.fit_t1 = kFitEnd * s.integrator.t_end;

  if (r.summary.rates.applicable) {
    auto env = bound_envelopes(diag.front().V, r.summary.rates.bounds, r.trajectory.times);
    r.bound_upper = std::move(env.upper);
    r.bound_lower = std::move(env.lower);
  }
  return r;
}

RunSummary analyze(const Scenario& s) { return base_summary(s, prepare(s)); }

std::string trajectory_csv(const RunResult& r) {
  std::string out = "t,V,V_bound_upper,V_bound_lower,grad_sum_norm,disagreement,err_to_xstar\r\n";
  const auto& diag = r.trajectory.diagnostics;
  const bool bounds = !r.bound_upper.empty();
  for (std::size_t k = 0; k < diag.size(); ++k) {
    const auto& d = diag[k];
    out += format_number(d.t) + ',' + format_number(d.V) + ',' +
           (bounds ? format_number(r.bound_upper[k]) : "") + ',' +
           (bounds ? format_number(r.bound_lower[k]) : "") + ',' +
           format_number(d.grad_sum_norm) + ',' + format_number(d.disagreement) + ',' +
           format_number(d.err_to_xstar) + "\r\n";
  }
  return out;
}

std::string summary_json(const RunSummary& s) {
  const bool ok = s.rates.applicable;
  auto rate = [&](double v) { return ok ? json_number(v) : std::string("null"); };
  std::ostringstream o;
  o << "{\n";
  o << "  \"schema_version\": " << kSchemaVersion << ",\n";
  o << "  \"name\": " << json_string(s.name) << ",\n";
  o << "  \"rate_analysis\": " << json_string(ok ? "ok" : "not_applicable") << ",\n";
  o << "  \"x_star\": [";
  for (Eigen::Index i = 0; i < s.x_star.size(); ++i) {
    o << (i ? ", " : "") << json_number(s.x_star(i));
  }
  o << "],\n";
  o << "  \"x_star_grad_norm\": " << json_number(s.x_star_grad_norm) << ",\n";
  o << "  \"v0\": " << json_number(s.v0) << ",\n";
  o << "  \"rho\": " << rate(s.rates.bounds.rho) << ",\n";
  o << "  \"rho_tilde\": " << rate(s.rates.bounds.rho_tilde) << ",\n";
  o << "  \"rho_cor_lower\": " << rate(s.rates.bounds.rho_corollary) << ",\n";
  o << "  \"rho_tilde_cor_upper\": " << rate(s.rates.bounds.rho_tilde_corollary) << ",\n";
  o << "  \"lambda2\": " << json_number(s.lambda2) << ",\n";
  o << "  \"lambdaN\": " << json_number(s.lambdaN) << ",\n";
  o << "  \"theta\": " << json_number(s.theta) << ",\n";
  o << "  \"Theta\": " << rate(s.rates.constants.Theta) << ",\n";
  o << "  \"gamma\": " << rate(s.rates.constants.gamma) << ",\n";
  o << "  \"Gamma\": " << rate(s.rates.constants.Gamma) << ",\n";
  o << "  \"final_err\": " << json_number(s.final_err) << ",\n";
  o << "  \"max_drift\": " << json_number(s.max_drift) << ",\n";
  o << "  \"fitted_rate\": " << json_number(s.fitted_rate) << ",\n";
  if (s.final_err) {
    o << "  \"fit_window\": [" << json_number(s.fit_t0) << ", " << json_number(s.fit_t1) << "]\n";
  } else {
    o << "  \"fit_window\": null\n";
  }
  o << "}\n";
  return o.str();
}

RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir) {
  RunResult r = simulate(s);
  write_file(out_dir / s.csv_path, trajectory_csv(r));
  write_file(out_dir / s.summary_path, summary_json(r.summary));
  return r;
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "step-size") return SweepAxis::kStepSize;
  if (name == "graph-size") return SweepAxis::kGraphSize;
  if (name == "curvature-ratio") return SweepAxis::kCurvatureRatio;
  throw ScenarioError("axis: expected step-size, graph-size or curvature-ratio, got '" + name +
                      "'");
}

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::kStepSize:
      if (s.integrator.method != Method::kRk4Fixed) {
        throw ScenarioError("axis step-size: scenario must use the rk4 method");
      }
      if (!(value > 0.0)) throw ScenarioError("axis step-size: values must be positive");
      s.integrator.step = value;
      break;
    case SweepAxis::kGraphSize: {
      if (s.graph.generator == "explicit") {
        throw ScenarioError("axis graph-size: graph must use a generator");
      }
      if (s.objectives.mode == ObjectivesSpec::Mode::kExplicit || s.init.explicit_states ||
          !s.coupling_overrides.empty()) {
        throw ScenarioError(
            "axis graph-size: objectives must be a template or random, with no per-node or "
            "per-edge settings");
      }
      const auto n = static_cast<int>(std::llround(value));
      if (std::abs(value - n) > 1e-9 || n < 2) {
        throw ScenarioError("axis graph-size: values must be integers >= 2");
      }
      s.graph.nodes = n;
      break;
    }
    case SweepAxis::kCurvatureRatio:
      if (s.objectives.mode != ObjectivesSpec::Mode::kRandomQuadratic) {
        throw ScenarioError("axis curvature-ratio: objectives must be random_quadratic");
      }
      if (!(value >= 1.0)) throw ScenarioError("axis curvature-ratio: values must be >= 1");
      s.objectives.random.eig_max = s.objectives.random.eig_min * value;
      break;
  }
  return s;
}

std::vector<SweepRow> sweep(const Scenario& s, SweepAxis axis, const std::vector<double>& values,
                            const std::filesystem::path& out_dir) {
  std::vector<SweepRow> rows;
  std::vector<Scenario> runs;
  runs.reserve(values.size());
  for (double v : values) runs.push_back(apply_axis(s, axis, v));

  std::optional<StackedState> reference;
  if (axis == SweepAxis::kStepSize && !values.empty()) {
    const double h_ref = *std::min_element(values.begin(), values.end()) / 8.0;
    reference = simulate(apply_axis(s, axis, h_ref)).trajectory.states.back();
  }

  const char* axis_name = axis == SweepAxis::kStepSize    ? "step-size"
                          : axis == SweepAxis::kGraphSize ? "graph-size"
                                                          : "curvature-ratio";
  for (std::size_t k = 0; k < runs.size(); ++k) {
    const RunResult r = simulate(runs[k]);
    write_file(out_dir / (s.name + "_" + axis_name + "_" + std::to_string(k) + ".json"),
               summary_json(r.summary));
    SweepRow row;
    row.value = values[k];
    row.fitted_rate = r.summary.fitted_rate;
    if (r.summary.rates.applicable) {
      row.rho = r.summary.rates.bounds.rho;
      row.rho_tilde = r.summary.rates.bounds.rho_tilde;
    }
    row.final_err = *r.summary.final_err;
    row.max_drift = *r.summary.max_drift;
    if (reference) row.integration_error = (r.trajectory.states.back() - *reference).norm();
    rows.push_back(row);
  }
  write_file(out_dir / (s.name + "_sweep.csv"), sweep_csv(rows));
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "value,fitted_rate,rho,rho_tilde,final_err,max_drift,integration_error\r\n";
  for (const auto& r : rows) {
    out += format_number(r.value) + ',' + optional_cell(r.fitted_rate) + ',' +
           optional_cell(r.rho) + ',' + optional_cell(r.rho_tilde) + ',' +
           format_number(r.final_err) + ',' + format_number(r.max_drift) + ',' +
           optional_cell(r.integration_error) + "\r\n";
  }
  return out;
}

}  // namespace zgs
