#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zgs/integrator.hpp"
#include "zgs/rate_analysis.hpp"
#include "zgs/scenario.hpp"

namespace zgs {

struct RateSummary {
  bool applicable = false;
  std::string reason;  // why rate analysis does not apply
  RateConstants constants;
  RateBounds bounds;
};

struct RunSummary {
  std::string name;
  Eigen::VectorXd x_star;
  double x_star_grad_norm = 0.0;
  double v0 = 0.0;
  double lambda2 = 0.0;
  double lambdaN = 0.0;
  double theta = 0.0;
  RateSummary rates;
  std::optional<double> final_err;  // unset for analyze-only summaries
  std::optional<double> max_drift;
  std::optional<double> fitted_rate;
  double fit_t0 = 0.0;
  double fit_t1 = 0.0;
};

struct RunResult {
  RunSummary summary;
  Trajectory trajectory;
  std::vector<double> bound_upper;  // empty when rate analysis is not applicable
  std::vector<double> bound_lower;
};

/// Decay rate of V fitted by least squares on log V over [T/2, 0.95 T].
/// Samples with V <= 0 are skipped; returns nullopt with fewer than 2 points.
std::optional<double> fitted_decay_rate(const std::vector<double>& t, const std::vector<double>& V,
                                        double t_end);

/// Builds, validates, integrates and analyzes the scenario in memory.
RunResult simulate(const Scenario& s);

/// Rate bounds only (no integration).
RunSummary analyze(const Scenario& s);

std::string format_number(double v);  // %.17g, non-finite as empty
std::string trajectory_csv(const RunResult& r);
std::string summary_json(const RunSummary& s);

/// simulate() and write CSV + JSON summary into out_dir.
RunResult run_scenario(const Scenario& s, const std::filesystem::path& out_dir);

enum class SweepAxis { kStepSize, kGraphSize, kCurvatureRatio };

SweepAxis parse_axis(const std::string& name);

struct SweepRow {
  double value = 0.0;
  std::optional<double> fitted_rate;
  std::optional<double> rho;
  std::optional<double> rho_tilde;
  double final_err = 0.0;
  double max_drift = 0.0;
  std::optional<double> integration_error;  // step-size axis: vs. a run at min(h)/8
};

/// Throws ScenarioError when the axis does not apply to the scenario.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

/// One summary JSON per value plus `<name>_sweep.csv` with columns
/// value,fitted_rate,rho,rho_tilde,final_err,max_drift,integration_error.
std::vector<SweepRow> sweep(const Scenario& s, SweepAxis axis, const std::vector<double>& values,
                            const std::filesystem::path& out_dir);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace zgs
