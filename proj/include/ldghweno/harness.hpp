#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ldghweno/problems.hpp"
#include "ldghweno/reconstruction.hpp"
#include "ldghweno/semidiscrete.hpp"
#include "ldghweno/time_integration.hpp"

namespace ldghw {

enum class RunMode { Single, Convergence, Snapshots };

RunMode parse_run_mode(const std::string& name);
std::string to_string(RunMode mode);

/// Everything needed to reproduce a run.
struct RunConfig {
  std::string problem = "linear1d";
  int k = 2;
  /// Cells per direction; one entry for single/snapshot runs.
  std::vector<int> n = {40};
  std::optional<double> t_end;
  /// 0 selects default_cfl(k, dimension).
  double cfl = 0.0;
  double lambda = 1e-6;
  bool linear_weights_only = false;
  std::optional<Boundary> bc_x, bc_y;
  ParameterSet params;
  RunMode mode = RunMode::Single;
  std::vector<double> snapshot_times;
  std::string out_dir = "out";
  /// Recorded only; the solver is serial.
  int threads = 1;

  /// k in {2, 3, 4}, every n >= 5, sane times. Throws ConfigError.
  void validate() const;
  /// Problem with parameter and boundary overrides applied.
  ProblemDef resolve_problem() const;
  double final_time() const;
  double resolved_cfl(int dimension) const;
  ReconstructionConfig reconstruction() const;
};

nlohmann::json to_json(const RunConfig& cfg);
/// to_json with the problem defaults filled in (T, cfl, boundaries, all
/// parameters); this is the echo written into every output file.
nlohmann::json resolved_config(const RunConfig& cfg);
/// Unknown keys are rejected so typos in config files do not pass silently.
RunConfig run_config_from_json(const nlohmann::json& j);

struct ErrorNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Errors of the reconstructed point values at the k+1 Gauss points of every
/// cell (tensor points in 2D), quadrature weighted. By default L1 and L2 are
/// divided by the domain measure; Integral leaves them as plain integrals.
enum class NormScaling { PerUnitMeasure, Integral };

ErrorNorms error_norms(Scheme1D& scheme, const CellField& state, double t, const ExactFn1D& exact,
                       NormScaling scaling = NormScaling::PerUnitMeasure);
ErrorNorms error_norms(Scheme2D& scheme, const CellField& state, double t, const ExactFn2D& exact,
                       NormScaling scaling = NormScaling::PerUnitMeasure);

/// log(e_prev / e_cur) / log(n_cur / n_prev); the first entry is NaN.
std::vector<double> observed_orders(const std::vector<int>& n, const std::vector<double>& e);

/// Point values at cell centres.
struct Profile {
  int dimension = 1;
  double t = 0.0;
  std::vector<std::string> header;  // '#' lines without the marker
  Eigen::VectorXd x, y;             // y empty in 1D
  Eigen::VectorXd u;                // 1D: u(x_i); 2D: row-major over (j, i)
};

/// `boundary` supplies Dirichlet ghost data and may be empty on periodic meshes.
Profile cell_center_profile(const Scheme1D& scheme, const CellField& state, double t,
                            const ExactFn1D& boundary = {});
Profile cell_center_profile(const Scheme2D& scheme, const CellField& state, double t,
                            const ExactFn2D& boundary = {});

/// CSV with '#' header lines (config echo), then "x,u" or "x,y,u" rows at
/// 17 significant digits. Throws IoError naming the path.
void emit_profile(const Profile& profile, const std::string& path);
Profile read_profile(const std::string& path);

struct RunResult {
  int n = 0;
  double t = 0.0;
  long steps = 0;
  double dt_last = 0.0;
  double max_drift = 0.0;
  double seconds = 0.0;
  std::optional<ErrorNorms> errors;
  CellField state;  // final moments
  std::vector<Profile> snapshots;
  std::string failure;  // empty on success
  bool ok() const { return failure.empty(); }
};

/// One run at resolution n (n x n in 2D). `snapshot_times` are profile
/// instants within (0, T]; a 0 entry profiles the projected initial data.
/// Numerical failures propagate as NumericalError.
RunResult run_problem(const RunConfig& cfg, int n, const std::vector<double>& snapshot_times = {});

struct ConvergenceRow {
  int n = 0;
  ErrorNorms errors;
  double order_l1 = 0.0, order_l2 = 0.0, order_linf = 0.0;  // NaN on the first row
  long steps = 0;
  double seconds = 0.0;
  std::string failure;
};

struct ConvergenceReport {
  nlohmann::json config;
  std::vector<ConvergenceRow> rows;
};

using ProgressFn = std::function<void(const ConvergenceRow&)>;

/// Sequential runs over cfg.n. A failed run is recorded in its row and the
/// study continues; orders are computed over the successful rows.
ConvergenceReport run_convergence(const RunConfig& cfg, const ProgressFn& progress = {});

void write_convergence_csv(const ConvergenceReport& report, const std::string& path);
std::string format_convergence_table(const ConvergenceReport& report);

}  // namespace ldghw
