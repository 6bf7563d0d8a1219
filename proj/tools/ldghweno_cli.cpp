// Command-line driver: single runs, convergence studies and profile snapshots.
//
//   ldghweno solve --problem linear1d --k 2 --n 10,20,40 --mode convergence --out out
//   ldghweno list
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ldghweno/harness.hpp"

namespace fs = std::filesystem;
using namespace ldghw;

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string stem(const RunConfig& cfg, int n) {
  return cfg.problem + "_k" + std::to_string(cfg.k) + "_n" + std::to_string(n);
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

nlohmann::json errors_json(const ErrorNorms& e) {
  return {{"L1", e.l1}, {"L2", e.l2}, {"Linf", e.linf}};
}

int threads_from_env() {
  const char* env = std::getenv("SOLVER_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1) throw ConfigError(std::string("SOLVER_THREADS must be a positive integer, got '") + env + "'");
  return static_cast<int>(v);
}

void run_single(const RunConfig& cfg) {
  const int n = cfg.n.front();
  const double T = cfg.final_time();
  const RunResult r = run_problem(cfg, n, {T});
  ensure_dir(cfg.out_dir);
  const std::string profile = cfg.out_dir + "/" + stem(cfg, n) + "_t" + short_number(T) + ".csv";
  emit_profile(r.snapshots.back(), profile);

  nlohmann::json summary;
  summary["config"] = resolved_config(cfg);
  summary["n"] = n;
  summary["t"] = r.t;
  summary["steps"] = r.steps;
  summary["max_drift"] = r.max_drift;
  if (r.errors) summary["errors"] = errors_json(*r.errors);
  write_text(cfg.out_dir + "/" + stem(cfg, n) + "_summary.json", summary.dump(2) + "\n");

  std::printf("%s k=%d n=%d T=%s steps=%ld drift=%.2e time=%.1fs\n", cfg.problem.c_str(), cfg.k, n,
              short_number(T).c_str(), r.steps, r.max_drift, r.seconds);
  if (r.errors) {
    std::printf("L1=%.4e L2=%.4e Linf=%.4e\n", r.errors->l1, r.errors->l2, r.errors->linf);
  }
  std::printf("profile: %s\n", profile.c_str());
}

void run_snapshots(const RunConfig& cfg) {
  const int n = cfg.n.front();
  std::vector<double> times = cfg.snapshot_times;
  if (times.empty()) {
    times = cfg.resolve_problem().snapshot_times;
    times.insert(times.begin(), 0.0);
  }
  RunConfig run = cfg;
  // Stop at the last snapshot rather than the problem's default horizon.
  if (!cfg.t_end) run.t_end = *std::max_element(times.begin(), times.end());
  if (*run.t_end <= 0.0) run.t_end = cfg.final_time();
  run.validate();
  const RunResult r = run_problem(run, n, times);
  ensure_dir(cfg.out_dir);
  for (const auto& p : r.snapshots) {
    const std::string path = cfg.out_dir + "/" + stem(cfg, n) + "_t" + short_number(p.t) + ".csv";
    emit_profile(p, path);
    std::printf("t=%s -> %s\n", short_number(p.t).c_str(), path.c_str());
  }
  std::printf("%s k=%d n=%d steps=%ld drift=%.2e time=%.1fs\n", cfg.problem.c_str(), cfg.k, n,
              r.steps, r.max_drift, r.seconds);
}

int run_convergence_mode(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  const ConvergenceReport report = run_convergence(cfg, [](const ConvergenceRow& row) {
    if (row.failure.empty()) {
      std::fprintf(stderr, "n=%d done: L1=%.4e steps=%ld (%.1fs)\n", row.n, row.errors.l1, row.steps,
                   row.seconds);
    } else {
      std::fprintf(stderr, "n=%d failed: %s\n", row.n, row.failure.c_str());
    }
  });
  const std::string path =
      cfg.out_dir + "/" + cfg.problem + "_k" + std::to_string(cfg.k) + "_convergence.csv";
  write_convergence_csv(report, path);
  std::cout << cfg.problem << ", k = " << cfg.k << ", T = " << short_number(cfg.final_time()) << "\n"
            << format_convergence_table(report) << "table: " << path << "\n";
  for (const auto& row : report.rows) {
    if (!row.failure.empty()) return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid LDG-HWENO solver for KdV-type equations"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List problems and their parameters");

  auto* solve = app.add_subcommand("solve", "Run a problem");
  std::string config_path, problem, mode, weights, bc_x, bc_y, out_dir;
  std::vector<int> n;
  std::vector<double> snap_times;
  std::vector<std::string> params;
  int k = 2;
  double T = 0.0, cfl = 0.0, lambda = 1e-6;
  solve->add_option("--config", config_path, "JSON file with run settings; flags override it");
  solve->add_option("--problem", problem, "Problem name (see 'list')");
  solve->add_option("--k", k, "Polynomial degree (2, 3 or 4)");
  solve->add_option("--n", n, "Cells per direction; a list for convergence mode")->delimiter(',');
  solve->add_option("--T", T, "Final time (default: the problem's)");
  solve->add_option("--cfl", cfl, "CFL constant (default: stability table for k)");
  solve->add_option("--lambda", lambda, "Nonlinear-weight regularisation");
  solve->add_option("--weights", weights, "nonlinear | linear");
  solve->add_option("--mode", mode, "single | convergence | snapshots");
  solve->add_option("--snap-times", snap_times, "Snapshot times")->delimiter(',');
  solve->add_option("--bc-x", bc_x, "Override x boundary: periodic | dirichlet");
  solve->add_option("--bc-y", bc_y, "Override y boundary: periodic | dirichlet");
  solve->add_option("--param", params, "Problem parameter override key=value (repeatable)");
  solve->add_option("--out", out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const auto& p : problem_catalog()) {
        std::printf("%-22s %dD  T=%-5s %s\n", p.name.c_str(), p.dimension,
                    short_number(p.t_end).c_str(), p.description.c_str());
        for (const auto& [key, value] : p.params) {
          std::printf("%26s%s = %s\n", "", key.c_str(), short_number(value).c_str());
        }
      }
      return 0;
    }

    RunConfig cfg;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw IoError("cannot open config '" + config_path + "'");
      nlohmann::json j;
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config '" + config_path + "' is not valid JSON: " + e.what());
      }
      cfg = run_config_from_json(j);
    }
    if (solve->count("--problem")) cfg.problem = problem;
    if (solve->count("--k")) cfg.k = k;
    if (solve->count("--n")) cfg.n = n;
    if (solve->count("--T")) cfg.t_end = T;
    if (solve->count("--cfl")) cfg.cfl = cfl;
    if (solve->count("--lambda")) cfg.lambda = lambda;
    if (solve->count("--weights")) {
      if (weights != "linear" && weights != "nonlinear") {
        throw ConfigError("--weights must be linear or nonlinear");
      }
      cfg.linear_weights_only = weights == "linear";
    }
    if (solve->count("--mode")) cfg.mode = parse_run_mode(mode);
    if (solve->count("--snap-times")) cfg.snapshot_times = snap_times;
    if (solve->count("--bc-x")) cfg.bc_x = parse_boundary(bc_x);
    if (solve->count("--bc-y")) cfg.bc_y = parse_boundary(bc_y);
    if (solve->count("--out")) cfg.out_dir = out_dir;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--param expects key=value, got '" + kv + "'");
      try {
        cfg.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw ConfigError("--param value is not a number in '" + kv + "'");
      }
    }
    cfg.threads = threads_from_env();
    if (cfg.threads > 1) {
      std::fprintf(stderr, "note: SOLVER_THREADS=%d requested; the solver runs serially\n", cfg.threads);
    }
    cfg.validate();

    switch (cfg.mode) {
      case RunMode::Single: run_single(cfg); return 0;
      case RunMode::Snapshots: run_snapshots(cfg); return 0;
      case RunMode::Convergence: return run_convergence_mode(cfg);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return 4;
  }
  return 0;
}
