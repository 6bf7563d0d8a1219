#include "ldghweno/harness.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace ldghw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_sci(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt_order(double v) {
  if (std::isnan(v)) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

RunMode parse_run_mode(const std::string& name) {
  if (name == "single") return RunMode::Single;
  if (name == "convergence") return RunMode::Convergence;
  if (name == "snapshots") return RunMode::Snapshots;
  throw ConfigError("unknown mode '" + name + "' (expected single|convergence|snapshots)");
}

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Single: return "single";
    case RunMode::Convergence: return "convergence";
    case RunMode::Snapshots: return "snapshots";
  }
  return "single";
}

// ---------------------------------------------------------------------------
// RunConfig

void RunConfig::validate() const {
  if (k < 2 || k > 4) throw ConfigError("k must be 2, 3 or 4, got " + std::to_string(k));
  if (n.empty()) throw ConfigError("at least one resolution n is required");
  for (int v : n) {
    if (v < 5) throw ConfigError("every n must be at least 5, got " + std::to_string(v));
  }
  if (mode != RunMode::Convergence && n.size() != 1) {
    throw ConfigError(to_string(mode) + " mode takes exactly one n");
  }
  if (t_end && !(*t_end > 0.0 && std::isfinite(*t_end))) throw ConfigError("T must be positive");
  if (!(cfl >= 0.0 && std::isfinite(cfl))) throw ConfigError("cfl must be positive (0 = default)");
  if (!(lambda > 0.0 && std::isfinite(lambda))) throw ConfigError("lambda must be positive");
  for (double s : snapshot_times) {
    if (!(s >= 0.0 && std::isfinite(s))) throw ConfigError("snapshot times must be non-negative");
  }
  if (out_dir.empty()) throw ConfigError("output directory must not be empty");

  const ProblemDef p = resolve_problem();
  if (mode == RunMode::Convergence && !p.has_exact) {
    throw ConfigError("problem '" + problem + "' has no exact solution; convergence mode is unsupported");
  }
  const double T = final_time();
  for (double s : snapshot_times) {
    if (s > T) throw ConfigError("snapshot time " + fmt17(s) + " is beyond T = " + fmt17(T));
  }
}

ProblemDef RunConfig::resolve_problem() const {
  ProblemDef p = find_problem(problem, params);
  if (bc_x) p.bc_x = *bc_x;
  if (bc_y) {
    if (p.dimension == 1) throw ConfigError("bc_y override given for a 1D problem");
    p.bc_y = *bc_y;
  }
  return p;
}

double RunConfig::final_time() const { return t_end ? *t_end : find_problem(problem, params).t_end; }

double RunConfig::resolved_cfl(int dimension) const {
  return cfl > 0.0 ? cfl : default_cfl(k, dimension);
}

ReconstructionConfig RunConfig::reconstruction() const {
  ReconstructionConfig rc;
  rc.lambda = lambda;
  rc.mode = linear_weights_only ? ReconstructionConfig::Mode::LinearWeightsOnly
                                : ReconstructionConfig::Mode::Nonlinear;
  return rc;
}

nlohmann::json to_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["problem"] = cfg.problem;
  j["k"] = cfg.k;
  j["n"] = cfg.n;
  j["T"] = cfg.t_end ? nlohmann::json(*cfg.t_end) : nlohmann::json(nullptr);
  j["cfl"] = cfg.cfl;
  j["lambda"] = cfg.lambda;
  j["weights"] = cfg.linear_weights_only ? "linear" : "nonlinear";
  j["bc_x"] = cfg.bc_x ? nlohmann::json(to_string(*cfg.bc_x)) : nlohmann::json(nullptr);
  j["bc_y"] = cfg.bc_y ? nlohmann::json(to_string(*cfg.bc_y)) : nlohmann::json(nullptr);
  j["params"] = cfg.params;
  j["mode"] = to_string(cfg.mode);
  j["snap_times"] = cfg.snapshot_times;
  j["out"] = cfg.out_dir;
  j["threads"] = cfg.threads;
  return j;
}

nlohmann::json resolved_config(const RunConfig& cfg) {
  const ProblemDef p = cfg.resolve_problem();
  nlohmann::json j = to_json(cfg);
  j["T"] = cfg.final_time();
  j["cfl"] = cfg.resolved_cfl(p.dimension);
  j["bc_x"] = to_string(p.bc_x);
  if (p.dimension == 2) {
    j["bc_y"] = to_string(p.bc_y);
  } else {
    j.erase("bc_y");
  }
  j["params"] = p.params;
  j["dimension"] = p.dimension;
  j["domain"] = p.dimension == 1 ? nlohmann::json{p.ax, p.bx} : nlohmann::json{p.ax, p.bx, p.ay, p.by};
  j["equation"] = p.description;
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "problem") {
        c.problem = value.get<std::string>();
      } else if (key == "k") {
        c.k = value.get<int>();
      } else if (key == "n") {
        c.n = value.is_array() ? value.get<std::vector<int>>() : std::vector<int>{value.get<int>()};
      } else if (key == "T") {
        if (!value.is_null()) c.t_end = value.get<double>();
      } else if (key == "cfl") {
        c.cfl = value.get<double>();
      } else if (key == "lambda") {
        c.lambda = value.get<double>();
      } else if (key == "weights") {
        const auto w = value.get<std::string>();
        if (w != "linear" && w != "nonlinear") throw ConfigError("weights must be linear|nonlinear");
        c.linear_weights_only = w == "linear";
      } else if (key == "bc_x") {
        if (!value.is_null()) c.bc_x = parse_boundary(value.get<std::string>());
      } else if (key == "bc_y") {
        if (!value.is_null()) c.bc_y = parse_boundary(value.get<std::string>());
      } else if (key == "params") {
        c.params = value.get<ParameterSet>();
      } else if (key == "mode") {
        c.mode = parse_run_mode(value.get<std::string>());
      } else if (key == "snap_times") {
        c.snapshot_times = value.get<std::vector<double>>();
      } else if (key == "out") {
        c.out_dir = value.get<std::string>();
      } else if (key == "threads") {
        c.threads = value.get<int>();
      } else {
        throw ConfigError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Error norms

ErrorNorms error_norms(Scheme1D& scheme, const CellField& state, double t, const ExactFn1D& exact,
                       NormScaling scaling) {
  if (!exact) throw ConfigError("error norms need an exact solution");
  const Mesh1D& mesh = scheme.mesh();
  const int k = scheme.degree();
  const GaussRule rule = gauss_rule(k + 1);
  const CellField traces = scheme.reconstruct(state, t);
  ErrorNorms e;
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j < mesh.n; ++j) {
    for (int g = 0; g < rule.size(); ++g) {
      const double x = mesh.center(j) + rule.nodes(g) * mesh.dx;
      const double err = std::abs(traces(g, mesh.slot(j)) - exact(x, t));
      s1 += rule.weights(g) * err;
      s2 += rule.weights(g) * err * err;
      e.linf = std::max(e.linf, err);
    }
  }
  // Cell weights sum to one, so sum * dx is the integral over the domain.
  const double measure = scaling == NormScaling::PerUnitMeasure ? mesh.length() : 1.0;
  e.l1 = s1 * mesh.dx / measure;
  e.l2 = std::sqrt(s2 * mesh.dx / measure);
  return e;
}

ErrorNorms error_norms(Scheme2D& scheme, const CellField& state, double t, const ExactFn2D& exact,
                       NormScaling scaling) {
  if (!exact) throw ConfigError("error norms need an exact solution");
  const Mesh2D& mesh = scheme.mesh();
  const LdgTables2D& tab = scheme.tables();
  const GaussRule& rule = tab.rule;
  const CellField traces = scheme.reconstruct(state, t);
  ErrorNorms e;
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j < mesh.y.n; ++j) {
    for (int i = 0; i < mesh.x.n; ++i) {
      const int c = mesh.slot(i, j);
      for (int gy = 0; gy < tab.ng; ++gy) {
        const double y = mesh.y.center(j) + rule.nodes(gy) * mesh.y.dx;
        for (int gx = 0; gx < tab.ng; ++gx) {
          const double x = mesh.x.center(i) + rule.nodes(gx) * mesh.x.dx;
          const double w = rule.weights(gx) * rule.weights(gy);
          const double err = std::abs(traces(tab.trace_index(gx, gy), c) - exact(x, y, t));
          s1 += w * err;
          s2 += w * err * err;
          e.linf = std::max(e.linf, err);
        }
      }
    }
  }
  const double measure =
      scaling == NormScaling::PerUnitMeasure ? mesh.x.length() * mesh.y.length() : 1.0;
  e.l1 = s1 * mesh.area() / measure;
  e.l2 = std::sqrt(s2 * mesh.area() / measure);
  return e;
}

std::vector<double> observed_orders(const std::vector<int>& n, const std::vector<double>& e) {
  if (n.size() != e.size()) throw ConfigError("orders need one error per resolution");
  std::vector<double> out(n.size(), kNaN);
  for (std::size_t i = 1; i < n.size(); ++i) {
    out[i] = std::log(e[i - 1] / e[i]) / std::log(static_cast<double>(n[i]) / n[i - 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Profiles

Profile cell_center_profile(const Scheme1D& scheme, const CellField& state, double t,
                            const ExactFn1D& boundary) {
  const Mesh1D& mesh = scheme.mesh();
  CellField m = state;
  fill_ghosts(m, mesh, t, boundary);
  const Reconstructor centre(std::vector<double>{0.0}, scheme.reconstructor().config());
  Profile p;
  p.dimension = 1;
  p.t = t;
  p.x.resize(mesh.n);
  p.u.resize(mesh.n);
  for (int j = 0; j < mesh.n; ++j) {
    p.x(j) = mesh.center(j);
    p.u(j) = reconstruct_cell_1d(m, mesh, j, centre)(0);
  }
  return p;
}

Profile cell_center_profile(const Scheme2D& scheme, const CellField& state, double t,
                            const ExactFn2D& boundary) {
  const Mesh2D& mesh = scheme.mesh();
  CellField m = state;
  fill_ghosts(m, mesh, t, boundary);
  const Reconstructor centre(std::vector<double>{0.0}, scheme.reconstructor().config());
  Profile p;
  p.dimension = 2;
  p.t = t;
  const int count = mesh.x.n * mesh.y.n;
  p.x.resize(count);
  p.y.resize(count);
  p.u.resize(count);
  for (int j = 0; j < mesh.y.n; ++j) {
    for (int i = 0; i < mesh.x.n; ++i) {
      const int r = i + mesh.x.n * j;
      p.x(r) = mesh.x.center(i);
      p.y(r) = mesh.y.center(j);
      p.u(r) = reconstruct_2d(m, mesh, i, j, centre)(0, 0);
    }
  }
  return p;
}

void emit_profile(const Profile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  for (const auto& line : profile.header) out << "# " << line << '\n';
  out << "# t: " << fmt17(profile.t) << '\n';
  out << (profile.dimension == 1 ? "x,u\n" : "x,y,u\n");
  for (Eigen::Index r = 0; r < profile.u.size(); ++r) {
    out << fmt17(profile.x(r)) << ',';
    if (profile.dimension == 2) out << fmt17(profile.y(r)) << ',';
    out << fmt17(profile.u(r)) << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

Profile read_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  Profile p;
  std::string line;
  std::vector<std::array<double, 3>> rows;
  bool have_columns = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::string body = line.substr(std::min<std::size_t>(2, line.size()));
      if (body.rfind("t: ", 0) == 0) {
        char* end = nullptr;
        const std::string v = body.substr(3);
        p.t = std::strtod(v.c_str(), &end);
        if (v.empty() || *end != '\0') throw IoError("'" + path + "': bad time '" + v + "'");
      } else {
        p.header.push_back(body);
      }
      continue;
    }
    if (!have_columns) {
      if (line == "x,u") {
        p.dimension = 1;
      } else if (line == "x,y,u") {
        p.dimension = 2;
      } else {
        throw IoError("'" + path + "': unexpected column header '" + line + "'");
      }
      have_columns = true;
      continue;
    }
    std::array<double, 3> r{};
    std::stringstream ss(line);
    std::string cell;
    int c = 0;
    while (std::getline(ss, cell, ',')) {
      if (c >= p.dimension + 1) throw IoError("'" + path + "': too many columns in '" + line + "'");
      // strtod rather than stod: subnormal values are valid data.
      char* end = nullptr;
      r[c++] = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0') throw IoError("'" + path + "': bad number '" + cell + "'");
    }
    if (c != p.dimension + 1) throw IoError("'" + path + "': short row '" + line + "'");
    rows.push_back(r);
  }
  if (!have_columns) throw IoError("'" + path + "': no column header");
  const auto count = static_cast<Eigen::Index>(rows.size());
  p.x.resize(count);
  p.u.resize(count);
  if (p.dimension == 2) p.y.resize(count);
  for (Eigen::Index r = 0; r < count; ++r) {
    p.x(r) = rows[r][0];
    if (p.dimension == 2) p.y(r) = rows[r][1];
    p.u(r) = rows[r][p.dimension];
  }
  return p;
}

// ---------------------------------------------------------------------------
// Runs

namespace {

template <typename Scheme, typename Exact>
RunResult integrate(const RunConfig& cfg, const ProblemDef& prob, Scheme& scheme, CellField state,
                    const Exact& solution, int n, const std::vector<double>& snapshot_times) {
  const auto start = std::chrono::steady_clock::now();
  const double T = cfg.final_time();
  std::vector<double> stops = snapshot_times;
  std::sort(stops.begin(), stops.end());
  stops.erase(std::unique(stops.begin(), stops.end()), stops.end());

  const nlohmann::json echo = resolved_config(cfg);
  auto snapshot = [&](const CellField& s, double t) {
    Profile p = cell_center_profile(scheme, s, t, solution);
    p.header.push_back("config: " + echo.dump());
    p.header.push_back("problem: " + prob.name);
    p.header.push_back("n: " + std::to_string(n));
    return p;
  };

  RunResult res;
  res.n = n;
  TimeControls tc;
  tc.cfl = cfg.resolved_cfl(prob.dimension);
  tc.log_every = 0;
  const double sum0 = scheme.conserved_sum(state);
  double t = 0.0;
  auto advance_to = [&](double target) {
    if (target <= t) return;
    tc.t_end = target;
    const double offset = std::abs(scheme.conserved_sum(state) - sum0);
    AdvanceResult a = advance(scheme, state, t, tc);
    state = std::move(a.state);
    t = a.t;
    res.steps += a.steps;
    res.max_drift = std::max(res.max_drift, offset + a.max_drift);
  };
  for (double s : stops) {
    advance_to(s);
    res.snapshots.push_back(snapshot(state, s));
  }
  advance_to(T);
  res.t = t;
  if (prob.has_exact) res.errors = error_norms(scheme, state, T, solution);
  res.state = std::move(state);
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace

RunResult run_problem(const RunConfig& cfg, int n, const std::vector<double>& snapshot_times) {
  const ProblemDef prob = cfg.resolve_problem();
  const GaussRule projection = gauss_rule(5);
  if (prob.dimension == 1) {
    const Mesh1D mesh = build_mesh_1d(prob.ax, prob.bx, n, prob.bc_x);
    Scheme1D scheme(prob.eq1d, mesh, cfg.k, cfg.reconstruction(), prob.solution1d);
    CellField u0 = project_to_moments([&](double x) { return prob.initial(x); }, mesh, projection);
    return integrate(cfg, prob, scheme, std::move(u0), prob.solution1d, n, snapshot_times);
  }
  const Mesh2D mesh =
      build_mesh_2d(prob.ax, prob.bx, n, prob.bc_x, prob.ay, prob.by, n, prob.bc_y);
  Scheme2D scheme(prob.eq2d, mesh, cfg.k, cfg.reconstruction(), prob.solution2d);
  CellField u0 =
      project_to_moments([&](double x, double y) { return prob.initial(x, y); }, mesh, projection);
  return integrate(cfg, prob, scheme, std::move(u0), prob.solution2d, n, snapshot_times);
}

ConvergenceReport run_convergence(const RunConfig& cfg, const ProgressFn& progress) {
  ConvergenceReport report;
  report.config = resolved_config(cfg);
  for (int n : cfg.n) {
    ConvergenceRow row;
    row.n = n;
    row.order_l1 = row.order_l2 = row.order_linf = kNaN;
    try {
      const RunResult r = run_problem(cfg, n);
      row.errors = *r.errors;
      row.steps = r.steps;
      row.seconds = r.seconds;
    } catch (const NumericalError& e) {
      row.failure = e.what();
    }
    report.rows.push_back(row);
    // Orders against the previous successful row.
    auto& cur = report.rows.back();
    if (cur.failure.empty()) {
      for (auto it = report.rows.rbegin() + 1; it != report.rows.rend(); ++it) {
        if (!it->failure.empty()) continue;
        const double lr = std::log(static_cast<double>(cur.n) / it->n);
        cur.order_l1 = std::log(it->errors.l1 / cur.errors.l1) / lr;
        cur.order_l2 = std::log(it->errors.l2 / cur.errors.l2) / lr;
        cur.order_linf = std::log(it->errors.linf / cur.errors.linf) / lr;
        break;
      }
    }
    if (progress) progress(cur);
  }
  return report;
}

void write_convergence_csv(const ConvergenceReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "# config: " << report.config.dump() << '\n';
  out << "n,L1,order_L1,L2,order_L2,Linf,order_Linf,steps,status\n";
  for (const auto& r : report.rows) {
    out << r.n << ',' << fmt17(r.errors.l1) << ',' << fmt17(r.order_l1) << ','
        << fmt17(r.errors.l2) << ',' << fmt17(r.order_l2) << ',' << fmt17(r.errors.linf) << ','
        << fmt17(r.order_linf) << ',' << r.steps << ',';
    if (r.failure.empty()) {
      out << "ok";
    } else {
      std::string msg = r.failure;
      std::replace(msg.begin(), msg.end(), ',', ';');
      out << "failed: " << msg;
    }
    out << '\n';
  }
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string format_convergence_table(const ConvergenceReport& report) {
  std::ostringstream os;
  char buf[160];
  std::snprintf(buf, sizeof buf, "%6s  %10s %6s  %10s %6s  %10s %6s\n", "n", "L1", "order", "L2",
                "order", "Linf", "order");
  os << buf;
  for (const auto& r : report.rows) {
    if (!r.failure.empty()) {
      os << std::string(6 - std::min<std::size_t>(6, std::to_string(r.n).size()), ' ') << r.n
         << "  failed: " << r.failure << '\n';
      continue;
    }
    std::snprintf(buf, sizeof buf, "%6d  %10s %6s  %10s %6s  %10s %6s\n", r.n,
                  fmt_sci(r.errors.l1).c_str(), fmt_order(r.order_l1).c_str(),
                  fmt_sci(r.errors.l2).c_str(), fmt_order(r.order_l2).c_str(),
                  fmt_sci(r.errors.linf).c_str(), fmt_order(r.order_linf).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace ldghw
