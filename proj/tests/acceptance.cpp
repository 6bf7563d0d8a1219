// Acceptance runs: reference error tables, the property suite and the
// qualitative soliton checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.
//
//   acceptance                 all criteria
//   acceptance --only 1,5      a subset
//   acceptance --out dir       where figure-run profiles go

#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "ldghweno/basis.hpp"
#include "ldghweno/harness.hpp"

using namespace ldghw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back(std::string(ok ? "ok    " : "FAIL  ") + what);
  }
  void note(const std::string& what) { notes.push_back("      " + what); }
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within_factor(double got, double want, double factor) {
  return got <= want * factor && got >= want / factor;
}

// Reference errors by n: {L1, L2, Linf}.
using Reference = std::map<int, std::array<double, 3>>;

struct Study {
  std::vector<int> n;
  std::vector<ErrorNorms> errors;
  double max_drift = 0.0;
  double seconds = 0.0;
  std::string failure;

  std::vector<double> orders(int norm) const {
    std::vector<double> e;
    for (const auto& x : errors) e.push_back(norm == 0 ? x.l1 : norm == 1 ? x.l2 : x.linf);
    return observed_orders(n, e);
  }
};

Study run_study(const std::string& problem, int k, const std::vector<int>& ns) {
  Study s;
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;
  cfg.problem = problem;
  cfg.k = k;
  for (int n : ns) {
    cfg.n = {n};
    try {
      const RunResult r = run_problem(cfg, n);
      s.n.push_back(n);
      s.errors.push_back(*r.errors);
      s.max_drift = std::max(s.max_drift, r.max_drift);
      std::fprintf(stderr, "  %s k=%d n=%d: L1 %.3e (%.1fs)\n", problem.c_str(), k, n, r.errors->l1,
                   r.seconds);
    } catch (const NumericalError& e) {
      s.failure = fmt("n=%d: %s", n, e.what());
      break;
    }
  }
  s.seconds = seconds_since(t0);
  return s;
}

const char* kNormName[3] = {"L1", "L2", "Linf"};

// Errors against the reference within `factor`, listing every entry.
void compare_table(Outcome& o, const Study& s, const Reference& ref, double factor,
                   bool all_norms = true) {
  if (!s.failure.empty()) {
    o.check(false, "run failed: " + s.failure);
    return;
  }
  for (size_t i = 0; i < s.n.size(); ++i) {
    const auto it = ref.find(s.n[i]);
    if (it == ref.end()) continue;
    const double got[3] = {s.errors[i].l1, s.errors[i].l2, s.errors[i].linf};
    for (int c = 0; c < (all_norms ? 3 : 1); ++c) {
      o.check(within_factor(got[c], it->second[c], factor),
              fmt("n=%-4d %-4s %.3e  reference %.3e", s.n[i], kNormName[c], got[c], it->second[c]));
    }
  }
}

void check_final_order(Outcome& o, const Study& s, double lo, double hi, bool all_norms = true) {
  if (s.n.size() < 2) return;
  for (int c = 0; c < (all_norms ? 3 : 1); ++c) {
    const double p = s.orders(c).back();
    o.check(p >= lo && p <= hi, fmt("%-4s order %d->%d: %.2f, required [%.2f, %.2f]", kNormName[c],
                                    s.n[s.n.size() - 2], s.n.back(), p, lo, hi));
  }
}

double drift_total = 0.0;

Outcome criterion_1() {
  Outcome o;
  // The k = 3 L1 entry at n = 40 is read as 1.805e-7.
  const Reference k2 = {{10, {2.668e-3, 2.751e-3, 3.593e-3}},
                        {20, {1.830e-4, 1.959e-4, 2.571e-4}},
                        {40, {1.904e-5, 2.078e-5, 2.854e-5}},
                        {80, {2.285e-6, 2.516e-6, 3.522e-6}},
                        {160, {2.833e-7, 3.135e-7, 4.412e-7}}};
  const Study s2 = run_study("linear1d", 2, {10, 20, 40, 80, 160});
  compare_table(o, s2, k2, 2.0);
  check_final_order(o, s2, 2.75, 3.25);
  o.note(fmt("k=2 runtime %.0fs", s2.seconds));
  drift_total = std::max(drift_total, s2.max_drift);
  for (int k : {3, 4}) {
    const Study s = run_study("linear1d", k, {10, 20, 40});
    if (!s.failure.empty()) {
      o.check(false, fmt("k=%d run failed: %s", k, s.failure.c_str()));
      continue;
    }
    for (int c = 0; c < 3; ++c) {
      const double p = s.orders(c).back();
      o.check(p >= k + 1 - 0.3, fmt("k=%d %-4s order 20->40: %.2f, required >= %.1f", k, kNormName[c], p, k + 0.7));
    }
    o.note(fmt("k=%d runtime %.0fs", k, s.seconds));
    drift_total = std::max(drift_total, s.max_drift);
  }
  return o;
}

Outcome criterion_2() {
  Outcome o;
  // The Linf entry at n = 320 is read as 5.992e-5; the quoted orders agree with it.
  // The reference orders are still 3.3 at 160 -> 320, so the limit is judged at 320 -> 640.
  const Reference ref = {{40, {1.303e-2, 2.569e-2, 7.996e-2}},
                         {80, {1.126e-3, 1.937e-3, 8.245e-3}},
                         {160, {9.841e-5, 1.514e-4, 5.926e-4}},
                         {320, {1.103e-5, 1.548e-5, 5.992e-5}},
                         {640, {1.205e-6, 1.843e-6, 7.115e-6}}};
  const Study s = run_study("kdv_soliton", 2, {40, 80, 160, 320, 640});
  compare_table(o, s, ref, 2.0);
  check_final_order(o, s, 2.7, 3.3);
  o.note(fmt("runtime %.0fs", s.seconds));
  drift_total = std::max(drift_total, s.max_drift);
  return o;
}

Outcome criterion_3() {
  Outcome o;
  // The L2 entry at 50 x 50 is read as 2.207e-5.
  const Reference ref = {{10, {6.411e-3, 6.360e-3, 7.974e-3}},
                         {20, {4.351e-4, 4.563e-4, 5.973e-4}},
                         {30, {1.058e-4, 1.131e-4, 1.521e-4}},
                         {40, {4.123e-5, 4.454e-5, 6.093e-5}},
                         {50, {2.030e-5, 2.207e-5, 3.041e-5}}};
  const Study s = run_study("linear2d", 2, {10, 20, 30, 40, 50});
  compare_table(o, s, ref, 2.0);
  check_final_order(o, s, 2.7, 3.3, false);
  o.note(fmt("runtime %.0fs", s.seconds));
  drift_total = std::max(drift_total, s.max_drift);
  return o;
}

Outcome criterion_4() {
  Outcome o;
  const Reference ref = {{40, {1.515e-6, 4.128e-6, 1.747e-5}}, {80, {6.404e-8, 2.189e-7, 1.449e-6}}};
  const Study s = run_study("zk_wave", 2, {40, 80});
  compare_table(o, s, ref, 3.0, false);
  o.note(fmt("runtime %.0fs", s.seconds));
  drift_total = std::max(drift_total, s.max_drift);
  return o;
}

// ---------------------------------------------------------------------------
// Properties

double eval_mono(const Eigen::VectorXd& c, double x) {
  double v = 0;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c(i);
  return v;
}

Moments6<double> stencil_moments(const std::function<double(double)>& u) {
  const GaussRule g = gauss_rule(5);
  Moments6<double> m;
  for (int l = -1; l <= 1; ++l) {
    const Eigen::Array2d c = cell_moments(u, double(l), 1.0, g);
    m(l + 1) = c(0);
    m(l + 4) = c(1);
  }
  return m;
}

Outcome criterion_5(bool drift_measured) {
  Outcome o;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> U(-1, 1);

  {  // (a)
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
      Eigen::VectorXd c3(4), c5(6);
      for (int i = 0; i < 4; ++i) c3(i) = U(rng);
      for (int i = 0; i < 6; ++i) c5(i) = U(rng);
      const Moments6<double> m3 = stencil_moments([&](double x) { return eval_mono(c3, x); });
      const Moments6<double> m5 = stencil_moments([&](double x) { return eval_mono(c5, x); });
      for (int k = 2; k <= 4; ++k) {
        const Reconstructor nl(k, {});
        const Reconstructor lin(k, {1e-6, ReconstructionConfig::Mode::LinearWeightsOnly});
        std::vector<double> out(nl.size());
        nl.evaluate(m3.data(), out.data());
        for (int i = 0; i < nl.size(); ++i)
          worst = std::max(worst, std::abs(out[i] - eval_mono(c3, nl.weights()[i].xhat)));
        lin.evaluate(m5.data(), out.data());
        for (int i = 0; i < lin.size(); ++i)
          worst = std::max(worst, std::abs(out[i] - eval_mono(c5, lin.weights()[i].xhat)));
      }
    }
    o.check(worst < 1e-12, fmt("(a) cubic/quintic reproduction: max error %.1e", worst));
  }
  {  // (b)
    using Rational = boost::multiprecision::cpp_rational;
    const auto w = linear_weights<Rational>(build_stencil_system<Rational>(), Rational(1, 2));
    const bool ok = w.gamma(0) == Rational(25, 189) && w.gamma(1) == Rational(14, 27) &&
                    w.gamma(2) == Rational(22, 63);
    std::ostringstream os;
    os << "(b) linear weights at +1/2: " << w.gamma(0) << ", " << w.gamma(1) << ", " << w.gamma(2);
    o.check(ok, os.str());
  }
  {  // (c)
    const PointWeights w = linear_weights(-0.5384693101056831 / 2);
    const double want[3] = {-1.19876833424689, -0.189130224626382, 2.38789855887328};
    double err = 0;
    for (int l = 0; l < 3; ++l) err = std::max(err, std::abs(w.gamma(l) - want[l]));
    o.check(err < 1e-12, fmt("(c) negative weights %.15g, %.15g, %.15g (max deviation %.1e)",
                             w.gamma(0), w.gamma(1), w.gamma(2), err));
  }
  {  // (d)
    if (!drift_measured) {
      RunConfig cfg;
      cfg.problem = "kdv_soliton";
      const RunResult r = run_problem(cfg, 40);
      drift_total = std::max(drift_total, r.max_drift);
      cfg.problem = "linear2d";
      const RunResult r2 = run_problem(cfg, 10);
      drift_total = std::max(drift_total, r2.max_drift);
    }
    o.check(drift_total < 1e-10, fmt("(d) mass drift over full periodic runs: %.1e", drift_total));
  }
  {  // (e)
    const ScalarFunction fs[] = {ScalarFunction::quadratic(0, 0, 0.5), ScalarFunction::quadratic(0, 0, -3.0),
                                 ScalarFunction::quadratic(0, 1.0, 3.0)};
    std::uniform_real_distribution<double> V(-3, 3), H(1e-6, 0.5);
    int bad = 0, total = 0;
    for (const auto& f : fs) {
      for (int t = 0; t < 1000; ++t) {
        const double a = V(rng), b = V(rng), h = H(rng);
        const double base = llf_flux(f, a, b), gbase = llf_flux_g(f, a, b);
        bad += llf_flux(f, a + h, b) < base - 1e-12;
        bad += llf_flux(f, a, b + h) > base + 1e-12;
        bad += llf_flux_g(f, a + h, b) > gbase + 1e-12;
        bad += llf_flux_g(f, a, b + h) < gbase - 1e-12;
        bad += std::abs(llf_flux(f, a, a) - f(a)) > 1e-14 * (1 + std::abs(f(a)));
        bad += std::abs(llf_flux_g(f, b, b) - f(b)) > 1e-14 * (1 + std::abs(f(b)));
        total += 6;
      }
    }
    o.check(bad == 0, fmt("(e) flux consistency/monotonicity: %d of %d checks violated", bad, total));
  }
  {  // (f)
    auto err = [](int steps, double lambda) {
      const double dt = 1.0 / steps;
      double u = 1.0;
      for (int i = 0; i < steps; ++i) u = rk3_step(u, i * dt, dt, [&](double v, double) { return lambda * v; });
      return std::abs(u - std::exp(lambda));
    };
    bool ok = true;
    std::string ratios;
    for (double lambda : {-1.0, 2.0}) {
      for (int steps : {20, 40}) {
        const double r = err(steps, lambda) / err(2 * steps, lambda);
        ok = ok && std::abs(r - 8.0) <= 0.5;
        ratios += fmt(" %.3f", r);
      }
    }
    o.check(ok, "(f) RK3 error ratios under dt halving:" + ratios);
  }
  {  // (g)
    double worst = 0;
    for (const char* name : {"linear1d", "kdv_soliton", "kdv_single_soliton"}) {
      const ProblemDef p = find_problem(name);
      for (int k = 2; k <= 4; ++k) {
        Scheme1D s(p.eq1d, build_mesh_1d(p.ax, p.bx, 16, Boundary::Periodic), k);
        CellField st = CellField::Zero(2, s.mesh().extent());
        st.row(0).setConstant(0.37);
        worst = std::max(worst, s.rhs(st, 0.0).abs().maxCoeff());
      }
    }
    double worst2 = 0;
    for (const char* name : {"linear2d", "zk_wave", "bell_pulse"}) {
      const ProblemDef p = find_problem(name);
      for (int k = 2; k <= 4; ++k) {
        Scheme2D s(p.eq2d, build_mesh_2d(p.ax, p.bx, 8, Boundary::Periodic, p.ay, p.by, 8, Boundary::Periodic), k);
        CellField st = CellField::Zero(4, s.mesh().extent());
        st.row(0).setConstant(-1.1);
        worst2 = std::max(worst2, s.rhs(st, 0.0).abs().maxCoeff());
      }
    }
    o.check(worst < 1e-13 && worst2 < 1e-13,
            fmt("(g) constant-state rhs: 1D %.1e, 2D %.1e", worst, worst2));
  }
  return o;
}

// ---------------------------------------------------------------------------
// Qualitative runs

std::string out_dir = "acceptance_out";

std::string profile_path(const std::string& problem, int n, double t) {
  return out_dir + "/" + problem + "_k2_n" + std::to_string(n) + fmt("_t%g.csv", t);
}

bool finite_profile(const Profile& p) { return p.u.allFinite(); }

Outcome criterion_6() {
  Outcome o;
  fs::create_directories(out_dir);

  {  // single soliton
    RunConfig cfg;
    cfg.problem = "kdv_single_soliton";
    cfg.t_end = 1.0;
    const int n = 160;
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_problem(cfg, n, {0.0, 1.0});
    const Profile& p = r.snapshots.back();
    for (const auto& s : r.snapshots) emit_profile(s, profile_path(cfg.problem, n, s.t));
    Eigen::Index i = 0;
    const double peak = p.u.maxCoeff(&i);
    const double dx = 2.0 / n;
    const double where = 0.5 + 0.3 * 1.0;
    o.check(std::abs(peak - 0.9) <= 0.02 * 0.9, fmt("soliton peak %.4f at t=1, required 0.9 +- 2%%", peak));
    o.check(std::abs(p.x(i) - where) <= dx,
            fmt("soliton peak at x=%.5f, expected %.5f +- %.4f (%.0fs)", p.x(i), where, dx, seconds_since(t0)));
  }
  {  // bell pulse
    RunConfig cfg;
    cfg.problem = "bell_pulse";
    const int n = 100;
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run_problem(cfg, n, {0.0, 1.0, 2.0, 3.0});
    const double h = 32.0 / n;
    for (const auto& p : r.snapshots) {
      emit_profile(p, profile_path(cfg.problem, n, p.t));
      if (p.t == 0.0) continue;
      Eigen::Index i = 0;
      const double peak = p.u.maxCoeff(&i);
      const double xe = 10.0 + 4.0 * p.t, ye = 16.0;
      o.check(std::abs(p.x(i) - xe) <= h && std::abs(p.y(i) - ye) <= h,
              fmt("pulse peak %.3f at (%.2f, %.2f) at t=%g, expected (%.2f, %.2f) +- %.2f", peak, p.x(i),
                  p.y(i), p.t, xe, ye, h));
      // Parabola through the peak row, to separate a real lag from grid sampling.
      if (i % n > 0 && i % n < n - 1) {
        const double a = p.u(i - 1), b = p.u(i), c = p.u(i + 1);
        o.note(fmt("t=%g: sub-cell peak x = %.3f, lag %.3f", p.t, p.x(i) + 0.5 * h * (a - c) / (a - 2 * b + c),
                   xe - p.x(i) - 0.5 * h * (a - c) / (a - 2 * b + c)));
      }
    }
    o.note(fmt("pulse run %.0fs", seconds_since(t0)));
  }

  // Figure-only experiments at reduced resolution or horizon; success means
  // completing without a numerical failure and writing NaN-free profiles.
  struct Figure {
    const char* problem;
    int n;
    double t_end;
  };
  const Figure figures[] = {
      {"kdv_double_soliton", 160, 2.0}, {"kdv_triple_soliton", 320, 2.0},
      {"zero_dispersion", 200, 0.5},    {"zk_single", 60, 1.0},
      {"zk_single_inclined", 40, 5.0},  {"zk_double", 60, 1.0},
      {"bell_pulse_direct", 64, 1.0},   {"bell_pulse_deviated", 48, 1.0},
  };
  for (const auto& f : figures) {
    RunConfig cfg;
    cfg.problem = f.problem;
    cfg.t_end = f.t_end;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const RunResult r = run_problem(cfg, f.n, {0.0, f.t_end});
      bool finite = true;
      for (const auto& p : r.snapshots) {
        finite = finite && finite_profile(p);
        emit_profile(p, profile_path(f.problem, f.n, p.t));
      }
      o.check(finite, fmt("%s n=%d to t=%g: %s (%.0fs)", f.problem, f.n, f.t_end,
                          finite ? "completed" : "non-finite profile", seconds_since(t0)));
    } catch (const std::exception& e) {
      o.check(false, fmt("%s n=%d: %s", f.problem, f.n, e.what()));
    }
  }
  o.note("profiles written to " + out_dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance runs"};
  std::vector<int> only;
  app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
  app.add_option("--out", out_dir, "Directory for figure-run profiles");
  CLI11_PARSE(app, argc, argv);
  if (only.empty()) only = {1, 2, 3, 4, 5, 6};

  const char* titles[] = {"",
                          "linear1d errors and orders, k = 2, 3, 4",
                          "kdv_soliton errors and orders, k = 2",
                          "linear2d errors and orders, k = 2",
                          "zk_wave errors at 40 and 80, k = 2",
                          "property suite",
                          "soliton and pulse tracking, figure runs"};
  std::map<int, Outcome> results;
  bool drift_measured = false;
  for (int c : only) {
    if (c < 1 || c > 6) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    std::fprintf(stderr, "criterion %d: %s\n", c, titles[c]);
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      switch (c) {
        case 1: o = criterion_1(); break;
        case 2: o = criterion_2(); break;
        case 3: o = criterion_3(); break;
        case 4: o = criterion_4(); break;
        case 5: o = criterion_5(drift_measured); break;
        case 6: o = criterion_6(); break;
      }
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    if (c <= 4) drift_measured = true;
    o.note(fmt("criterion time %.0fs", seconds_since(t0)));
    results[c] = o;
    for (const auto& line : o.notes) std::printf("    %s\n", line.c_str());
    std::fflush(stdout);
  }

  std::printf("\n");
  bool all = true;
  for (const auto& [c, o] : results) {
    std::printf("criterion %d: %s  %s\n", c, o.pass ? "PASS" : "FAIL", titles[c]);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
