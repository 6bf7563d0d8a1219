#include "ldghweno/problems.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace ldghw {

double bell_pulse(double x, double y, double t, double c) {
  const double dx = x - c * t;
  // theta = arccot(s) in (0, pi/2] for s = sqrt(c)/2 r >= 0, so
  // cos(2 theta) = (s^2 - 1) / (s^2 + 1) and cos(2n theta) follows from the
  // Chebyshev recurrence without further trigonometry.
  const double s2 = 0.25 * c * (dx * dx + y * y);
  const double c2 = (s2 - 1.0) / (s2 + 1.0);
  double prev = 1.0, cur = c2, sum = 0.0;
  for (int n = 1; n <= 10; ++n) {
    sum += kBellPulseCoefficients[n - 1] * (cur - 1.0);
    const double next = 2.0 * c2 * cur - prev;
    prev = cur;
    cur = next;
  }
  return c / 3.0 * sum;
}

namespace {

double sech2(double z) {
  const double s = 1.0 / std::cosh(z);
  return s * s;
}

using Builder = std::function<ProblemDef(const ParameterSet&)>;

struct Entry {
  std::string name;
  ParameterSet defaults;
  Builder build;
};

ScalarFunction lin(double a) { return ScalarFunction::linear(a); }

// u_t + f(u)_x + eps u_xxx = 0 with r = u, g = eps r.
EquationSpec1D kdv_equation(ScalarFunction f, double eps) {
  EquationSpec1D eq;
  eq.f = std::move(f);
  eq.r = lin(1.0);
  eq.g = lin(eps);
  return eq;
}

// Dispersion only in the x-derivative family: g11 = g21 = a r, g12 = g22 = 0.
EquationSpec2D mixed_equation(ScalarFunction f1, double a) {
  EquationSpec2D eq;
  eq.f1 = std::move(f1);
  eq.r1 = eq.r2 = lin(1.0);
  eq.g11 = eq.g21 = lin(a);
  return eq;
}

ProblemDef base(const std::string& name, const std::string& description, int dim,
                const ParameterSet& p) {
  ProblemDef d;
  d.name = name;
  d.description = description;
  d.dimension = dim;
  d.params = p;
  return d;
}

std::vector<Entry> entries() {
  const double pi = std::numbers::pi;
  std::vector<Entry> e;

  e.push_back({"linear1d", {}, [pi](const ParameterSet& p) {
                 auto d = base("linear1d", "u_t + u_xxx = 0, u = sin(x + t)", 1, p);
                 d.eq1d.r = lin(1.0);
                 d.eq1d.g = lin(1.0);
                 d.ax = 0.0;
                 d.bx = 2.0 * pi;
                 d.solution1d = [](double x, double t) { return std::sin(x + t); };
                 d.has_exact = true;
                 d.t_end = 1.0;
                 d.default_n = 40;
                 return d;
               }});

  e.push_back({"kdv_soliton", {}, [](const ParameterSet& p) {
                 auto d = base("kdv_soliton", "u_t - 3(u^2)_x + u_xxx = 0, u = -2 sech^2(x - 4t)",
                               1, p);
                 d.eq1d = kdv_equation(ScalarFunction::quadratic(0.0, 0.0, -3.0), 1.0);
                 d.ax = -10.0;
                 d.bx = 12.0;
                 const double period = d.bx - d.ax;
                 d.solution1d = [period](double x, double t) {
                   return -2.0 * sech2(wrap_offset(x - 4.0 * t, period));
                 };
                 d.has_exact = true;
                 d.t_end = 0.5;
                 d.default_n = 80;
                 return d;
               }});

  e.push_back({"kdv_single_soliton",
               {{"eps", 5e-4}, {"c", 0.3}, {"x0", 0.5}},
               [](const ParameterSet& p) {
                 auto d = base("kdv_single_soliton", "u_t + (u^2/2)_x + eps u_xxx = 0, one soliton",
                               1, p);
                 const double eps = p.at("eps"), c = p.at("c"), x0 = p.at("x0");
                 d.eq1d = kdv_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), eps);
                 d.ax = 0.0;
                 d.bx = 2.0;
                 const double period = d.bx - d.ax;
                 d.solution1d = [=](double x, double t) {
                   return kdv_soliton_profile(wrap_offset(x - x0 - c * t, period), 0.0, c, 0.0, eps);
                 };
                 d.has_exact = true;
                 d.qualitative = true;
                 d.t_end = 2.0;
                 d.default_n = 160;
                 d.snapshot_times = {1.0, 2.0};
                 return d;
               }});

  e.push_back({"kdv_double_soliton",
               {{"eps", 4.84e-4}, {"c1", 0.3}, {"c2", 0.1}, {"x1", 0.4}, {"x2", 0.8}},
               [](const ParameterSet& p) {
                 auto d = base("kdv_double_soliton",
                               "u_t + (u^2/2)_x + eps u_xxx = 0, two-soliton collision", 1, p);
                 const double eps = p.at("eps");
                 d.eq1d = kdv_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), eps);
                 d.ax = 0.0;
                 d.bx = 2.0;
                 const double period = d.bx - d.ax;
                 const double c1 = p.at("c1"), c2 = p.at("c2"), x1 = p.at("x1"), x2 = p.at("x2");
                 d.solution1d = [=](double x, double t) {
                   return kdv_soliton_profile(wrap_offset(x - x1 - c1 * t, period), 0.0, c1, 0.0, eps) +
                          kdv_soliton_profile(wrap_offset(x - x2 - c2 * t, period), 0.0, c2, 0.0, eps);
                 };
                 d.qualitative = true;
                 d.t_end = 2.0;
                 d.default_n = 320;
                 d.snapshot_times = {1.0, 2.0};
                 return d;
               }});

  e.push_back({"kdv_triple_soliton", {{"eps", 1e-4}}, [](const ParameterSet& p) {
                 auto d = base("kdv_triple_soliton",
                               "u_t + (u^2/2)_x + eps u_xxx = 0, splitting into three solitons", 1, p);
                 const double eps = p.at("eps");
                 d.eq1d = kdv_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), eps);
                 d.ax = 0.0;
                 d.bx = 3.0;
                 const double width = std::sqrt(108.0 * eps);
                 d.solution1d = [=](double x, double) {
                   return 2.0 / 3.0 * sech2(wrap_offset(x - 1.0, 3.0) / width);
                 };
                 d.qualitative = true;
                 d.t_end = 2.0;
                 d.default_n = 320;
                 d.snapshot_times = {1.0, 2.0};
                 return d;
               }});

  e.push_back({"zero_dispersion", {{"eps", 1e-4}}, [pi](const ParameterSet& p) {
                 auto d = base("zero_dispersion",
                               "u_t + (u^2/2)_x + eps u_xxx = 0, u0 = 2 + 0.5 sin(2 pi x)", 1, p);
                 d.eq1d = kdv_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), p.at("eps"));
                 d.ax = 0.0;
                 d.bx = 1.0;
                 d.solution1d = [pi](double x, double) { return 2.0 + 0.5 * std::sin(2.0 * pi * x); };
                 d.qualitative = true;
                 d.t_end = 0.5;
                 d.default_n = 200;
                 d.snapshot_times = {0.5};
                 return d;
               }});

  e.push_back({"linear2d", {}, [pi](const ParameterSet& p) {
                 auto d = base("linear2d", "u_t + u_xxx + u_yyy = 0, u = sin(x + y + 2t)", 2, p);
                 d.eq2d.r1 = d.eq2d.r2 = lin(1.0);
                 d.eq2d.g11 = d.eq2d.g22 = lin(1.0);
                 d.ax = d.ay = 0.0;
                 d.bx = d.by = 2.0 * pi;
                 d.solution2d = [](double x, double y, double t) { return std::sin(x + y + 2.0 * t); };
                 d.has_exact = true;
                 d.t_end = 1.0;
                 d.default_n = 20;
                 return d;
               }});

  auto zk = [](const std::string& name, const std::string& description, const ParameterSet& p,
               double ax, double bx, double ay, double by, Boundary bc_y) {
    auto d = base(name, description, 2, p);
    const double eps = p.at("eps"), c = p.at("c"), theta = p.at("theta");
    const double x0 = p.at("x0"), y0 = p.at("y0");
    d.eq2d = mixed_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), eps);
    d.ax = ax;
    d.bx = bx;
    d.ay = ay;
    d.by = by;
    d.bc_y = bc_y;
    const double lx = bx - ax, ly = by - ay;
    const bool wrap_y = bc_y == Boundary::Periodic;
    d.solution2d = [=](double x, double y, double t) {
      const double dx = wrap_offset(x - c * t - x0, lx);
      const double dy = wrap_y ? wrap_offset(y - y0, ly) : y - y0;
      return zk_wave_profile(dx, dy, 0.0, c, 0.0, 0.0, theta, eps);
    };
    d.has_exact = true;
    return d;
  };

  e.push_back({"zk_wave",
               {{"eps", 0.01}, {"c", 0.01}, {"theta", 0.0}, {"x0", 0.0}, {"y0", 0.0}},
               [zk](const ParameterSet& p) {
                 auto d = zk("zk_wave", "Zakharov-Kuznetsov progressive wave, periodic", p, -16.0,
                             16.0, -16.0, 16.0, Boundary::Periodic);
                 d.t_end = 1.0;
                 d.default_n = 40;
                 return d;
               }});

  e.push_back({"zk_wave_inclined",
               {{"eps", 0.01}, {"c", 0.01}, {"theta", pi / 12.0}, {"x0", 16.0}, {"y0", 8.0}},
               [zk](const ParameterSet& p) {
                 auto d = zk("zk_wave_inclined",
                             "Zakharov-Kuznetsov inclined wave, periodic in x, Dirichlet in y", p, 0.0,
                             32.0, 0.0, 16.0, Boundary::DirichletExact);
                 d.t_end = 1.0;
                 d.default_n = 40;
                 return d;
               }});

  e.push_back({"zk_single",
               {{"eps", 0.01}, {"c", 1.0}, {"theta", 0.0}, {"x0", 2.5}, {"y0", 4.0}},
               [zk](const ParameterSet& p) {
                 auto d = zk("zk_single", "Zakharov-Kuznetsov single wave propagation", p, 0.0, 8.0,
                             0.0, 8.0, Boundary::Periodic);
                 d.qualitative = true;
                 d.t_end = 3.0;
                 d.default_n = 150;
                 d.snapshot_times = {1.0, 2.0, 3.0};
                 return d;
               }});

  e.push_back({"zk_single_inclined",
               {{"eps", 0.01}, {"c", 0.1}, {"theta", pi / 6.0}, {"x0", 16.0}, {"y0", 8.0}},
               [zk](const ParameterSet& p) {
                 auto d = zk("zk_single_inclined", "Zakharov-Kuznetsov inclined wave propagation", p,
                             0.0, 32.0, 0.0, 16.0, Boundary::DirichletExact);
                 d.qualitative = true;
                 d.t_end = 45.0;
                 d.default_n = 150;
                 d.snapshot_times = {15.0, 30.0, 45.0};
                 return d;
               }});

  e.push_back({"zk_double",
               {{"eps", 0.01},
                {"c1", 0.45},
                {"c2", 0.25},
                {"theta", 0.0},
                {"x1", 2.5},
                {"y1", 0.0},
                {"x2", 3.3},
                {"y2", 0.0}},
               [](const ParameterSet& p) {
                 auto d = base("zk_double", "Zakharov-Kuznetsov two-wave collision", 2, p);
                 const double eps = p.at("eps"), theta = p.at("theta");
                 d.eq2d = mixed_equation(ScalarFunction::quadratic(0.0, 0.0, 0.5), eps);
                 d.ax = d.ay = 0.0;
                 d.bx = d.by = 8.0;
                 const double c1 = p.at("c1"), c2 = p.at("c2");
                 const double x1 = p.at("x1"), y1 = p.at("y1"), x2 = p.at("x2"), y2 = p.at("y2");
                 d.solution2d = [=](double x, double y, double t) {
                   return zk_wave_profile(wrap_offset(x - c1 * t - x1, 8.0), wrap_offset(y - y1, 8.0), 0.0,
                                          c1, 0.0, 0.0, theta, eps) +
                          zk_wave_profile(wrap_offset(x - c2 * t - x2, 8.0), wrap_offset(y - y2, 8.0), 0.0,
                                          c2, 0.0, 0.0, theta, eps);
                 };
                 d.qualitative = true;
                 d.t_end = 3.0;
                 d.default_n = 150;
                 d.snapshot_times = {1.0, 2.0, 3.0};
                 return d;
               }});

  auto bell_equation = [] { return mixed_equation(ScalarFunction::quadratic(0.0, 0.0, 3.0), 1.0); };

  e.push_back({"bell_pulse", {{"c", 4.0}, {"x0", 10.0}, {"y0", 16.0}},
               [bell_equation](const ParameterSet& p) {
                 auto d = base("bell_pulse", "u_t + (3u^2)_x + u_xxx + u_xyy = 0, single pulse", 2, p);
                 d.eq2d = bell_equation();
                 d.ax = d.ay = 0.0;
                 d.bx = d.by = 32.0;
                 d.bc_x = d.bc_y = Boundary::DirichletExact;
                 const double c = p.at("c"), x0 = p.at("x0"), y0 = p.at("y0");
                 d.solution2d = [=](double x, double y, double t) {
                   return bell_pulse(x - x0, y - y0, t, c);
                 };
                 d.has_exact = true;
                 d.qualitative = true;
                 d.t_end = 3.0;
                 d.default_n = 100;
                 d.snapshot_times = {1.0, 2.0, 3.0};
                 return d;
               }});

  auto collision = [bell_equation](const std::string& name, const std::string& description,
                                   const ParameterSet& p, double length) {
    auto d = base(name, description, 2, p);
    d.eq2d = bell_equation();
    d.ax = d.ay = 0.0;
    d.bx = d.by = length;
    d.bc_x = d.bc_y = Boundary::DirichletExact;
    const double c1 = p.at("c1"), c2 = p.at("c2");
    const double x1 = p.at("x1"), y1 = p.at("y1"), x2 = p.at("x2"), y2 = p.at("y2");
    // Superposed pulses: exact at t = 0, boundary data afterwards.
    d.solution2d = [=](double x, double y, double t) {
      return bell_pulse(x - x1, y - y1, t, c1) + bell_pulse(x - x2, y - y2, t, c2);
    };
    d.qualitative = true;
    return d;
  };

  e.push_back({"bell_pulse_direct",
               {{"c1", 4.0}, {"c2", 1.0}, {"x1", 32.0}, {"y1", 32.0}, {"x2", 40.0}, {"y2", 32.0}},
               [collision](const ParameterSet& p) {
                 auto d = collision("bell_pulse_direct", "direct collision of two bell pulses", p, 64.0);
                 d.t_end = 6.0;
                 d.default_n = 200;
                 d.snapshot_times = {2.0, 4.0, 6.0};
                 return d;
               }});

  e.push_back({"bell_pulse_deviated",
               {{"c1", 4.0}, {"c2", 1.0}, {"x1", 8.0}, {"y1", 14.0}, {"x2", 16.0}, {"y2", 16.0}},
               [collision](const ParameterSet& p) {
                 auto d =
                     collision("bell_pulse_deviated", "deviated collision of two bell pulses", p, 32.0);
                 d.t_end = 5.0;
                 d.default_n = 150;
                 d.snapshot_times = {2.0, 3.0, 5.0};
                 return d;
               }});

  return e;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> r = entries();
  return r;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

double kdv_soliton_profile(double x, double t, double c, double x0, double eps) {
  const double k = 0.5 * std::sqrt(c / eps);
  return 3.0 * c * sech2(k * (x - x0 - c * t));
}

double zk_wave_profile(double x, double y, double t, double c, double x0, double y0,
                       double theta, double eps) {
  const double s = (x - c * t - x0) * std::cos(theta) + (y - y0) * std::sin(theta);
  return 3.0 * c * sech2(0.5 * std::sqrt(c / eps) * s);
}

double wrap_offset(double d, double period) {
  return d - period * std::floor(d / period + 0.5);
}

std::vector<std::string> problem_names() {
  std::vector<std::string> names;
  for (const auto& e : registry()) names.push_back(e.name);
  return names;
}

std::vector<ProblemDef> problem_catalog() {
  std::vector<ProblemDef> out;
  for (const auto& e : registry()) out.push_back(e.build(e.defaults));
  return out;
}

ProblemDef find_problem(const std::string& name, const ParameterSet& overrides) {
  for (const auto& e : registry()) {
    if (e.name != name) continue;
    ParameterSet p = e.defaults;
    for (const auto& [key, value] : overrides) {
      auto it = p.find(key);
      if (it == p.end()) {
        std::vector<std::string> keys;
        for (const auto& kv : e.defaults) keys.push_back(kv.first);
        throw ConfigError("problem '" + name + "' has no parameter '" + key + "'; valid: " +
                          (keys.empty() ? std::string("(none)") : join_names(keys)));
      }
      if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
      it->second = value;
    }
    for (const char* key : {"eps", "c", "c1", "c2"}) {
      auto it = p.find(key);
      if (it != p.end() && !(it->second > 0.0)) {
        throw ConfigError("parameter '" + std::string(key) + "' must be positive");
      }
    }
    return e.build(p);
  }
  throw ConfigError("unknown problem '" + name + "'; valid: " + join_names(problem_names()));
}

}  // namespace ldghw
