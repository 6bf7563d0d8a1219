#include <doctest.h>

#include <cmath>
#include <set>

#include "ldghweno/problems.hpp"

using namespace ldghw;

namespace {

using Fn2 = std::function<double(double, double, double)>;

// Fourth-order central difference in coordinate `axis` (0 = x, 1 = y, 2 = t).
Fn2 diff(const Fn2& u, int axis, double h) {
  return [=](double x, double y, double t) {
    auto at = [&](double s) {
      double p[3] = {x, y, t};
      p[axis] += s;
      return u(p[0], p[1], p[2]);
    };
    return (at(-2 * h) - 8 * at(-h) + 8 * at(h) - at(2 * h)) / (12 * h);
  };
}

// PDE residual at (x, y, t) relative to the size of its terms. Every problem
// uses linear r and g, so the dispersive part is a sum of constant multiples
// of third derivatives.
double relative_residual(const ProblemDef& p, double x, double y, double t, double h) {
  if (p.dimension == 1) {
    const Fn2 u = [&](double x, double, double t) { return p.solution1d(x, t); };
    const double a = p.eq1d.g.derivative(0) * std::pow(p.eq1d.r.derivative(0), 2);
    const double ut = diff(u, 2, h)(x, 0, t);
    const double conv = p.eq1d.f.derivative(u(x, 0, t)) * diff(u, 0, h)(x, 0, t);
    const double disp = a * diff(diff(diff(u, 0, h), 0, h), 0, h)(x, 0, t);
    return std::abs(ut + conv + disp) / (std::abs(ut) + std::abs(conv) + std::abs(disp) + 1e-300);
  }
  const EquationSpec2D& e = p.eq2d;
  const Fn2 u = p.solution2d;
  const double v = u(x, y, t);
  const Fn2 ux = diff(u, 0, h), uy = diff(u, 1, h);
  const double terms[] = {
      diff(u, 2, h)(x, y, t),
      e.f1.derivative(v) * ux(x, y, t),
      e.f2.derivative(v) * uy(x, y, t),
      e.g11.derivative(0) * diff(diff(ux, 0, h), 0, h)(x, y, t),
      e.g12.derivative(0) * diff(diff(ux, 1, h), 0, h)(x, y, t),
      e.g21.derivative(0) * diff(diff(uy, 0, h), 1, h)(x, y, t),
      e.g22.derivative(0) * diff(diff(uy, 1, h), 1, h)(x, y, t),
  };
  double sum = 0, mag = 1e-300;
  for (double term : terms) {
    sum += term;
    mag += std::abs(term);
  }
  return std::abs(sum) / mag;
}

}  // namespace

TEST_CASE("catalog") {
  const auto names = problem_names();
  CHECK(names.size() == 15);
  CHECK(std::set<std::string>(names.begin(), names.end()).size() == names.size());
  for (const auto& p : problem_catalog()) {
    CHECK(p.t_end > 0);
    CHECK(p.default_n >= 5);
    CHECK(p.bx > p.ax);
    for (double s : p.snapshot_times) CHECK(s <= p.t_end);
    if (p.dimension == 1) {
      CHECK(std::isfinite(p.initial(0.5 * (p.ax + p.bx))));
    } else {
      CHECK(p.by > p.ay);
      CHECK(std::isfinite(p.initial(0.5 * (p.ax + p.bx), 0.5 * (p.ay + p.by))));
    }
  }
}

TEST_CASE("lookup errors name the alternatives") {
  try {
    find_problem("kdv");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("kdv_soliton") != std::string::npos);
  }
  try {
    find_problem("zk_wave", {{"speed", 1.0}});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("theta") != std::string::npos);
  }
  CHECK_THROWS_AS(find_problem("kdv_single_soliton", {{"eps", -1.0}}), ConfigError);
  CHECK_THROWS_AS(find_problem("bell_pulse", {{"c", 0.0}}), ConfigError);
}

TEST_CASE("initial data") {
  CHECK(find_problem("linear1d").initial(0.0) == 0.0);
  CHECK(find_problem("kdv_soliton").initial(0.0) == doctest::Approx(-2.0));
  CHECK(find_problem("zk_wave").initial(0.0, 0.0) == doctest::Approx(0.03));
  CHECK(find_problem("kdv_single_soliton").initial(0.5) == doctest::Approx(0.9));
  CHECK(find_problem("kdv_triple_soliton").initial(1.0) == doctest::Approx(2.0 / 3));
  CHECK(find_problem("zero_dispersion").initial(0.25) == doctest::Approx(2.5));
  const ProblemDef z = find_problem("zk_wave_inclined");
  CHECK(z.params.at("theta") == doctest::Approx(M_PI / 12));
  CHECK(z.bc_x == Boundary::Periodic);
  CHECK(z.bc_y == Boundary::DirichletExact);
  CHECK(find_problem("zk_single", {{"c", 2.0}}).initial(2.5, 4.0) == doctest::Approx(6.0));
}

TEST_CASE("bell pulse") {
  const auto& a = kBellPulseCoefficients;
  const double peak = 4.0 / 3 * -2 * (a[0] + a[2] + a[4] + a[6] + a[8]);
  CHECK(bell_pulse(0, 0, 0, 4.0) == doctest::Approx(peak).epsilon(1e-12));
  CHECK(peak == doctest::Approx(3.1885).epsilon(1e-4));
  CHECK(std::abs(bell_pulse(200, 0, 0, 4.0)) < 1e-3);
  CHECK(std::abs(bell_pulse(0, 200, 0, 4.0)) < 1e-3);
  CHECK(bell_pulse(3.0, 1.0, 0.5, 4.0) == doctest::Approx(bell_pulse(1.0, 1.0, 0.0, 4.0)).epsilon(1e-14));
  CHECK(bell_pulse(1.2, 0.7, 0, 4.0) == doctest::Approx(bell_pulse(-0.7, 1.2, 0, 4.0)).epsilon(1e-14));

  // Against the trigonometric form.
  auto trig = [&](double r, double c) {
    const double th = std::atan2(1.0, 0.5 * std::sqrt(c) * r);  // arccot
    double s = 0;
    for (int n = 1; n <= 10; ++n) s += a[n - 1] * (std::cos(2 * n * th) - 1);
    return c / 3 * s;
  };
  for (double r : {0.0, 0.3, 1.0, 2.5, 7.0}) CHECK(bell_pulse(r, 0, 0, 4.0) == doctest::Approx(trig(r, 4.0)).epsilon(1e-12));

  const ProblemDef b = find_problem("bell_pulse");
  CHECK(b.initial(10.0, 16.0) == doctest::Approx(peak));
}

TEST_CASE("periodic solutions use the nearest image") {
  CHECK(wrap_offset(0.3, 2.0) == doctest::Approx(0.3));
  CHECK(wrap_offset(1.7, 2.0) == doctest::Approx(-0.3));
  CHECK(wrap_offset(-1.2, 2.0) == doctest::Approx(0.8));
  const ProblemDef k = find_problem("kdv_soliton");
  CHECK(k.solution1d(-10.0, 0.3) == doctest::Approx(k.solution1d(12.0, 0.3)).epsilon(1e-14));
}

TEST_CASE("exact solutions satisfy their equations") {
  struct Probe {
    const char* name;
    double x, y, t, h;
  };
  const Probe probes[] = {
      {"linear1d", 1.3, 0, 0.4, 1e-2},
      {"kdv_soliton", 1.1, 0, 0.2, 1e-2},
      {"kdv_soliton", 2.4, 0, 0.4, 1e-2},
      {"kdv_single_soliton", 0.52, 0, 0.1, 1e-3},
      {"kdv_single_soliton", 0.6, 0, 0.3, 1e-3},
      {"linear2d", 0.4, 2.0, 0.3, 1e-2},
      {"zk_wave", 0.6, 0.2, 0.5, 1e-2},
      {"zk_wave_inclined", 17.0, 8.9, 0.5, 1e-2},
      {"zk_single_inclined", 16.7, 8.4, 1.0, 1e-2},
      {"zk_single", 3.4, 4.2, 0.2, 1e-2},
  };
  for (const auto& pr : probes) {
    CAPTURE(std::string(pr.name));
    CHECK(relative_residual(find_problem(pr.name), pr.x, pr.y, pr.t, pr.h) < 1e-5);
  }
  // The pulse series is truncated at ten terms with 8-digit coefficients, so
  // it solves the equation only to a fraction of a percent.
  const ProblemDef b = find_problem("bell_pulse");
  for (double dx : {0.2, 0.5, 1.0}) {
    CHECK(relative_residual(b, 10.0 + 4.0 * 0.3 + dx, 16.3, 0.3, 1e-2) < 1e-2);
  }
}
