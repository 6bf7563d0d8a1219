#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ldghweno/equation.hpp"
#include "ldghweno/mesh.hpp"

namespace ldghw {

using ParameterSet = std::map<std::string, double>;

/// One experiment: equation, domain, boundary policy, data and defaults.
///
/// `solution` is u(x[, y], t). For problems with `has_exact` it is the exact
/// solution; otherwise it is only meaningful at t = 0 (the initial condition)
/// and, on Dirichlet boundaries, as boundary data.
struct ProblemDef {
  std::string name;
  std::string description;
  int dimension = 1;

  EquationSpec1D eq1d;
  EquationSpec2D eq2d;

  double ax = 0.0, bx = 1.0;
  double ay = 0.0, by = 1.0;
  Boundary bc_x = Boundary::Periodic;
  Boundary bc_y = Boundary::Periodic;

  ExactFn1D solution1d;
  ExactFn2D solution2d;
  bool has_exact = false;
  /// No error table in the reference results; runs only emit profiles.
  bool qualitative = false;

  double t_end = 1.0;
  int default_n = 40;
  std::vector<double> snapshot_times;
  ParameterSet params;

  double initial(double x) const { return solution1d(x, 0.0); }
  double initial(double x, double y) const { return solution2d(x, y, 0.0); }
};

/// a_2, a_4, ..., a_20 of the cylindrically symmetric solitary wave.
inline constexpr std::array<double, 10> kBellPulseCoefficients = {
    -1.25529873, 0.21722635,  0.06452543,  0.00540862,  -0.00332515,
    -0.00281281, -0.00138352, -0.00070289, -0.00020451, -0.00003053};

/// (c/3) sum_n a_2n (cos(2n arccot(sqrt(c)/2 r)) - 1),  r = |(x - ct, y)|.
double bell_pulse(double x, double y, double t, double c);

/// 3c sech^2(k (x - x0 - ct)),  k = sqrt(c / eps) / 2.
double kdv_soliton_profile(double x, double t, double c, double x0, double eps);

/// 3c sech^2(sqrt(c / eps) / 2 ((x - ct - x0) cos(theta) + (y - y0) sin(theta))).
double zk_wave_profile(double x, double y, double t, double c, double x0, double y0,
                       double theta, double eps);

/// Shortest signed representative of d modulo `period`.
double wrap_offset(double d, double period);

/// Names in catalog order.
std::vector<std::string> problem_names();

/// Every problem with its default parameters.
std::vector<ProblemDef> problem_catalog();

/// Builds a problem, overriding any of its named parameters. Unknown names
/// (problem or parameter) raise ConfigError listing the valid ones.
ProblemDef find_problem(const std::string& name, const ParameterSet& overrides = {});

}  // namespace ldghw
