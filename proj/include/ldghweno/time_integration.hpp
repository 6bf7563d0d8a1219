#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ldghweno/semidiscrete.hpp"

namespace ldghw {

/// One third-order TVD Runge-Kutta step
///   u*   = u + dt L(u, t)
///   u**  = 3/4 u + 1/4 (u* + dt L(u*, t + dt))
///   u^+  = 1/3 u + 2/3 (u** + dt L(u**, t + dt/2))
/// written in increment form, so a zero operator leaves u bitwise unchanged.
/// State is anything with vector-space arithmetic (double, Eigen arrays).
template <typename State, typename Op>
State rk3_step(const State& u, double t, double dt, Op&& L) {
  const State u1 = u + dt * L(u, t);
  const State u2 = u + 0.25 * (u1 - u + dt * L(u1, t + dt));
  return u + (2.0 / 3.0) * (u2 - u + dt * L(u2, t + 0.5 * dt));
}

/// The same step with caller-owned buffers; L(u, t, out) writes the derivative.
template <typename State, typename Op>
void rk3_step_into(State& u, double t, double dt, Op&& L, State& du, State& u1, State& u2) {
  L(u, t, du);
  u1 = u + dt * du;
  L(u1, t + dt, du);
  u2 = u + 0.25 * (u1 - u + dt * du);
  L(u2, t + 0.5 * dt, du);
  u = u + (2.0 / 3.0) * (u2 - u + dt * du);
}

/// Largest safe cfl for degree k under the rule below, from the spectral
/// radius of the linearised operator against the RK3 stability interval on
/// the imaginary axis (sqrt 3), with a 10% margin. The dispersive bound
/// dx^3 / beta dominates every refinement of interest.
double default_cfl(int k, int dimension);

struct TimeControls {
  /// 0 selects default_cfl for the scheme's degree and dimension.
  double cfl = 0.0;
  double t_end = 0.0;
  /// Overrides the CFL rule when set (still clipped to t_end).
  std::optional<double> fixed_dt;
  /// Steps between log records (0 disables the log).
  int log_every = 1;
};

struct StepRecord {
  long step = 0;
  double t = 0.0;
  double dt = 0.0;
  double drift = 0.0;  // conserved sum minus its initial value
};

struct AdvanceResult {
  CellField state;
  double t = 0.0;
  long steps = 0;
  double max_drift = 0.0;
  std::vector<StepRecord> log;
};

inline constexpr double kMinTimeStep = 1e-14;

/// cfl * min(dx / alpha, dx^3 / beta); a zero alpha or beta drops its term.
double cfl_time_step(double cfl, double dx, double alpha, double beta);
/// cfl * min(dx / alpha1, dy / alpha2, h^3 / beta), h = min(dx, dy).
double cfl_time_step(double cfl, double dx, double dy, double alpha1, double alpha2, double beta);

/// Integrates from t0 to controls.t_end; the last step lands on t_end exactly.
AdvanceResult advance(Scheme1D& scheme, const CellField& state0, double t0,
                      const TimeControls& controls);
AdvanceResult advance(Scheme2D& scheme, const CellField& state0, double t0,
                      const TimeControls& controls);

}  // namespace ldghw
