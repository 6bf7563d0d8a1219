#include "ldghweno/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace ldghw {

double default_cfl(int k, int dimension) {
  static constexpr double one_d[] = {0.07, 0.011, 0.0057, 0.0009, 0.0009};
  static constexpr double two_d[] = {0.09, 0.02, 0.0095, 0.0017, 0.0009};
  if (k < 0 || k > 4) throw ConfigError("polynomial degree must be in [0, 4]");
  if (dimension == 1) return one_d[k];
  if (dimension == 2) return two_d[k];
  throw ConfigError("dimension must be 1 or 2");
}

double cfl_time_step(double cfl, double dx, double alpha, double beta) {
  double dt = std::numeric_limits<double>::infinity();
  if (alpha > 0.0) dt = std::min(dt, dx / alpha);
  if (beta > 0.0) dt = std::min(dt, dx * dx * dx / beta);
  if (!std::isfinite(dt)) throw ConfigError("CFL rule needs a nonzero wave speed or dispersion");
  return cfl * dt;
}

double cfl_time_step(double cfl, double dx, double dy, double alpha1, double alpha2,
                     double beta) {
  const double h = std::min(dx, dy);
  double dt = std::numeric_limits<double>::infinity();
  if (alpha1 > 0.0) dt = std::min(dt, dx / alpha1);
  if (alpha2 > 0.0) dt = std::min(dt, dy / alpha2);
  if (beta > 0.0) dt = std::min(dt, h * h * h / beta);
  if (!std::isfinite(dt)) throw ConfigError("CFL rule needs a nonzero wave speed or dispersion");
  return cfl * dt;
}

namespace {

template <typename Scheme, typename DtRule>
AdvanceResult run(Scheme& scheme, const CellField& state0, double t0, const TimeControls& tc,
                  DtRule&& dt_rule) {
  if (tc.t_end < t0) throw ConfigError("final time precedes start time");
  if (!(tc.cfl >= 0.0)) throw ConfigError("cfl must be positive, or 0 for the default");
  AdvanceResult res;
  res.state = state0;
  res.t = t0;
  const double sum0 = scheme.conserved_sum(state0);
  // Instability usually shows up as runaway growth well before any NaN.
  const double blowup = 1e8 * std::max(1.0, state0.row(0).abs().maxCoeff());
  auto L = [&](const CellField& s, double t, CellField& out) { scheme.rhs(s, t, out); };
  CellField du, u1, u2;
  while (res.t < tc.t_end) {
    double dt = tc.fixed_dt ? *tc.fixed_dt : dt_rule(res.state);
    if (!(dt >= kMinTimeStep)) {
      std::ostringstream os;
      os << "time step underflow (dt = " << dt << ") at step " << res.steps << ", t = " << res.t;
      throw NumericalError(os.str());
    }
    bool last = false;
    if (res.t + dt >= tc.t_end) {
      dt = tc.t_end - res.t;
      last = true;
    }
    try {
      rk3_step_into(res.state, res.t, dt, L, du, u1, u2);
    } catch (const NumericalError& e) {
      throw NumericalError(std::string(e.what()) + " at step " + std::to_string(res.steps + 1));
    }
    res.t = last ? tc.t_end : res.t + dt;
    ++res.steps;
    const double peak = res.state.row(0).abs().maxCoeff();
    if (!(peak <= blowup)) {
      std::ostringstream os;
      os << (std::isfinite(peak) ? "solution blew up" : "non-finite solution") << " at step "
         << res.steps << ", t = " << res.t << " (max |u_bar| = " << peak
         << "); try a smaller cfl";
      throw NumericalError(os.str());
    }
    const double drift = scheme.conserved_sum(res.state) - sum0;
    res.max_drift = std::max(res.max_drift, std::abs(drift));
    if (tc.log_every > 0 && (res.steps % tc.log_every == 0 || last)) {
      res.log.push_back({res.steps, res.t, dt, drift});
    }
  }
  return res;
}

}  // namespace

AdvanceResult advance(Scheme1D& scheme, const CellField& state0, double t0,
                      const TimeControls& controls) {
  const double beta = scheme.equation().dispersion_scale();
  const double dx = scheme.mesh().dx;
  const double cfl = controls.cfl > 0.0 ? controls.cfl : default_cfl(scheme.degree(), 1);
  return run(scheme, state0, t0, controls, [&](const CellField& s) {
    return cfl_time_step(cfl, dx, scheme.max_wave_speed(s), beta);
  });
}

AdvanceResult advance(Scheme2D& scheme, const CellField& state0, double t0,
                      const TimeControls& controls) {
  const double beta = scheme.equation().dispersion_scale();
  const double dx = scheme.mesh().x.dx;
  const double dy = scheme.mesh().y.dx;
  const double cfl = controls.cfl > 0.0 ? controls.cfl : default_cfl(scheme.degree(), 2);
  return run(scheme, state0, t0, controls, [&](const CellField& s) {
    const Eigen::Array2d a = scheme.max_wave_speeds(s);
    return cfl_time_step(cfl, dx, dy, a(0), a(1), beta);
  });
}

}  // namespace ldghw
