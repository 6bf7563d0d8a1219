#include "ldghweno/equation.hpp"

#include <algorithm>
#include <cmath>

namespace ldghw {

ScalarFunction ScalarFunction::quadratic(double c0, double c1, double c2) {
  ScalarFunction s;
  s.c_[0] = c0;
  s.c_[1] = c1;
  s.c_[2] = c2;
  return s;
}

ScalarFunction ScalarFunction::callback(Fn value, Fn derivative, BoundFn derivative_bound) {
  ScalarFunction s;
  s.is_quadratic_ = false;
  s.value_ = std::move(value);
  s.derivative_ = std::move(derivative);
  s.bound_ = std::move(derivative_bound);
  return s;
}

double ScalarFunction::callback_value(double u) const { return value_(u); }

double ScalarFunction::callback_derivative(double u) const { return derivative_(u); }

double ScalarFunction::callback_bound(double lo, double hi) const {
  return bound_(std::min(lo, hi), std::max(lo, hi));
}

double EquationSpec1D::dispersion_scale() const {
  if (dispersion > 0.0) return dispersion;
  const double rp = r.derivative(0.0);
  return std::abs(g.derivative(0.0)) * rp * rp;
}

double EquationSpec2D::dispersion_scale() const {
  if (dispersion > 0.0) return dispersion;
  const double r1p = r1.derivative(0.0);
  const double r2p = r2.derivative(0.0);
  return (std::abs(g11.derivative(0.0)) + std::abs(g12.derivative(0.0))) * r1p * r1p +
         (std::abs(g21.derivative(0.0)) + std::abs(g22.derivative(0.0))) * r2p * r2p;
}

}  // namespace ldghw
