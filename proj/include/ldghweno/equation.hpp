#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

namespace ldghw {

/// A smooth scalar nonlinearity (f, r or g) with its derivative and a bound on
/// |derivative| over an interval, used for the LLF dissipation coefficient.
///
/// Quadratic functions are stored by coefficient and evaluated inline; anything
/// else goes through callbacks.
class ScalarFunction {
 public:
  using Fn = std::function<double(double)>;
  using BoundFn = std::function<double(double, double)>;

  ScalarFunction() = default;

  /// c0 + c1 u + c2 u^2. |f'| is linear, so its maximum sits at an endpoint.
  static ScalarFunction quadratic(double c0, double c1, double c2);
  static ScalarFunction linear(double slope) { return quadratic(0.0, slope, 0.0); }
  static ScalarFunction zero() { return quadratic(0.0, 0.0, 0.0); }
  static ScalarFunction callback(Fn value, Fn derivative, BoundFn derivative_bound);

  double operator()(double u) const {
    return is_quadratic_ ? c_[0] + u * (c_[1] + c_[2] * u) : callback_value(u);
  }
  double derivative(double u) const {
    return is_quadratic_ ? c_[1] + 2.0 * c_[2] * u : callback_derivative(u);
  }
  /// max |f'(u)| over [min(lo, hi), max(lo, hi)].
  double derivative_bound(double lo, double hi) const {
    if (!is_quadratic_) return callback_bound(lo, hi);
    const double a = c_[1] + 2.0 * c_[2] * lo;
    const double b = c_[1] + 2.0 * c_[2] * hi;
    return std::max(std::abs(a), std::abs(b));
  }

  /// Identically zero; lets the local solves drop whole face families.
  bool is_zero() const { return is_quadratic_ && c_[0] == 0.0 && c_[1] == 0.0 && c_[2] == 0.0; }
  bool is_linear() const { return is_quadratic_ && c_[2] == 0.0; }

 private:
  double callback_value(double u) const;
  double callback_derivative(double u) const;
  double callback_bound(double lo, double hi) const;

  bool is_quadratic_ = true;
  double c_[3] = {0.0, 0.0, 0.0};
  Fn value_;
  Fn derivative_;
  BoundFn bound_;
};

/// u_t + f(u)_x + (r'(u) g(r(u)_x)_x)_x = 0
struct EquationSpec1D {
  ScalarFunction f;
  ScalarFunction r;
  ScalarFunction g;
  /// Scale of the linearised dispersive coefficient |g' r'^2|; <= 0 derives it
  /// from the slopes at u = 0 (exact for linear r and g).
  double dispersion = -1.0;

  double dispersion_scale() const;
};

/// u_t + f1(u)_x + f2(u)_y + [r1'(u)(g11(r1(u)_x)_x + g12(r1(u)_x)_y)]_x
///                         + [r2'(u)(g21(r2(u)_y)_x + g22(r2(u)_y)_y)]_y = 0
struct EquationSpec2D {
  ScalarFunction f1, f2;
  ScalarFunction r1, r2;
  ScalarFunction g11, g12, g21, g22;
  /// Sum of the linearised dispersive coefficients; <= 0 derives it from
  /// the slopes at u = 0.
  double dispersion = -1.0;

  double dispersion_scale() const;
};

}  // namespace ldghw
