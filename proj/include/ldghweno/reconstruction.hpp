#pragma once

#include <array>
#include <cmath>
#include <sstream>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "ldghweno/errors.hpp"
#include "ldghweno/mesh.hpp"

namespace ldghw {

// Hermite WENO reconstruction of point values from cell averages and first
// moments. All stencil data is ordered
//   (u_{j-1}, u_j, u_{j+1}, v_{j-1}, v_j, v_{j+1})
// where v_l is the first moment of cell l about its own centre. Polynomials are
// expressed in monomials of xi = (x - x_j) / dx.

template <typename Scalar>
using Moments6 = Eigen::Matrix<Scalar, 6, 1>;

/// Moment-to-coefficient maps for the three cubic candidates and the quintic,
/// plus the smoothness quadratic form beta = c^T B c over cubic coefficients.
template <typename Scalar>
struct StencilSystem {
  std::array<Eigen::Matrix<Scalar, 4, 6>, 3> cubic;
  Eigen::Matrix<Scalar, 6, 6> quintic;
  Eigen::Matrix<Scalar, 4, 4> smoothness;
};

template <typename Scalar>
struct StencilPolys {
  Eigen::Matrix<Scalar, 4, 3> cubic;  // column l holds p_l
  Eigen::Matrix<Scalar, 6, 1> quintic;
};

template <typename Scalar>
struct LinearWeights {
  Scalar xhat;
  Eigen::Matrix<Scalar, 3, 1> gamma;
};

namespace detail {

template <typename Scalar>
Scalar ipow(const Scalar& x, int p) {
  Scalar r(1);
  for (int i = 0; i < p; ++i) r *= x;
  return r;
}

/// int over cell `offset` (reference units) of xi^p.
template <typename Scalar>
Scalar cell_integral(int p, int offset) {
  const Scalar lo = Scalar(2 * offset - 1) / Scalar(2);
  const Scalar hi = Scalar(2 * offset + 1) / Scalar(2);
  return (ipow(hi, p + 1) - ipow(lo, p + 1)) / Scalar(p + 1);
}

template <typename Scalar>
Scalar abs_value(const Scalar& v) {
  return v < Scalar(0) ? Scalar(-v) : v;
}

template <typename Scalar>
bool is_negligible(const Scalar& v, const Scalar& scale) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::abs(v) <= 1e-10 * std::max<Scalar>(Scalar(1), scale);
  } else {
    (void)scale;
    return v == Scalar(0);
  }
}

/// Loop-based product; Eigen's scalar promotion does not cooperate with some
/// multiprecision types, so templated code avoids Eigen arithmetic operators.
template <typename Scalar, int R, int K, int C>
Eigen::Matrix<Scalar, R, C> mul(const Eigen::Matrix<Scalar, R, K>& a,
                                const Eigen::Matrix<Scalar, K, C>& b) {
  Eigen::Matrix<Scalar, R, C> out;
  for (int r = 0; r < R; ++r) {
    for (int c = 0; c < C; ++c) {
      Scalar acc(0);
      for (int k = 0; k < K; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  }
  return out;
}

template <typename Derived>
void swap_rows(Eigen::MatrixBase<Derived>& a, int r0, int r1) {
  if (r0 == r1) return;
  for (int c = 0; c < a.cols(); ++c) std::swap(a(r0, c), a(r1, c));
}

/// row r1 -= f * row r0
template <typename Derived, typename Scalar>
void axpy_row(Eigen::MatrixBase<Derived>& a, int r1, int r0, const Scalar& f) {
  for (int c = 0; c < a.cols(); ++c) a(r1, c) = a(r1, c) - f * a(r0, c);
}

template <typename Derived, typename Scalar>
void scale_row(Eigen::MatrixBase<Derived>& a, int r, const Scalar& d) {
  for (int c = 0; c < a.cols(); ++c) a(r, c) = a(r, c) / d;
}

/// Inverse of a small nonsingular matrix by Gauss-Jordan with partial pivoting.
template <typename Scalar, int N>
Eigen::Matrix<Scalar, N, N> invert(Eigen::Matrix<Scalar, N, N> a) {
  Eigen::Matrix<Scalar, N, N> inv = Eigen::Matrix<Scalar, N, N>::Identity();
  for (int c = 0; c < N; ++c) {
    int piv = c;
    for (int r = c + 1; r < N; ++r) {
      if (abs_value<Scalar>(a(r, c)) > abs_value<Scalar>(a(piv, c))) piv = r;
    }
    if (a(piv, c) == Scalar(0)) throw NumericalError("singular stencil system");
    swap_rows(a, c, piv);
    swap_rows(inv, c, piv);
    const Scalar d = a(c, c);
    scale_row(a, c, d);
    scale_row(inv, c, d);
    for (int r = 0; r < N; ++r) {
      if (r == c || a(r, c) == Scalar(0)) continue;
      const Scalar f = a(r, c);
      axpy_row(a, r, c, f);
      axpy_row(inv, r, c, f);
    }
  }
  return inv;
}

/// Rows of the moment-matching system for a degree-`Deg` polynomial.
/// Each condition is (is_moment, offset); returns the map from the stencil's
/// moments (scattered into 6-slot order) to monomial coefficients.
template <typename Scalar, int Deg>
Eigen::Matrix<Scalar, Deg + 1, 6> moment_map(const std::array<std::array<int, 2>, Deg + 1>& conds) {
  Eigen::Matrix<Scalar, Deg + 1, Deg + 1> a;
  for (int r = 0; r <= Deg; ++r) {
    const bool moment = conds[r][0] == 1;
    const int l = conds[r][1];
    for (int i = 0; i <= Deg; ++i) {
      a(r, i) = moment ? cell_integral<Scalar>(i + 1, l) - Scalar(l) * cell_integral<Scalar>(i, l)
                       : cell_integral<Scalar>(i, l);
    }
  }
  const Eigen::Matrix<Scalar, Deg + 1, Deg + 1> inv = invert<Scalar, Deg + 1>(a);
  Eigen::Matrix<Scalar, Deg + 1, 6> out;
  for (int r = 0; r <= Deg; ++r) {
    for (int c = 0; c < 6; ++c) out(r, c) = Scalar(0);
  }
  for (int r = 0; r <= Deg; ++r) {
    const int slot = conds[r][0] * 3 + conds[r][1] + 1;
    for (int i = 0; i <= Deg; ++i) out(i, slot) = inv(i, r);
  }
  return out;
}

}  // namespace detail

/// Builds the stencil systems in exact arithmetic when Scalar is a rational.
template <typename Scalar>
StencilSystem<Scalar> build_stencil_system() {
  using C4 = std::array<std::array<int, 2>, 4>;
  StencilSystem<Scalar> s;
  // {kind, offset}: kind 0 = cell average, 1 = first moment.
  s.cubic[0] = detail::moment_map<Scalar, 3>(C4{{{0, -1}, {0, 0}, {1, -1}, {1, 0}}});
  s.cubic[1] = detail::moment_map<Scalar, 3>(C4{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}});
  s.cubic[2] = detail::moment_map<Scalar, 3>(C4{{{0, -1}, {0, 0}, {0, 1}, {1, 0}}});
  s.quintic = detail::moment_map<Scalar, 5>(
      std::array<std::array<int, 2>, 6>{{{0, -1}, {0, 0}, {0, 1}, {1, -1}, {1, 0}, {1, 1}}});

  // beta = sum_{m=1..3} int_{-1/2}^{1/2} (p^(m))^2 dxi; the dx powers cancel
  // in reference coordinates.
  auto falling = [](int a, int m) {
    int r = 1;
    for (int i = 0; i < m; ++i) r *= a - i;
    return r;
  };
  for (int a = 0; a <= 3; ++a) {
    for (int b = 0; b <= 3; ++b) {
      Scalar acc(0);
      for (int m = 1; m <= std::min(a, b); ++m) {
        acc += Scalar(falling(a, m) * falling(b, m)) * detail::cell_integral<Scalar>(a + b - 2 * m, 0);
      }
      s.smoothness(a, b) = acc;
    }
  }
  return s;
}

template <typename Scalar>
StencilPolys<Scalar> build_stencil_polys(const StencilSystem<Scalar>& sys,
                                         const Moments6<Scalar>& m) {
  StencilPolys<Scalar> p;
  for (int l = 0; l < 3; ++l) p.cubic.col(l) = detail::mul(sys.cubic[l], m);
  p.quintic = detail::mul(sys.quintic, m);
  return p;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> smoothness_indicators(const StencilSystem<Scalar>& sys,
                                                  const StencilPolys<Scalar>& p) {
  Eigen::Matrix<Scalar, 3, 1> beta;
  for (int l = 0; l < 3; ++l) {
    const Eigen::Matrix<Scalar, 4, 1> c = p.cubic.col(l);
    beta(l) = detail::mul(Eigen::Matrix<Scalar, 1, 4>(c.transpose()), detail::mul(sys.smoothness, c))(0, 0);
  }
  return beta;
}

/// Row vectors r with  p_l(xhat) = r_l . moments, stacked as a 3x6 matrix, and
/// the quintic row as a 1x6 matrix.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 6> cubic_rows(const StencilSystem<Scalar>& sys, const Scalar& xhat) {
  Eigen::Matrix<Scalar, 1, 4> pw;
  for (int i = 0; i < 4; ++i) pw(i) = detail::ipow(xhat, i);
  Eigen::Matrix<Scalar, 3, 6> rows;
  for (int l = 0; l < 3; ++l) rows.row(l) = detail::mul(pw, sys.cubic[l]);
  return rows;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 1, 6> quintic_row(const StencilSystem<Scalar>& sys, const Scalar& xhat) {
  Eigen::Matrix<Scalar, 1, 6> pw;
  for (int i = 0; i < 6; ++i) pw(i) = detail::ipow(xhat, i);
  return detail::mul(pw, sys.quintic);
}

/// Solves  Q(xhat) = sum_l gamma_l p_l(xhat)  identically in the six moments:
/// six equations, three unknowns, consistent for valid points. Throws when the
/// candidates are degenerate at xhat or the identity cannot hold.
template <typename Scalar>
LinearWeights<Scalar> linear_weights(const StencilSystem<Scalar>& sys, const Scalar& xhat) {
  // Augmented 6x4 system  [P^T | q^T].
  Eigen::Matrix<Scalar, 6, 4> a;
  const Eigen::Matrix<Scalar, 3, 6> rows = cubic_rows(sys, xhat);
  const Eigen::Matrix<Scalar, 1, 6> q = quintic_row(sys, xhat);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 3; ++c) a(r, c) = rows(c, r);
    a(r, 3) = q(0, r);
  }

  Scalar scale(0);
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 4; ++c) scale = std::max<Scalar>(scale, detail::abs_value<Scalar>(a(r, c)));
  }
  auto fail = [&](const char* what) {
    std::ostringstream os;
    os << "linear weights unavailable at xhat = " << static_cast<double>(xhat) << ": " << what;
    throw NumericalError(os.str());
  };

  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int r = c + 1; r < 6; ++r) {
      if (detail::abs_value<Scalar>(a(r, c)) > detail::abs_value<Scalar>(a(piv, c))) piv = r;
    }
    if (detail::is_negligible<Scalar>(a(piv, c), scale)) fail("candidate values are dependent");
    detail::swap_rows(a, c, piv);
    const Scalar d = a(c, c);
    detail::scale_row(a, c, d);
    for (int r = 0; r < 6; ++r) {
      if (r == c || a(r, c) == Scalar(0)) continue;
      const Scalar f = a(r, c);
      detail::axpy_row(a, r, c, f);
    }
  }
  for (int r = 3; r < 6; ++r) {
    if (!detail::is_negligible<Scalar>(a(r, 3), scale)) fail("inconsistent system");
  }
  LinearWeights<Scalar> w;
  w.xhat = xhat;
  for (int c = 0; c < 3; ++c) w.gamma(c) = a(c, 3);
  return w;
}

// ---------------------------------------------------------------------------
// Runtime (double) tables and evaluation.

struct ReconstructionConfig {
  enum class Mode { Nonlinear, LinearWeightsOnly };
  double lambda = 1e-6;
  Mode mode = Mode::Nonlinear;
};

/// Everything the hot loop needs for one evaluation point.
struct PointWeights {
  double xhat = 0.0;
  Eigen::Vector3d gamma = Eigen::Vector3d::Zero();
  /// Set when some gamma is negative; the point is then reconstructed as
  /// sigma_plus * R(gamma_plus) - sigma_minus * R(gamma_minus).
  bool split = false;
  Eigen::Vector3d gamma_plus = Eigen::Vector3d::Zero();
  Eigen::Vector3d gamma_minus = Eigen::Vector3d::Zero();
  double sigma_plus = 1.0;
  double sigma_minus = 0.0;
  Eigen::Vector4d powers = Eigen::Vector4d::Zero();  // 1, x, x^2, x^3
  /// Row l maps the six stencil moments to candidate l's value at xhat.
  Eigen::Matrix<double, 3, 6> candidate_rows = Eigen::Matrix<double, 3, 6>::Zero();
  Eigen::Matrix<double, 1, 6> quintic_row = Eigen::Matrix<double, 1, 6>::Zero();
};

/// Double-precision stencil system, rounded once from the exact rational one.
const StencilSystem<double>& stencil_system();

/// Linear weights and split tables for xhat, solved exactly (the double xhat
/// is converted to an exact dyadic rational) and rounded once.
PointWeights linear_weights(double xhat);

/// omega_l = w_l / sum w,  w_l = gamma_l / (lambda + beta_l)^2.
Eigen::Vector3d nonlinear_weights(const Eigen::Vector3d& gamma, const Eigen::Vector3d& beta,
                                  double lambda);

/// Reconstructed u(xhat) from six stencil moments.
double reconstruct_point(const Moments6<double>& m, const PointWeights& w,
                         const ReconstructionConfig& cfg);

struct SmoothnessMap;

/// Precomputed weights for a fixed point set (Gauss nodes of a rule, then the
/// left and right faces) with a batched per-cell evaluator.
class Reconstructor {
 public:
  /// Points are the (k+1) Gauss nodes followed by -1/2 and +1/2.
  Reconstructor(int k, ReconstructionConfig cfg);
  Reconstructor(std::vector<double> points, ReconstructionConfig cfg);

  int size() const { return static_cast<int>(weights_.size()); }
  int left_index() const { return size() - 2; }
  int right_index() const { return size() - 1; }
  const std::vector<PointWeights>& weights() const { return weights_; }
  const ReconstructionConfig& config() const { return cfg_; }

  /// Writes u at every point; m must hold six contiguous stencil moments.
  void evaluate(const double* m, double* out) const { evaluate(m, out, size()); }
  /// Only the first `count` points.
  void evaluate(const double* m, double* out, int count) const;

 private:
  void pack();

  std::vector<PointWeights> weights_;
  // Flat per-point copies for the hot loop: 18 candidate-row entries, then
  // gamma_plus, gamma_minus, sigma_plus, sigma_minus, gamma.
  static constexpr int kPacked = 29;
  std::vector<double> packed_;
  ReconstructionConfig cfg_;
  const SmoothnessMap* smoothness_;
};

/// Point values of cell j at the reconstructor's points. Ghosts must be filled.
Eigen::ArrayXd reconstruct_cell_1d(const CellField& moments, const Mesh1D& mesh, int j,
                                   const Reconstructor& rec);

/// Dimension-by-dimension reconstruction for cell (i, j): y-direction
/// reconstructions of (u, w) and (v, Z) in columns i-1..i+1, then x-direction
/// reconstructions along every y point. Result(ix, iy) = u(x_ix, y_iy).
Eigen::ArrayXXd reconstruct_2d(const CellField& moments, const Mesh2D& mesh, int i, int j,
                               const Reconstructor& rec);

}  // namespace ldghw
