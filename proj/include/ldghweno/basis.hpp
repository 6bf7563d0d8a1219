#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "ldghweno/errors.hpp"
#include "ldghweno/mesh.hpp"

namespace ldghw {

inline constexpr int kMaxDegree = 4;
inline constexpr int kMaxGaussPoints = 5;

/// Scaled orthogonal basis on the reference cell xi in [-1/2, 1/2]:
///   1, xi, xi^2 - 1/12, xi^3 - 3/20 xi, xi^4 - 3/14 xi^2 + 3/560.
/// Returns [phi_0 .. phi_k] (deriv = 0) or their xi-derivatives (deriv = 1).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> eval_basis(int k, const Scalar& xi, int deriv = 0) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("basis degree must be in [0, 4]");
  if (deriv != 0 && deriv != 1) throw ConfigError("basis derivative order must be 0 or 1");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out(k + 1);
  const Scalar x2 = xi * xi;
  if (deriv == 0) {
    const Scalar all[5] = {Scalar(1), xi, x2 - Scalar(1) / Scalar(12),
                           x2 * xi - Scalar(3) / Scalar(20) * xi,
                           x2 * x2 - Scalar(3) / Scalar(14) * x2 + Scalar(3) / Scalar(560)};
    for (int l = 0; l <= k; ++l) out(l) = all[l];
  } else {
    const Scalar all[5] = {Scalar(0), Scalar(1), Scalar(2) * xi,
                           Scalar(3) * x2 - Scalar(3) / Scalar(20),
                           Scalar(4) * x2 * xi - Scalar(3) / Scalar(7) * xi};
    for (int l = 0; l <= k; ++l) out(l) = all[l];
  }
  return out;
}

/// phi_l(xi) without allocation.
double basis_value(int l, double xi);
double basis_derivative(int l, double xi);

/// Reference-cell norm  int_{-1/2}^{1/2} phi_l^2 dxi.
double basis_norm(int l);

/// 2D total-degree basis phi_a(xi) phi_b(eta), a + b <= k, graded by degree
/// with descending xi power inside a degree:
///   1, xi, eta, xi^2-1/12, xi eta, eta^2-1/12, ...
struct Basis2D {
  int k = 2;
  std::vector<std::array<int, 2>> powers;

  explicit Basis2D(int degree);
  int size() const { return static_cast<int>(powers.size()); }
  double value(int l, double xi, double eta) const;
  double d_xi(int l, double xi, double eta) const;
  double d_eta(int l, double xi, double eta) const;
  double norm(int l) const;
};

/// Gauss-Legendre rule on [-1/2, 1/2] with weights summing to one.
struct GaussRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int size() const { return static_cast<int>(nodes.size()); }
};

GaussRule gauss_rule(int npts);

/// Per-cell Gauss moments (u_bar, v_bar) over interior and ghost cells.
CellField project_to_moments(const std::function<double(double)>& u0, const Mesh1D& mesh,
                             const GaussRule& rule);

/// Per-cell Gauss moments (u_bar, v_bar, w_bar, Z_bar) with a tensor rule.
CellField project_to_moments(const std::function<double(double, double)>& u0,
                             const Mesh2D& mesh, const GaussRule& rule);

/// Moments of a single cell centred at xc, used by the Dirichlet ghost fill.
Eigen::Array2d cell_moments(const std::function<double(double)>& u, double xc, double dx,
                            const GaussRule& rule);
Eigen::Array4d cell_moments(const std::function<double(double, double)>& u, double xc,
                            double yc, double dx, double dy, const GaussRule& rule);

}  // namespace ldghw
