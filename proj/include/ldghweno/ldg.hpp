#pragma once

#include <cmath>
#include <type_traits>

#include <Eigen/Core>

#include "ldghweno/basis.hpp"
#include "ldghweno/equation.hpp"
#include "ldghweno/mesh.hpp"

namespace ldghw {

// ---------------------------------------------------------------------------
// Numerical fluxes.

/// Local Lax-Friedrichs flux for f: 1/2 [f(a) + f(b) - alpha (b - a)],
/// alpha = max |f'| on [min(a,b), max(a,b)]. Nondecreasing in a, nonincreasing in b.
inline double llf_flux(const ScalarFunction& f, double a, double b) {
  const double alpha = f.derivative_bound(a, b);
  return 0.5 * (f(a) + f(b) - alpha * (b - a));
}

/// Flux for g with reversed monotonicity: 1/2 [g(c) + g(d) - alpha (c - d)].
inline double llf_flux_g(const ScalarFunction& g, double c, double d) {
  const double alpha = g.derivative_bound(c, d);
  return 0.5 * (g(c) + g(d) - alpha * (c - d));
}

inline constexpr double kDividedDifferenceEps = 1e-12;

/// (r(u+) - r(u-)) / (u+ - u-), or r' at the midpoint when the jump is tiny.
inline double rprime_hat(const ScalarFunction& r, double u_minus, double u_plus) {
  const double jump = u_plus - u_minus;
  if (std::abs(jump) < kDividedDifferenceEps) return r.derivative(0.5 * (u_plus + u_minus));
  return (r(u_plus) - r(u_minus)) / jump;
}

// ---------------------------------------------------------------------------
// Cell-local polynomials.

/// p_h restricted to one cell: coefficients in the scaled orthogonal basis.
struct LocalPoly {
  Eigen::VectorXd coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double operator()(double xi) const;
  double derivative(double xi) const;
};

inline LocalPoly local_poly(const CellField& field, int slot) {
  return LocalPoly{field.col(slot).matrix()};
}

/// Basis data of degree k at the trace points (Gauss nodes, then -1/2, +1/2).
struct LdgTables1D {
  explicit LdgTables1D(int k);

  int k;
  int nb;  // basis size k + 1
  int ng;  // Gauss points k + 1
  GaussRule rule;
  Eigen::MatrixXd phi_gauss;      // ng x nb
  Eigen::MatrixXd volume;         // nb x ng : w_G phi_m'(xi_G) / |phi_m|^2
  Eigen::VectorXd phi_left;       // phi_m(-1/2)
  Eigen::VectorXd phi_right;      // phi_m(+1/2)
  Eigen::VectorXd face_left;      // phi_m(-1/2) / |phi_m|^2
  Eigen::VectorXd face_right;     // phi_m(+1/2) / |phi_m|^2

  int left_point() const { return ng; }
  int right_point() const { return ng + 1; }
};

/// q_h ~ r(u)_x on cells [first, last]. `traces` rows are the u point values
/// (Gauss nodes, left face, right face); cell j reads the right-face trace of
/// cell j-1 for r_hat = r(u^-).
void solve_q_1d(const CellField& traces, const EquationSpec1D& eq, const Mesh1D& mesh,
                const LdgTables1D& tab, CellField& q, int first, int last);

/// p_h ~ g(q)_x on cells [first, last]; reads q on first-1 .. last+1.
void solve_p_1d(const CellField& q, const EquationSpec1D& eq, const Mesh1D& mesh,
                const LdgTables1D& tab, CellField& p, int first, int last);

/// Basis data for the 2D total-degree basis at the trace points.
/// 2D trace rows are indexed ix + np * iy with np = k + 3 per direction.
struct LdgTables2D {
  explicit LdgTables2D(int k);

  int k;
  int nb;
  int ng;
  int np;
  Basis2D basis;
  GaussRule rule;
  Eigen::MatrixXd phi_volume;   // ng^2 x nb, row gx + ng*gy
  Eigen::MatrixXd vol_dxi;      // nb x ng^2 : w w dphi/dxi / |phi|^2
  Eigen::MatrixXd vol_deta;     // nb x ng^2
  // Face values along the Gauss nodes of the face (ng x nb).
  Eigen::MatrixXd phi_xleft, phi_xright, phi_ybottom, phi_ytop;
  // Weighted face rows for the weak forms (nb x ng): w_G phi / |phi|^2.
  Eigen::MatrixXd face_xleft, face_xright, face_ybottom, face_ytop;

  int trace_index(int ix, int iy) const { return ix + np * iy; }
  int left() const { return ng; }
  int right() const { return ng + 1; }
};

namespace detail {

// Fixed-size copies of the 2D tables so the per-cell products unroll.
template <int K>
struct Fixed2D {
  static constexpr int NG = K + 1;
  static constexpr int NB = (K + 1) * (K + 2) / 2;
  static constexpr int NV = NG * NG;
  using VolRow = Eigen::Matrix<double, NB, NV>;
  using FaceRow = Eigen::Matrix<double, NB, NG>;
  using FacePhi = Eigen::Matrix<double, NG, NB>;
  using Coeffs = Eigen::Matrix<double, NB, 1>;

  Eigen::Matrix<double, NV, NB> phi_volume;
  VolRow vol_dxi, vol_deta;
  FacePhi phi_xleft, phi_xright, phi_ybottom, phi_ytop;
  FaceRow face_xleft, face_xright, face_ybottom, face_ytop;

  explicit Fixed2D(const LdgTables2D& t)
      : phi_volume(t.phi_volume),
        vol_dxi(t.vol_dxi),
        vol_deta(t.vol_deta),
        phi_xleft(t.phi_xleft),
        phi_xright(t.phi_xright),
        phi_ybottom(t.phi_ybottom),
        phi_ytop(t.phi_ytop),
        face_xleft(t.face_xleft),
        face_xright(t.face_xright),
        face_ybottom(t.face_ybottom),
        face_ytop(t.face_ytop) {}

  static Eigen::Map<const Coeffs> coeffs(const CellField& f, int s) {
    return Eigen::Map<const Coeffs>(f.data() + static_cast<std::ptrdiff_t>(s) * f.rows());
  }
  static Eigen::Map<Coeffs> coeffs(CellField& f, int s) {
    return Eigen::Map<Coeffs>(f.data() + static_cast<std::ptrdiff_t>(s) * f.rows());
  }
};

/// Calls fn(std::integral_constant<int, K>{}) for the runtime degree k.
template <typename Fn>
void dispatch_degree(int k, Fn&& fn) {
  switch (k) {
    case 0: fn(std::integral_constant<int, 0>{}); break;
    case 1: fn(std::integral_constant<int, 1>{}); break;
    case 2: fn(std::integral_constant<int, 2>{}); break;
    case 3: fn(std::integral_constant<int, 3>{}); break;
    case 4: fn(std::integral_constant<int, 4>{}); break;
    default: throw ConfigError("polynomial degree must be in [0, 4]");
  }
}

}  // namespace detail

/// q1 ~ r1(u)_x and q2 ~ r2(u)_y on cells [i0, i1] x [j0, j1].
void solve_q_2d(const CellField& traces, const EquationSpec2D& eq, const Mesh2D& mesh,
                const LdgTables2D& tab, CellField& q1, CellField& q2, int i0, int i1, int j0,
                int j1);

/// p1 = g11(q1)_x + g12(q1)_y and p2 = g21(q2)_x + g22(q2)_y on the given cells.
void solve_p_2d(const CellField& q1, const CellField& q2, const EquationSpec2D& eq,
                const Mesh2D& mesh, const LdgTables2D& tab, CellField& p1, CellField& p2, int i0,
                int i1, int j0, int j1);

}  // namespace ldghw
