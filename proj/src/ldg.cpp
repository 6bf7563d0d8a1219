#include "ldghweno/ldg.hpp"

namespace ldghw {

double LocalPoly::operator()(double xi) const {
  double s = 0.0;
  for (int m = 0; m < coeffs.size(); ++m) s += coeffs(m) * basis_value(m, xi);
  return s;
}

double LocalPoly::derivative(double xi) const {
  double s = 0.0;
  for (int m = 0; m < coeffs.size(); ++m) s += coeffs(m) * basis_derivative(m, xi);
  return s;
}

LdgTables1D::LdgTables1D(int degree)
    : k(degree), nb(degree + 1), ng(degree + 1), rule(gauss_rule(degree + 1)) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("polynomial degree must be in [0, 4]");
  phi_gauss.resize(ng, nb);
  volume.resize(nb, ng);
  phi_left.resize(nb);
  phi_right.resize(nb);
  face_left.resize(nb);
  face_right.resize(nb);
  for (int m = 0; m < nb; ++m) {
    const double inv_norm = 1.0 / basis_norm(m);
    for (int g = 0; g < ng; ++g) {
      phi_gauss(g, m) = basis_value(m, rule.nodes(g));
      volume(m, g) = rule.weights(g) * basis_derivative(m, rule.nodes(g)) * inv_norm;
    }
    phi_left(m) = basis_value(m, -0.5);
    phi_right(m) = basis_value(m, 0.5);
    face_left(m) = phi_left(m) * inv_norm;
    face_right(m) = phi_right(m) * inv_norm;
  }
}

void solve_q_1d(const CellField& traces, const EquationSpec1D& eq, const Mesh1D& mesh,
                const LdgTables1D& tab, CellField& q, int first, int last) {
  const int nb = tab.nb;
  const int ng = tab.ng;
  const int rp = tab.right_point();
  const double inv_dx = 1.0 / mesh.dx;
  double ru[kMaxGaussPoints];
  for (int j = first; j <= last; ++j) {
    const int s = mesh.slot(j);
    // The weak form ignores constants added to r; measuring r from the right
    // trace makes constant data give exactly zero.
    const double r_ref = eq.r(traces(rp, s));
    for (int g = 0; g < ng; ++g) ru[g] = eq.r(traces(g, s)) - r_ref;
    const double r_right = 0.0;
    const double r_left = eq.r(traces(rp, s - 1)) - r_ref;
    for (int m = 0; m < nb; ++m) {
      double acc = r_right * tab.face_right(m) - r_left * tab.face_left(m);
      for (int g = 0; g < ng; ++g) acc -= tab.volume(m, g) * ru[g];
      q(m, s) = acc * inv_dx;
    }
  }
}

void solve_p_1d(const CellField& q, const EquationSpec1D& eq, const Mesh1D& mesh,
                const LdgTables1D& tab, CellField& p, int first, int last) {
  const int nb = tab.nb;
  const int ng = tab.ng;
  const double inv_dx = 1.0 / mesh.dx;
  double gq[kMaxGaussPoints];
  auto at = [&](const Eigen::VectorXd& phi, int s) {
    double v = 0.0;
    for (int m = 0; m < nb; ++m) v += phi(m) * q(m, s);
    return v;
  };
  for (int j = first; j <= last; ++j) {
    const int s = mesh.slot(j);
    for (int g = 0; g < ng; ++g) {
      double v = 0.0;
      for (int m = 0; m < nb; ++m) v += tab.phi_gauss(g, m) * q(m, s);
      gq[g] = eq.g(v);
    }
    double g_right = llf_flux_g(eq.g, at(tab.phi_right, s), at(tab.phi_left, s + 1));
    double g_left = llf_flux_g(eq.g, at(tab.phi_right, s - 1), at(tab.phi_left, s));
    const double g_ref = g_right;
    for (int g = 0; g < ng; ++g) gq[g] -= g_ref;
    g_right = 0.0;
    g_left -= g_ref;
    for (int m = 0; m < nb; ++m) {
      double acc = g_right * tab.face_right(m) - g_left * tab.face_left(m);
      for (int g = 0; g < ng; ++g) acc -= tab.volume(m, g) * gq[g];
      p(m, s) = acc * inv_dx;
    }
  }
}

LdgTables2D::LdgTables2D(int degree)
    : k(degree), nb(0), ng(degree + 1), np(degree + 3), basis(degree), rule(gauss_rule(degree + 1)) {
  nb = basis.size();
  const int nv = ng * ng;
  phi_volume.resize(nv, nb);
  vol_dxi.resize(nb, nv);
  vol_deta.resize(nb, nv);
  for (auto* m : {&phi_xleft, &phi_xright, &phi_ybottom, &phi_ytop}) m->resize(ng, nb);
  for (auto* m : {&face_xleft, &face_xright, &face_ybottom, &face_ytop}) m->resize(nb, ng);
  const Eigen::VectorXd& x = rule.nodes;
  const Eigen::VectorXd& w = rule.weights;
  for (int l = 0; l < nb; ++l) {
    const double inv_norm = 1.0 / basis.norm(l);
    for (int gy = 0; gy < ng; ++gy) {
      for (int gx = 0; gx < ng; ++gx) {
        const int v = gx + ng * gy;
        const double ww = w(gx) * w(gy) * inv_norm;
        phi_volume(v, l) = basis.value(l, x(gx), x(gy));
        vol_dxi(l, v) = ww * basis.d_xi(l, x(gx), x(gy));
        vol_deta(l, v) = ww * basis.d_eta(l, x(gx), x(gy));
      }
    }
    for (int g = 0; g < ng; ++g) {
      phi_xleft(g, l) = basis.value(l, -0.5, x(g));
      phi_xright(g, l) = basis.value(l, 0.5, x(g));
      phi_ybottom(g, l) = basis.value(l, x(g), -0.5);
      phi_ytop(g, l) = basis.value(l, x(g), 0.5);
      face_xleft(l, g) = w(g) * phi_xleft(g, l) * inv_norm;
      face_xright(l, g) = w(g) * phi_xright(g, l) * inv_norm;
      face_ybottom(l, g) = w(g) * phi_ybottom(g, l) * inv_norm;
      face_ytop(l, g) = w(g) * phi_ytop(g, l) * inv_norm;
    }
  }
}

namespace {

using detail::Fixed2D;

template <int K>
void solve_q_2d_fixed(const CellField& traces, const EquationSpec2D& eq, const Mesh2D& mesh,
                      const LdgTables2D& tab, CellField& q1, CellField& q2, int i0, int i1,
                      int j0, int j1) {
  using F = Fixed2D<K>;
  const F fx(tab);
  const int top = tab.right();
  const int right = tab.right();
  const int row_stride = mesh.x.extent();
  const double inv_dx = 1.0 / mesh.x.dx;
  const double inv_dy = 1.0 / mesh.y.dx;
  Eigen::Matrix<double, F::NV, 1> r1v, r2v;
  Eigen::Matrix<double, F::NG, 1> r1R, r1L, r2T, r2B;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const int s = mesh.slot(i, j);
      for (int gy = 0; gy < F::NG; ++gy) {
        for (int gx = 0; gx < F::NG; ++gx) {
          const double u = traces(tab.trace_index(gx, gy), s);
          r1v(gx + F::NG * gy) = eq.r1(u);
          r2v(gx + F::NG * gy) = eq.r2(u);
        }
      }
      for (int g = 0; g < F::NG; ++g) {
        r1R(g) = eq.r1(traces(tab.trace_index(right, g), s));
        r1L(g) = eq.r1(traces(tab.trace_index(right, g), s - 1));
        r2T(g) = eq.r2(traces(tab.trace_index(g, top), s));
        r2B(g) = eq.r2(traces(tab.trace_index(g, top), s - row_stride));
      }
      // Constants drop out of the weak forms; see solve_q_1d.
      const double ref1 = r1R(0), ref2 = r2T(0);
      r1v.array() -= ref1;
      r1R.array() -= ref1;
      r1L.array() -= ref1;
      r2v.array() -= ref2;
      r2T.array() -= ref2;
      r2B.array() -= ref2;
      F::coeffs(q1, s).noalias() =
          inv_dx * (fx.face_xright * r1R - fx.face_xleft * r1L - fx.vol_dxi * r1v);
      F::coeffs(q2, s).noalias() =
          inv_dy * (fx.face_ytop * r2T - fx.face_ybottom * r2B - fx.vol_deta * r2v);
    }
  }
}

// Weak-form contribution of g(q)_x (axis X) or g(q)_y (axis Y) in cell slot s.
template <int K>
void add_derivative(const Fixed2D<K>& fx, const CellField& q, const ScalarFunction& g, int s,
                    int neighbour_stride, Axis axis, double inv_h,
                    typename Fixed2D<K>::Coeffs& out) {
  using F = Fixed2D<K>;
  const bool x = axis == Axis::X;
  const auto c = F::coeffs(q, s);
  const auto c_hi = F::coeffs(q, s + neighbour_stride);
  const auto c_lo = F::coeffs(q, s - neighbour_stride);
  const auto& phi_lo = x ? fx.phi_xleft : fx.phi_ybottom;
  const auto& phi_hi = x ? fx.phi_xright : fx.phi_ytop;
  Eigen::Matrix<double, F::NV, 1> gv = fx.phi_volume * c;
  for (int v = 0; v < F::NV; ++v) gv(v) = g(gv(v));
  const Eigen::Matrix<double, F::NG, 1> own_lo = phi_lo * c;
  const Eigen::Matrix<double, F::NG, 1> own_hi = phi_hi * c;
  const Eigen::Matrix<double, F::NG, 1> nb_lo = phi_lo * c_hi;
  const Eigen::Matrix<double, F::NG, 1> nb_hi = phi_hi * c_lo;
  Eigen::Matrix<double, F::NG, 1> g_lo, g_hi;
  for (int k = 0; k < F::NG; ++k) {
    g_hi(k) = llf_flux_g(g, own_hi(k), nb_lo(k));
    g_lo(k) = llf_flux_g(g, nb_hi(k), own_lo(k));
  }
  const double ref = g_hi(0);
  gv.array() -= ref;
  g_hi.array() -= ref;
  g_lo.array() -= ref;
  if (x) {
    out.noalias() += inv_h * (fx.face_xright * g_hi - fx.face_xleft * g_lo - fx.vol_dxi * gv);
  } else {
    out.noalias() += inv_h * (fx.face_ytop * g_hi - fx.face_ybottom * g_lo - fx.vol_deta * gv);
  }
}

template <int K>
void solve_p_2d_fixed(const CellField& q1, const CellField& q2, const EquationSpec2D& eq,
                      const Mesh2D& mesh, const LdgTables2D& tab, CellField& p1, CellField& p2,
                      int i0, int i1, int j0, int j1) {
  using F = Fixed2D<K>;
  const F fx(tab);
  const int row_stride = mesh.x.extent();
  const double inv_dx = 1.0 / mesh.x.dx;
  const double inv_dy = 1.0 / mesh.y.dx;
  typename F::Coeffs acc;
  for (int j = j0; j <= j1; ++j) {
    for (int i = i0; i <= i1; ++i) {
      const int s = mesh.slot(i, j);
      acc.setZero();
      if (!eq.g11.is_zero()) add_derivative<K>(fx, q1, eq.g11, s, 1, Axis::X, inv_dx, acc);
      if (!eq.g12.is_zero()) add_derivative<K>(fx, q1, eq.g12, s, row_stride, Axis::Y, inv_dy, acc);
      F::coeffs(p1, s) = acc;
      acc.setZero();
      if (!eq.g21.is_zero()) add_derivative<K>(fx, q2, eq.g21, s, 1, Axis::X, inv_dx, acc);
      if (!eq.g22.is_zero()) add_derivative<K>(fx, q2, eq.g22, s, row_stride, Axis::Y, inv_dy, acc);
      F::coeffs(p2, s) = acc;
    }
  }
}

}  // namespace

void solve_q_2d(const CellField& traces, const EquationSpec2D& eq, const Mesh2D& mesh,
                const LdgTables2D& tab, CellField& q1, CellField& q2, int i0, int i1, int j0,
                int j1) {
  detail::dispatch_degree(tab.k, [&](auto K) {
    solve_q_2d_fixed<K()>(traces, eq, mesh, tab, q1, q2, i0, i1, j0, j1);
  });
}

void solve_p_2d(const CellField& q1, const CellField& q2, const EquationSpec2D& eq,
                const Mesh2D& mesh, const LdgTables2D& tab, CellField& p1, CellField& p2, int i0,
                int i1, int j0, int j1) {
  detail::dispatch_degree(tab.k, [&](auto K) {
    solve_p_2d_fixed<K()>(q1, q2, eq, mesh, tab, p1, p2, i0, i1, j0, j1);
  });
}

}  // namespace ldghw
