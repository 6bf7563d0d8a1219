#include "ldghweno/semidiscrete.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace ldghw {

namespace {

std::vector<double> points_of(const Reconstructor& rec) {
  std::vector<double> pts;
  for (const auto& w : rec.weights()) pts.push_back(w.xhat);
  return pts;
}

[[noreturn]] void non_finite(const char* what, int i, int j) {
  std::ostringstream os;
  os << "non-finite " << what << " in cell (" << i;
  if (j >= 0) os << ", " << j;
  os << ")";
  throw NumericalError(os.str());
}

template <int K>
void assemble_2d(const EquationSpec2D& eq, const Mesh2D& mesh, const LdgTables2D& tab,
                 const CellField& traces, const CellField& p1, const CellField& p2,
                 Eigen::ArrayXXd& hx, Eigen::ArrayXXd& hy, CellField& out) {
  using F = detail::Fixed2D<K>;
  constexpr int ng = F::NG;
  const F fx(tab);
  const int nx = mesh.x.n;
  const int ny = mesh.y.n;
  const int stride = mesh.x.extent();
  const int L = tab.left();
  const int R = tab.right();

  // x-faces x_{i-1/2}, i = 0..nx; column i + (nx+1) j.
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int s = mesh.slot(i, j);
      const Eigen::Matrix<double, ng, 1> p_plus = fx.phi_xleft * F::coeffs(p1, s);
      for (int g = 0; g < ng; ++g) {
        const double um = traces(tab.trace_index(R, g), s - 1);
        const double up = traces(tab.trace_index(L, g), s);
        hx(g, i + (nx + 1) * j) = llf_flux(eq.f1, um, up) + rprime_hat(eq.r1, um, up) * p_plus(g);
      }
    }
  }
  // y-faces y_{j-1/2}, j = 0..ny; column i + nx j.
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int s = mesh.slot(i, j);
      const Eigen::Matrix<double, ng, 1> p_plus = fx.phi_ybottom * F::coeffs(p2, s);
      for (int g = 0; g < ng; ++g) {
        const double um = traces(tab.trace_index(g, R), s - stride);
        const double up = traces(tab.trace_index(g, L), s);
        hy(g, i + nx * j) = llf_flux(eq.f2, um, up) + rprime_hat(eq.r2, um, up) * p_plus(g);
      }
    }
  }

  out.setZero(4, mesh.extent());
  const double inv_dx = 1.0 / mesh.x.dx;
  const double inv_dy = 1.0 / mesh.y.dx;
  const Eigen::VectorXd& x = tab.rule.nodes;
  const Eigen::VectorXd& w = tab.rule.weights;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int s = mesh.slot(i, j);
      double d[4] = {0.0, 0.0, 0.0, 0.0};
      // Face terms: weights 1, xi, eta, xi*eta evaluated on the faces.
      for (int g = 0; g < ng; ++g) {
        const double hl = hx(g, i + (nx + 1) * j);
        const double hr = hx(g, i + 1 + (nx + 1) * j);
        const double hb = hy(g, i + nx * j);
        const double ht = hy(g, i + nx * (j + 1));
        const double sx = w(g) * inv_dx;
        const double sy = w(g) * inv_dy;
        d[0] -= sx * (hr - hl) + sy * (ht - hb);
        d[1] -= sx * 0.5 * (hr + hl) + sy * x(g) * (ht - hb);
        d[2] -= sx * x(g) * (hr - hl) + sy * 0.5 * (ht + hb);
        d[3] -= sx * 0.5 * x(g) * (hr + hl) + sy * 0.5 * x(g) * (ht + hb);
      }
      // Volume terms: H1 d(weight)/dxi / dx + H2 d(weight)/deta / dy.
      const Eigen::Matrix<double, F::NV, 1> p1v = fx.phi_volume * F::coeffs(p1, s);
      const Eigen::Matrix<double, F::NV, 1> p2v = fx.phi_volume * F::coeffs(p2, s);
      for (int gy = 0; gy < ng; ++gy) {
        for (int gx = 0; gx < ng; ++gx) {
          const int v = gx + ng * gy;
          const double u = traces(tab.trace_index(gx, gy), s);
          const double ww = w(gx) * w(gy);
          const double h1 = ww * inv_dx * (eq.f1(u) + eq.r1.derivative(u) * p1v(v));
          const double h2 = ww * inv_dy * (eq.f2(u) + eq.r2.derivative(u) * p2v(v));
          d[1] += h1;
          d[2] += h2;
          d[3] += h1 * x(gy) + h2 * x(gx);
        }
      }
      for (int c = 0; c < 4; ++c) {
        if (!std::isfinite(d[c])) non_finite("moment derivative", i, j);
        out(c, s) = d[c];
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// 1D

Scheme1D::Scheme1D(EquationSpec1D eq, Mesh1D mesh, int k, ReconstructionConfig cfg,
                   ExactFn1D exact)
    : eq_(std::move(eq)),
      mesh_(mesh),
      rec_(k, cfg),
      tab_(k),
      exact_(std::move(exact)),
      points_(points_of(rec_)) {
  if (mesh_.boundary == Boundary::DirichletExact && !exact_) {
    throw ConfigError("Dirichlet boundary needs an exact solution");
  }
  const int ext = mesh_.extent();
  moments_.setZero(2, ext);
  traces_.setZero(rec_.size(), ext);
  q_.setZero(tab_.nb, ext);
  p_.setZero(tab_.nb, ext);
  flux_.setZero(mesh_.n + 1);
}

void Scheme1D::fill_trace_ghosts(double t) {
  fill_ghosts_with(traces_, mesh_, [&](int j, Eigen::Ref<Eigen::ArrayXd> col) {
    const double xc = mesh_.center(j);
    for (std::size_t p = 0; p < points_.size(); ++p) col(p) = exact_(xc + points_[p] * mesh_.dx, t);
  });
}

CellField Scheme1D::reconstruct(const CellField& state, double t) {
  moments_ = state;
  fill_ghosts(moments_, mesh_, t, exact_);
  double m[6];
  for (int j = 0; j < mesh_.n; ++j) {
    const int s = mesh_.slot(j);
    for (int l = -1; l <= 1; ++l) {
      m[l + 1] = moments_(0, s + l);
      m[l + 4] = moments_(1, s + l);
    }
    rec_.evaluate(m, traces_.col(s).data());
  }
  fill_trace_ghosts(t);
  return traces_;
}

void Scheme1D::rhs(const CellField& state, double t, CellField& out) {
  const int n = mesh_.n;
  reconstruct(state, t);
  solve_q_1d(traces_, eq_, mesh_, tab_, q_, -1, n + 1);
  solve_p_1d(q_, eq_, mesh_, tab_, p_, 0, n);

  const int L = tab_.left_point();
  const int R = tab_.right_point();
  for (int j = -1; j < n; ++j) {
    const int s = mesh_.slot(j);
    const double um = traces_(R, s);
    const double up = traces_(L, s + 1);
    const double p_plus = tab_.phi_left.dot(p_.col(s + 1).matrix());
    flux_(j + 1) = llf_flux(eq_.f, um, up) + rprime_hat(eq_.r, um, up) * p_plus;
  }

  out.setZero(2, mesh_.extent());
  const double inv_dx = 1.0 / mesh_.dx;
  const GaussRule& rule = tab_.rule;
  for (int j = 0; j < n; ++j) {
    const int s = mesh_.slot(j);
    const double hl = flux_(j);
    const double hr = flux_(j + 1);
    const auto pc = p_.col(s).matrix();
    double volume = 0.0;
    for (int g = 0; g < tab_.ng; ++g) {
      const double u = traces_(g, s);
      volume += rule.weights(g) * (eq_.f(u) + eq_.r.derivative(u) * tab_.phi_gauss.row(g).dot(pc));
    }
    out(0, s) = -(hr - hl) * inv_dx;
    out(1, s) = -0.5 * (hr + hl) * inv_dx + volume * inv_dx;
    if (!std::isfinite(out(0, s)) || !std::isfinite(out(1, s))) non_finite("moment derivative", j, -1);
  }
}

CellField Scheme1D::rhs(const CellField& state, double t) {
  CellField out;
  rhs(state, t, out);
  return out;
}

double Scheme1D::max_wave_speed(const CellField& state) const {
  double a = 0.0;
  for (int j = 0; j < mesh_.n; ++j) {
    const double u = state(0, mesh_.slot(j));
    a = std::max(a, eq_.f.derivative_bound(u, u));
  }
  return a;
}

double Scheme1D::conserved_sum(const CellField& state) const {
  return mesh_.dx * state.row(0).segment(mesh_.slot(0), mesh_.n).sum();
}

CellField rhs_1d(const CellField& state, double t, Scheme1D& scheme) { return scheme.rhs(state, t); }

// ---------------------------------------------------------------------------
// 2D

Scheme2D::Scheme2D(EquationSpec2D eq, Mesh2D mesh, int k, ReconstructionConfig cfg,
                   ExactFn2D exact)
    : eq_(std::move(eq)),
      mesh_(mesh),
      rec_(k, cfg),
      tab_(k),
      exact_(std::move(exact)),
      points_(points_of(rec_)) {
  const bool dirichlet = mesh_.x.boundary == Boundary::DirichletExact ||
                         mesh_.y.boundary == Boundary::DirichletExact;
  if (dirichlet && !exact_) throw ConfigError("Dirichlet boundary needs an exact solution");
  const int ext = mesh_.extent();
  const int np = rec_.size();
  moments_.setZero(4, ext);
  traces_.setZero(np * np, ext);
  for (auto* f : {&q1_, &q2_, &p1_, &p2_}) f->setZero(tab_.nb, ext);
  hx_.setZero(tab_.ng, (mesh_.x.n + 1) * mesh_.y.n);
  hy_.setZero(tab_.ng, mesh_.x.n * (mesh_.y.n + 1));
}

void Scheme2D::fill_trace_ghosts(double t) {
  const int np = static_cast<int>(points_.size());
  fill_ghosts_with(traces_, mesh_, [&](int i, int j, Eigen::Ref<Eigen::ArrayXd> col) {
    const double xc = mesh_.x.center(i);
    const double yc = mesh_.y.center(j);
    for (int iy = 0; iy < np; ++iy) {
      for (int ix = 0; ix < np; ++ix) {
        col(ix + np * iy) = exact_(xc + points_[ix] * mesh_.x.dx, yc + points_[iy] * mesh_.y.dx, t);
      }
    }
  });
}

CellField Scheme2D::reconstruct(const CellField& state, double t) {
  const int nx = mesh_.x.n;
  const int ny = mesh_.y.n;
  const int np = rec_.size();
  const int stride = mesh_.x.extent();
  moments_ = state;
  fill_ghosts(moments_, mesh_, t, exact_);

  // y-direction pass: line averages (from u, w) and line x-moments (from v, Z)
  // at every y point, for the columns the x pass needs.
  Eigen::ArrayXXd line_avg(np, nx + 2), line_mom(np, nx + 2);
  double m[6];
  for (int j = 0; j < ny; ++j) {
    for (int i = -1; i <= nx; ++i) {
      const int s = mesh_.slot(i, j);
      for (int l = -1; l <= 1; ++l) {
        m[l + 1] = moments_(0, s + l * stride);
        m[l + 4] = moments_(2, s + l * stride);
      }
      rec_.evaluate(m, line_avg.col(i + 1).data());
      for (int l = -1; l <= 1; ++l) {
        m[l + 1] = moments_(1, s + l * stride);
        m[l + 4] = moments_(3, s + l * stride);
      }
      rec_.evaluate(m, line_mom.col(i + 1).data());
    }
    for (int i = 0; i < nx; ++i) {
      const int s = mesh_.slot(i, j);
      // Face rows only feed the y-face Gauss nodes; the corner points stay unused.
      for (int iy = 0; iy < np; ++iy) {
        for (int l = 0; l < 3; ++l) {
          m[l] = line_avg(iy, i + l);
          m[l + 3] = line_mom(iy, i + l);
        }
        rec_.evaluate(m, &traces_(np * iy, s), iy < tab_.ng ? np : tab_.ng);
      }
    }
  }
  fill_trace_ghosts(t);
  return traces_;
}

void Scheme2D::rhs(const CellField& state, double t, CellField& out) {
  const int nx = mesh_.x.n;
  const int ny = mesh_.y.n;
  reconstruct(state, t);
  solve_q_2d(traces_, eq_, mesh_, tab_, q1_, q2_, -1, nx + 1, -1, ny + 1);
  solve_p_2d(q1_, q2_, eq_, mesh_, tab_, p1_, p2_, 0, nx, 0, ny);

  detail::dispatch_degree(tab_.k, [&](auto K) {
    assemble_2d<K()>(eq_, mesh_, tab_, traces_, p1_, p2_, hx_, hy_, out);
  });
}

CellField Scheme2D::rhs(const CellField& state, double t) {
  CellField out;
  rhs(state, t, out);
  return out;
}

Eigen::Array2d Scheme2D::max_wave_speeds(const CellField& state) const {
  Eigen::Array2d a = Eigen::Array2d::Zero();
  for (int j = 0; j < mesh_.y.n; ++j) {
    for (int i = 0; i < mesh_.x.n; ++i) {
      const double u = state(0, mesh_.slot(i, j));
      a(0) = std::max(a(0), eq_.f1.derivative_bound(u, u));
      a(1) = std::max(a(1), eq_.f2.derivative_bound(u, u));
    }
  }
  return a;
}

double Scheme2D::conserved_sum(const CellField& state) const {
  double s = 0.0;
  for (int j = 0; j < mesh_.y.n; ++j) {
    for (int i = 0; i < mesh_.x.n; ++i) s += state(0, mesh_.slot(i, j));
  }
  return s * mesh_.area();
}

CellField rhs_2d(const CellField& state, double t, Scheme2D& scheme) { return scheme.rhs(state, t); }

}  // namespace ldghw
