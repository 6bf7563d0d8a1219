#pragma once

#include <vector>

#include "ldghweno/equation.hpp"
#include "ldghweno/ldg.hpp"
#include "ldghweno/mesh.hpp"
#include "ldghweno/reconstruction.hpp"

namespace ldghw {

/// Method-of-lines operator for the 1D moments (u_bar, v_bar).
///
/// Every call runs the whole pipeline: moment ghosts, reconstruction, q and p
/// sweeps, interface fluxes H = f_hat + r_hat' p^+, moment derivatives.
class Scheme1D {
 public:
  Scheme1D(EquationSpec1D eq, Mesh1D mesh, int k, ReconstructionConfig cfg = {},
           ExactFn1D exact = {});

  /// d(moments)/dt at time t. Ghost columns of `out` are zero.
  void rhs(const CellField& state, double t, CellField& out);
  CellField rhs(const CellField& state, double t);

  /// Largest |f'| over the interior cell averages.
  double max_wave_speed(const CellField& state) const;
  /// dx * sum of interior u_bar.
  double conserved_sum(const CellField& state) const;

  const Mesh1D& mesh() const { return mesh_; }
  const EquationSpec1D& equation() const { return eq_; }
  int degree() const { return tab_.k; }
  const Reconstructor& reconstructor() const { return rec_; }
  const std::vector<double>& trace_points() const { return points_; }

  // Pipeline products of the most recent rhs call.
  const CellField& moments() const { return moments_; }
  const CellField& traces() const { return traces_; }
  const CellField& q() const { return q_; }
  const CellField& p() const { return p_; }
  /// Interface flux at x_{j+1/2}, j = -1 .. n-1.
  double flux(int j) const { return flux_(j + 1); }

  /// Point values at the trace points of interior cells (no time stepping).
  CellField reconstruct(const CellField& state, double t);

 private:
  void fill_trace_ghosts(double t);

  EquationSpec1D eq_;
  Mesh1D mesh_;
  Reconstructor rec_;
  LdgTables1D tab_;
  ExactFn1D exact_;
  std::vector<double> points_;
  CellField moments_, traces_, q_, p_;
  Eigen::ArrayXd flux_;
};

/// Method-of-lines operator for the 2D moments (u_bar, v_bar, w_bar, Z_bar).
class Scheme2D {
 public:
  Scheme2D(EquationSpec2D eq, Mesh2D mesh, int k, ReconstructionConfig cfg = {},
           ExactFn2D exact = {});

  void rhs(const CellField& state, double t, CellField& out);
  CellField rhs(const CellField& state, double t);

  /// (max |f1'|, max |f2'|) over the interior cell averages.
  Eigen::Array2d max_wave_speeds(const CellField& state) const;
  double conserved_sum(const CellField& state) const;

  const Mesh2D& mesh() const { return mesh_; }
  const EquationSpec2D& equation() const { return eq_; }
  int degree() const { return tab_.k; }
  const LdgTables2D& tables() const { return tab_; }
  const Reconstructor& reconstructor() const { return rec_; }
  const std::vector<double>& trace_points() const { return points_; }

  const CellField& traces() const { return traces_; }
  const CellField& q1() const { return q1_; }
  const CellField& q2() const { return q2_; }
  const CellField& p1() const { return p1_; }
  const CellField& p2() const { return p2_; }

  CellField reconstruct(const CellField& state, double t);

 private:
  void fill_trace_ghosts(double t);

  EquationSpec2D eq_;
  Mesh2D mesh_;
  Reconstructor rec_;
  LdgTables2D tab_;
  ExactFn2D exact_;
  std::vector<double> points_;
  CellField moments_, traces_, q1_, q2_, p1_, p2_;
  Eigen::ArrayXXd hx_, hy_;  // face fluxes, one column per face, one row per Gauss node
};

CellField rhs_1d(const CellField& state, double t, Scheme1D& scheme);
CellField rhs_2d(const CellField& state, double t, Scheme2D& scheme);

}  // namespace ldghw
