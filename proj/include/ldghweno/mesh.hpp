#pragma once

#include <functional>
#include <string>

#include <Eigen/Core>

#include "ldghweno/errors.hpp"

namespace ldghw {

enum class Boundary { Periodic, DirichletExact };

Boundary parse_boundary(const std::string& name);
std::string to_string(Boundary b);

/// Ghost layer width on every side. The reconstruction stencil is {j-1, j, j+1};
/// the second layer carries traces for the neighbour local solves.
inline constexpr int kGhostWidth = 2;

/// Uniform 1D mesh on (a, b). Cell j covers (x_{j-1/2}, x_{j+1/2}).
struct Mesh1D {
  double a = 0.0;
  double b = 1.0;
  int n = 0;
  double dx = 1.0;
  Boundary boundary = Boundary::Periodic;

  double center(int j) const { return a + (j + 0.5) * dx; }
  /// x_{j+1/2}
  double right_face(int j) const { return a + (j + 1) * dx; }
  double left_face(int j) const { return a + j * dx; }
  double length() const { return b - a; }

  /// Cells including ghosts.
  int extent() const { return n + 2 * kGhostWidth; }
  /// Storage column of cell j, valid for -kGhostWidth <= j < n + kGhostWidth.
  int slot(int j) const { return j + kGhostWidth; }
  /// Interior cell that ghost j wraps onto under periodicity.
  int wrap(int j) const { return ((j % n) + n) % n; }
};

Mesh1D build_mesh_1d(double a, double b, int n, Boundary boundary);

/// Tensor-product rectangle mesh; each axis is a Mesh1D.
struct Mesh2D {
  Mesh1D x;
  Mesh1D y;

  int extent() const { return x.extent() * y.extent(); }
  int slot(int i, int j) const { return x.slot(i) + x.extent() * y.slot(j); }
  double area() const { return x.dx * y.dx; }
};

Mesh2D build_mesh_2d(double ax, double bx, int nx, Boundary bx_policy, double ay, double by,
                     int ny, Boundary by_policy);

/// Column-per-cell storage: rows are per-cell components (moments, traces or
/// polynomial coefficients), columns run over the ghost-extended cells.
using CellField = Eigen::ArrayXXd;

using CellWriter1D = std::function<void(int j, Eigen::Ref<Eigen::ArrayXd> column)>;
using CellWriter2D = std::function<void(int i, int j, Eigen::Ref<Eigen::ArrayXd> column)>;

/// Populates ghost columns: periodic axes copy the wrapped interior column,
/// Dirichlet axes call `dirichlet` for every ghost cell.
void fill_ghosts_with(CellField& field, const Mesh1D& mesh, const CellWriter1D& dirichlet);

enum class Axis { X, Y };

/// Fills the ghost layer of one axis across the whole extent of the other axis.
void fill_ghost_axis(CellField& field, const Mesh2D& mesh, Axis axis,
                     const CellWriter2D& dirichlet);

/// x-fill followed by y-fill, so corner ghosts come from the y pass.
void fill_ghosts_with(CellField& field, const Mesh2D& mesh, const CellWriter2D& dirichlet);

using ExactFn1D = std::function<double(double x, double t)>;
using ExactFn2D = std::function<double(double x, double y, double t)>;

/// Fills moment ghosts of a (u, v) field. Dirichlet ghosts are 5-point Gauss
/// moments of `exact` at time t.
void fill_ghosts(CellField& moments, const Mesh1D& mesh, double t, const ExactFn1D& exact);

/// Same for a (u, v, w, Z) field.
void fill_ghosts(CellField& moments, const Mesh2D& mesh, double t, const ExactFn2D& exact);

}  // namespace ldghw
