#include "ldghweno/mesh.hpp"

#include <sstream>

#include "ldghweno/basis.hpp"

namespace ldghw {

Boundary parse_boundary(const std::string& name) {
  if (name == "periodic") return Boundary::Periodic;
  if (name == "dirichlet") return Boundary::DirichletExact;
  throw ConfigError("unknown boundary policy '" + name + "' (expected periodic|dirichlet)");
}

std::string to_string(Boundary b) {
  return b == Boundary::Periodic ? "periodic" : "dirichlet";
}

Mesh1D build_mesh_1d(double a, double b, int n, Boundary boundary) {
  if (n < 5) {
    std::ostringstream os;
    os << "mesh needs at least 5 cells, got n = " << n;
    throw ConfigError(os.str());
  }
  if (!(b > a)) {
    std::ostringstream os;
    os << "mesh interval is empty: a = " << a << ", b = " << b;
    throw ConfigError(os.str());
  }
  Mesh1D m;
  m.a = a;
  m.b = b;
  m.n = n;
  m.dx = (b - a) / n;
  m.boundary = boundary;
  return m;
}

Mesh2D build_mesh_2d(double ax, double bx, int nx, Boundary bx_policy, double ay, double by,
                     int ny, Boundary by_policy) {
  return Mesh2D{build_mesh_1d(ax, bx, nx, bx_policy), build_mesh_1d(ay, by, ny, by_policy)};
}

void fill_ghosts_with(CellField& field, const Mesh1D& mesh, const CellWriter1D& dirichlet) {
  for (int g = 1; g <= kGhostWidth; ++g) {
    for (int j : {-g, mesh.n - 1 + g}) {
      if (mesh.boundary == Boundary::Periodic) {
        field.col(mesh.slot(j)) = field.col(mesh.slot(mesh.wrap(j)));
      } else {
        dirichlet(j, field.col(mesh.slot(j)));
      }
    }
  }
}

void fill_ghost_axis(CellField& field, const Mesh2D& mesh, Axis axis,
                     const CellWriter2D& dirichlet) {
  const Mesh1D& along = axis == Axis::X ? mesh.x : mesh.y;
  const Mesh1D& across = axis == Axis::X ? mesh.y : mesh.x;
  for (int s = -kGhostWidth; s < across.n + kGhostWidth; ++s) {
    for (int g = 1; g <= kGhostWidth; ++g) {
      for (int j : {-g, along.n - 1 + g}) {
        const int dst = axis == Axis::X ? mesh.slot(j, s) : mesh.slot(s, j);
        if (along.boundary == Boundary::Periodic) {
          const int w = along.wrap(j);
          const int src = axis == Axis::X ? mesh.slot(w, s) : mesh.slot(s, w);
          field.col(dst) = field.col(src);
        } else if (axis == Axis::X) {
          dirichlet(j, s, field.col(dst));
        } else {
          dirichlet(s, j, field.col(dst));
        }
      }
    }
  }
}

void fill_ghosts_with(CellField& field, const Mesh2D& mesh, const CellWriter2D& dirichlet) {
  fill_ghost_axis(field, mesh, Axis::X, dirichlet);
  fill_ghost_axis(field, mesh, Axis::Y, dirichlet);
}

void fill_ghosts(CellField& moments, const Mesh1D& mesh, double t, const ExactFn1D& exact) {
  if (mesh.boundary == Boundary::DirichletExact && !exact) {
    throw ConfigError("Dirichlet boundary requires an exact-solution callback");
  }
  static const GaussRule rule = gauss_rule(5);
  fill_ghosts_with(moments, mesh, [&](int j, Eigen::Ref<Eigen::ArrayXd> col) {
    col.head<2>() =
        cell_moments([&](double x) { return exact(x, t); }, mesh.center(j), mesh.dx, rule);
  });
}

void fill_ghosts(CellField& moments, const Mesh2D& mesh, double t, const ExactFn2D& exact) {
  const bool dirichlet = mesh.x.boundary == Boundary::DirichletExact ||
                         mesh.y.boundary == Boundary::DirichletExact;
  if (dirichlet && !exact) {
    throw ConfigError("Dirichlet boundary requires an exact-solution callback");
  }
  static const GaussRule rule = gauss_rule(5);
  fill_ghosts_with(moments, mesh, [&](int i, int j, Eigen::Ref<Eigen::ArrayXd> col) {
    col.head<4>() = cell_moments([&](double x, double y) { return exact(x, y, t); },
                                 mesh.x.center(i), mesh.y.center(j), mesh.x.dx, mesh.y.dx, rule);
  });
}

}  // namespace ldghw
