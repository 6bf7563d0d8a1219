#include <doctest.h>

#include <cmath>
#include <random>

#include "ldghweno/basis.hpp"

using namespace ldghw;

TEST_CASE("basis values") {
  const Eigen::VectorXd p = eval_basis<double>(4, 0.5);
  CHECK(p(0) == 1.0);
  CHECK(p(1) == 0.5);
  CHECK(p(2) == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(p(3) == doctest::Approx(0.05).epsilon(1e-15));
  CHECK(p(4) == doctest::Approx(1.0 / 70).epsilon(1e-14));
  const Eigen::VectorXd q = eval_basis<double>(2, 0.0);
  CHECK(q(2) == doctest::Approx(-1.0 / 12));
  const Eigen::VectorXd d = eval_basis<double>(3, 0.25, 1);
  CHECK(d(3) == doctest::Approx(3 * 0.0625 - 0.15));
  CHECK_THROWS_AS(eval_basis<double>(5, 0.0), ConfigError);
  for (int l = 0; l <= 4; ++l) {
    CHECK(basis_value(l, 0.3) == doctest::Approx(eval_basis<double>(4, 0.3)(l)));
    CHECK(basis_derivative(l, 0.3) == doctest::Approx(eval_basis<double>(4, 0.3, 1)(l)));
  }
}

TEST_CASE("basis is orthogonal") {
  const GaussRule g = gauss_rule(5);
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      double s = 0;
      for (int i = 0; i < g.size(); ++i) s += g.weights(i) * basis_value(a, g.nodes(i)) * basis_value(b, g.nodes(i));
      if (a == b) {
        CHECK(std::abs(s - basis_norm(a)) < 1e-14);
      } else {
        CHECK(std::abs(s) < 1e-14);
      }
    }
  }
  CHECK(basis_norm(0) == 1.0);
  CHECK(basis_norm(1) == doctest::Approx(1.0 / 12));
}

TEST_CASE("2D basis ordering and orthogonality") {
  const Basis2D b(2);
  REQUIRE(b.size() == 6);
  CHECK(b.value(1, 0.3, 0.2) == doctest::Approx(0.3));
  CHECK(b.value(2, 0.3, 0.2) == doctest::Approx(0.2));
  CHECK(b.value(3, 0.3, 0.2) == doctest::Approx(0.09 - 1.0 / 12));
  CHECK(b.value(4, 0.3, 0.2) == doctest::Approx(0.06));
  CHECK(b.value(5, 0.3, 0.2) == doctest::Approx(0.04 - 1.0 / 12));
  CHECK(Basis2D(3).size() == 10);
  CHECK(Basis2D(4).size() == 15);

  const Basis2D b4(4);
  const GaussRule g = gauss_rule(5);
  double worst = 0;
  for (int p = 0; p < b4.size(); ++p) {
    for (int q = 0; q < b4.size(); ++q) {
      double s = 0;
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
          s += g.weights(i) * g.weights(j) * b4.value(p, g.nodes(i), g.nodes(j)) *
               b4.value(q, g.nodes(i), g.nodes(j));
      worst = std::max(worst, std::abs(s - (p == q ? b4.norm(p) : 0.0)));
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("Gauss rules") {
  const GaussRule g2 = gauss_rule(2);
  CHECK(std::abs(std::abs(g2.nodes(0)) - 1.0 / (2 * std::sqrt(3.0))) < 1e-15);
  CHECK(g2.weights.sum() == doctest::Approx(1.0).epsilon(1e-15));

  const GaussRule g3 = gauss_rule(3);
  double x4 = 0;
  for (int i = 0; i < 3; ++i) x4 += g3.weights(i) * std::pow(g3.nodes(i), 4);
  CHECK(std::abs(x4 - 1.0 / 80) < 1e-16);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int n = 1; n <= 5; ++n) {
    const GaussRule g = gauss_rule(n);
    for (int trial = 0; trial < 10; ++trial) {
      // Random polynomial of degree 2n-1 against its exact integral.
      std::vector<double> c(2 * n);
      for (auto& v : c) v = U(rng);
      double exact = 0;
      for (int p = 0; p < 2 * n; p += 2) exact += c[p] * 2 * std::pow(0.5, p + 1) / (p + 1);
      double quad = 0;
      for (int i = 0; i < n; ++i) {
        double v = 0;
        for (int p = 2 * n - 1; p >= 0; --p) v = v * g.nodes(i) + c[p];
        quad += g.weights(i) * v;
      }
      CHECK(std::abs(quad - exact) < 1e-14);
    }
  }
  CHECK_THROWS_AS(gauss_rule(0), ConfigError);
  CHECK_THROWS_AS(gauss_rule(6), ConfigError);
}

TEST_CASE("moment projection") {
  const Mesh1D m = build_mesh_1d(0.0, 1.0, 10, Boundary::Periodic);
  const GaussRule g = gauss_rule(5);
  const CellField one = project_to_moments([](double) { return 1.0; }, m, g);
  CHECK((one.row(0) - 1.0).abs().maxCoeff() < 1e-15);
  CHECK(one.row(1).abs().maxCoeff() < 1e-15);

  // u = (x - x_j)/dx on one cell gives u_bar = 0, v_bar = 1/12.
  const Eigen::Array2d lin = cell_moments([&](double x) { return (x - 0.35) / 0.1; }, 0.35, 0.1, g);
  CHECK(std::abs(lin(0)) < 1e-15);
  CHECK(std::abs(lin(1) - 1.0 / 12) < 1e-15);

  const Mesh1D s = build_mesh_1d(0.0, 2 * M_PI, 10, Boundary::Periodic);
  const CellField sm = project_to_moments([](double x) { return std::sin(x); }, s, g);
  for (int j = 0; j < 10; ++j) {
    const double a = s.left_face(j), b = s.right_face(j);
    CHECK(std::abs(sm(0, s.slot(j)) - (std::cos(a) - std::cos(b)) / s.dx) < 1e-12);
    // int sin(x) (x - xc)/dx dx / dx, by parts
    const double xc = s.center(j);
    const double F = [&] {
      auto I = [&](double x) { return (-(x - xc) * std::cos(x) + std::sin(x)) / (s.dx * s.dx); };
      return I(b) - I(a);
    }();
    CHECK(std::abs(sm(1, s.slot(j)) - F) < 1e-12);
  }
}
