#include "ldghweno/basis.hpp"

#include <cmath>
#include <string>

namespace ldghw {

double basis_value(int l, double xi) {
  const double x2 = xi * xi;
  switch (l) {
    case 0: return 1.0;
    case 1: return xi;
    case 2: return x2 - 1.0 / 12.0;
    case 3: return x2 * xi - 3.0 / 20.0 * xi;
    case 4: return x2 * x2 - 3.0 / 14.0 * x2 + 3.0 / 560.0;
    default: throw ConfigError("basis index out of range: " + std::to_string(l));
  }
}

double basis_derivative(int l, double xi) {
  switch (l) {
    case 0: return 0.0;
    case 1: return 1.0;
    case 2: return 2.0 * xi;
    case 3: return 3.0 * xi * xi - 3.0 / 20.0;
    case 4: return 4.0 * xi * xi * xi - 3.0 / 7.0 * xi;
    default: throw ConfigError("basis index out of range: " + std::to_string(l));
  }
}

double basis_norm(int l) {
  static constexpr double norms[5] = {1.0, 1.0 / 12.0, 1.0 / 180.0, 1.0 / 2800.0, 1.0 / 44100.0};
  if (l < 0 || l > kMaxDegree) throw ConfigError("basis index out of range: " + std::to_string(l));
  return norms[l];
}

Basis2D::Basis2D(int degree) : k(degree) {
  if (k < 0 || k > kMaxDegree) throw ConfigError("basis degree must be in [0, 4]");
  for (int d = 0; d <= k; ++d) {
    for (int b = 0; b <= d; ++b) powers.push_back({d - b, b});
  }
}

double Basis2D::value(int l, double xi, double eta) const {
  return basis_value(powers[l][0], xi) * basis_value(powers[l][1], eta);
}

double Basis2D::d_xi(int l, double xi, double eta) const {
  return basis_derivative(powers[l][0], xi) * basis_value(powers[l][1], eta);
}

double Basis2D::d_eta(int l, double xi, double eta) const {
  return basis_value(powers[l][0], xi) * basis_derivative(powers[l][1], eta);
}

double Basis2D::norm(int l) const { return basis_norm(powers[l][0]) * basis_norm(powers[l][1]); }

GaussRule gauss_rule(int npts) {
  // Standard Gauss-Legendre abscissae/weights on [-1, 1], positive half.
  static constexpr long double x2 = 0.577350269189625764509148780501957456L;
  static constexpr long double x3 = 0.774596669241483377035853079956479922L;
  static constexpr long double w3c = 0.888888888888888888888888888888888889L;
  static constexpr long double w3 = 0.555555555555555555555555555555555556L;
  static constexpr long double x4a = 0.339981043584856264802665759103244687L;
  static constexpr long double x4b = 0.861136311594052575223946488892809505L;
  static constexpr long double w4a = 0.652145154862546142626936050778000593L;
  static constexpr long double w4b = 0.347854845137453857373063949221999407L;
  static constexpr long double x5a = 0.538469310105683091036314420700208805L;
  static constexpr long double x5b = 0.906179845938663992797626878299392965L;
  static constexpr long double w5c = 0.568888888888888888888888888888888889L;
  static constexpr long double w5a = 0.478628670499366468041291514835638192L;
  static constexpr long double w5b = 0.236926885056189087514264040719917363L;

  std::vector<long double> x, w;
  switch (npts) {
    case 1: x = {0.0L}; w = {2.0L}; break;
    case 2: x = {-x2, x2}; w = {1.0L, 1.0L}; break;
    case 3: x = {-x3, 0.0L, x3}; w = {w3, w3c, w3}; break;
    case 4: x = {-x4b, -x4a, x4a, x4b}; w = {w4b, w4a, w4a, w4b}; break;
    case 5: x = {-x5b, -x5a, 0.0L, x5a, x5b}; w = {w5b, w5a, w5c, w5a, w5b}; break;
    default: throw ConfigError("Gauss rule needs 1..5 points, got " + std::to_string(npts));
  }
  GaussRule rule;
  rule.nodes.resize(npts);
  rule.weights.resize(npts);
  for (int i = 0; i < npts; ++i) {
    rule.nodes(i) = static_cast<double>(x[i] / 2.0L);
    rule.weights(i) = static_cast<double>(w[i] / 2.0L);
  }
  return rule;
}

Eigen::Array2d cell_moments(const std::function<double(double)>& u, double xc, double dx,
                            const GaussRule& rule) {
  Eigen::Array2d m = Eigen::Array2d::Zero();
  for (int g = 0; g < rule.size(); ++g) {
    const double xi = rule.nodes(g);
    const double val = u(xc + xi * dx) * rule.weights(g);
    m(0) += val;
    m(1) += val * xi;
  }
  return m;
}

Eigen::Array4d cell_moments(const std::function<double(double, double)>& u, double xc,
                            double yc, double dx, double dy, const GaussRule& rule) {
  Eigen::Array4d m = Eigen::Array4d::Zero();
  for (int gy = 0; gy < rule.size(); ++gy) {
    const double eta = rule.nodes(gy);
    for (int gx = 0; gx < rule.size(); ++gx) {
      const double xi = rule.nodes(gx);
      const double val = u(xc + xi * dx, yc + eta * dy) * rule.weights(gx) * rule.weights(gy);
      m(0) += val;
      m(1) += val * xi;
      m(2) += val * eta;
      m(3) += val * xi * eta;
    }
  }
  return m;
}

CellField project_to_moments(const std::function<double(double)>& u0, const Mesh1D& mesh,
                             const GaussRule& rule) {
  CellField out(2, mesh.extent());
  for (int j = -kGhostWidth; j < mesh.n + kGhostWidth; ++j) {
    out.col(mesh.slot(j)) = cell_moments(u0, mesh.center(j), mesh.dx, rule);
  }
  return out;
}

CellField project_to_moments(const std::function<double(double, double)>& u0,
                             const Mesh2D& mesh, const GaussRule& rule) {
  CellField out(4, mesh.extent());
  for (int j = -kGhostWidth; j < mesh.y.n + kGhostWidth; ++j) {
    for (int i = -kGhostWidth; i < mesh.x.n + kGhostWidth; ++i) {
      out.col(mesh.slot(i, j)) = cell_moments(u0, mesh.x.center(i), mesh.y.center(j), mesh.x.dx,
                                              mesh.y.dx, rule);
    }
  }
  return out;
}

}  // namespace ldghw
