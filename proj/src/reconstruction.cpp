#include "ldghweno/reconstruction.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "ldghweno/basis.hpp"

namespace ldghw {

namespace {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

const StencilSystem<Rational>& exact_system() {
  static const StencilSystem<Rational> sys = build_stencil_system<Rational>();
  return sys;
}

}  // namespace

// Non-constant cubic coefficients of all three candidates (rows 3l..3l+2)
// and the smoothness form restricted to them; the constant term never enters beta.
struct SmoothnessMap {
  Eigen::Matrix<double, 9, 6> derivative_rows;
  Eigen::Matrix3d form;
};

namespace {

const SmoothnessMap& smoothness_map() {
  static const SmoothnessMap map = [] {
    const auto& sys = stencil_system();
    SmoothnessMap m;
    for (int l = 0; l < 3; ++l) {
      m.derivative_rows.middleRows<3>(3 * l) = sys.cubic[l].bottomRows<3>();
    }
    m.form = sys.smoothness.bottomRightCorner<3, 3>();
    return m;
  }();
  return map;
}

// 1 / (lambda + beta_l)^2 for the three candidates.
inline Eigen::Vector3d inverse_beta(const SmoothnessMap& sm,
                                    const Eigen::Map<const Moments6<double>>& m, double lambda) {
  const Eigen::Matrix<double, 9, 1> c = sm.derivative_rows * m;
  Eigen::Vector3d out;
  for (int l = 0; l < 3; ++l) {
    const Eigen::Vector3d cl = c.segment<3>(3 * l);
    const double d = lambda + cl.dot(sm.form * cl);
    out(l) = 1.0 / (d * d);
  }
  return out;
}

inline double weno_group(const Eigen::Vector3d& gamma, const Eigen::Vector3d& inv_beta,
                         const Eigen::Vector3d& values) {
  const Eigen::Vector3d w = gamma.cwiseProduct(inv_beta);
  return w.dot(values) / w.sum();
}

inline double combine(const PointWeights& pw, const Eigen::Map<const Moments6<double>>& m,
                      const Eigen::Vector3d& inv_beta, bool linear_only) {
  const Eigen::Vector3d values = pw.candidate_rows * m;
  if (linear_only) return pw.gamma.dot(values);
  if (!pw.split) return weno_group(pw.gamma, inv_beta, values);
  return pw.sigma_plus * weno_group(pw.gamma_plus, inv_beta, values) -
         pw.sigma_minus * weno_group(pw.gamma_minus, inv_beta, values);
}

}  // namespace

const StencilSystem<double>& stencil_system() {
  static const StencilSystem<double> sys = [] {
    const auto& ex = exact_system();
    StencilSystem<double> s;
    for (int l = 0; l < 3; ++l) s.cubic[l] = ex.cubic[l].cast<double>();
    s.quintic = ex.quintic.cast<double>();
    s.smoothness = ex.smoothness.cast<double>();
    return s;
  }();
  return sys;
}

PointWeights linear_weights(double xhat) {
  const Rational xr(xhat);  // exact: every double is a dyadic rational
  const auto lw = linear_weights<Rational>(exact_system(), xr);

  PointWeights pw;
  pw.xhat = xhat;
  pw.gamma = lw.gamma.cast<double>();
  for (int i = 0; i < 4; ++i) pw.powers(i) = std::pow(xhat, i);
  pw.quintic_row = quintic_row<Rational>(exact_system(), xr).cast<double>();
  pw.candidate_rows = cubic_rows<Rational>(exact_system(), xr).cast<double>();

  if ((pw.gamma.array() < 0.0).any()) {
    pw.split = true;
    const Eigen::Vector3d plus = 0.5 * (pw.gamma + 3.0 * pw.gamma.cwiseAbs());
    const Eigen::Vector3d minus = plus - pw.gamma;
    pw.sigma_plus = plus.sum();
    pw.sigma_minus = minus.sum();
    pw.gamma_plus = plus / pw.sigma_plus;
    pw.gamma_minus = minus / pw.sigma_minus;
  } else {
    pw.gamma_plus = pw.gamma;
  }
  return pw;
}

Eigen::Vector3d nonlinear_weights(const Eigen::Vector3d& gamma, const Eigen::Vector3d& beta,
                                  double lambda) {
  const Eigen::Vector3d d = (beta.array() + lambda).square().inverse().matrix();
  const Eigen::Vector3d w = gamma.cwiseProduct(d);
  return w / w.sum();
}

double reconstruct_point(const Moments6<double>& m, const PointWeights& w,
                         const ReconstructionConfig& cfg) {
  const Eigen::Map<const Moments6<double>> mm(m.data());
  const bool linear_only = cfg.mode == ReconstructionConfig::Mode::LinearWeightsOnly;
  const Eigen::Vector3d ib =
      linear_only ? Eigen::Vector3d::Ones() : inverse_beta(smoothness_map(), mm, cfg.lambda);
  return combine(w, mm, ib, linear_only);
}

Reconstructor::Reconstructor(int k, ReconstructionConfig cfg)
    : cfg_(cfg), smoothness_(&smoothness_map()) {
  const GaussRule rule = gauss_rule(k + 1);
  for (int g = 0; g < rule.size(); ++g) weights_.push_back(linear_weights(rule.nodes(g)));
  weights_.push_back(linear_weights(-0.5));
  weights_.push_back(linear_weights(0.5));
  pack();
  if (!(cfg_.lambda > 0.0)) throw ConfigError("reconstruction lambda must be positive");
}

Reconstructor::Reconstructor(std::vector<double> points, ReconstructionConfig cfg)
    : cfg_(cfg), smoothness_(&smoothness_map()) {
  for (double x : points) weights_.push_back(linear_weights(x));
  pack();
  if (!(cfg_.lambda > 0.0)) throw ConfigError("reconstruction lambda must be positive");
}

void Reconstructor::pack() {
  packed_.assign(weights_.size() * kPacked, 0.0);
  for (std::size_t p = 0; p < weights_.size(); ++p) {
    const PointWeights& w = weights_[p];
    double* d = packed_.data() + p * kPacked;
    for (int l = 0; l < 3; ++l) {
      for (int c = 0; c < 6; ++c) d[6 * l + c] = w.candidate_rows(l, c);
      d[18 + l] = w.gamma_plus(l);
      d[21 + l] = w.split ? w.gamma_minus(l) : 0.0;
      d[26 + l] = w.gamma(l);
    }
    d[24] = w.split ? w.sigma_plus : 1.0;
    d[25] = w.split ? w.sigma_minus : 0.0;
  }
}

void Reconstructor::evaluate(const double* m_in, double* out, int count) const {
  // Work relative to the centre average: every candidate reproduces constants,
  // so a constant stencil comes back exactly instead of up to rounding.
  const double base = m_in[1];
  const double m[6] = {m_in[0] - base, 0.0, m_in[2] - base, m_in[3], m_in[4], m_in[5]};
  const Eigen::Map<const Moments6<double>> mm(m);
  if (cfg_.mode == ReconstructionConfig::Mode::LinearWeightsOnly) {
    for (int p = 0; p < count; ++p) {
      const double* d = packed_.data() + p * kPacked;
      double acc = 0.0;
      for (int l = 0; l < 3; ++l) {
        double v = 0.0;
        for (int c = 0; c < 6; ++c) v += d[6 * l + c] * m[c];
        acc += d[26 + l] * v;
      }
      out[p] = base + acc;
    }
    return;
  }
  const Eigen::Vector3d ib = inverse_beta(*smoothness_, mm, cfg_.lambda);
  for (int p = 0; p < count; ++p) {
    const double* d = packed_.data() + p * kPacked;
    double v[3];
    for (int l = 0; l < 3; ++l) {
      double acc = 0.0;
      for (int c = 0; c < 6; ++c) acc += d[6 * l + c] * m[c];
      v[l] = acc;
    }
    double wp = 0.0, np = 0.0;
    for (int l = 0; l < 3; ++l) {
      const double w = d[18 + l] * ib(l);
      wp += w;
      np += w * v[l];
    }
    double r = d[24] * np / wp;
    if (d[25] != 0.0) {
      double wm = 0.0, nm = 0.0;
      for (int l = 0; l < 3; ++l) {
        const double w = d[21 + l] * ib(l);
        wm += w;
        nm += w * v[l];
      }
      r -= d[25] * nm / wm;
    }
    out[p] = base + r;
  }
}

Eigen::ArrayXd reconstruct_cell_1d(const CellField& moments, const Mesh1D& mesh, int j,
                                   const Reconstructor& rec) {
  double m[6];
  for (int l = -1; l <= 1; ++l) {
    m[l + 1] = moments(0, mesh.slot(j + l));
    m[l + 4] = moments(1, mesh.slot(j + l));
  }
  Eigen::ArrayXd out(rec.size());
  rec.evaluate(m, out.data());
  return out;
}

Eigen::ArrayXXd reconstruct_2d(const CellField& moments, const Mesh2D& mesh, int i, int j,
                               const Reconstructor& rec) {
  const int np = rec.size();
  // Line values at every y point for columns i-1, i, i+1:
  // row 0 holds x-averages (from u, w), row 1 x-moments (from v, Z).
  Eigen::ArrayXXd line_avg(np, 3), line_mom(np, 3);
  double m[6];
  for (int l = -1; l <= 1; ++l) {
    for (int s = -1; s <= 1; ++s) {
      const int c = mesh.slot(i + l, j + s);
      m[s + 1] = moments(0, c);
      m[s + 4] = moments(2, c);
    }
    rec.evaluate(m, line_avg.col(l + 1).data());
    for (int s = -1; s <= 1; ++s) {
      const int c = mesh.slot(i + l, j + s);
      m[s + 1] = moments(1, c);
      m[s + 4] = moments(3, c);
    }
    rec.evaluate(m, line_mom.col(l + 1).data());
  }
  Eigen::ArrayXXd out(np, np);
  for (int iy = 0; iy < np; ++iy) {
    for (int l = 0; l < 3; ++l) {
      m[l] = line_avg(iy, l);
      m[l + 3] = line_mom(iy, l);
    }
    rec.evaluate(m, out.col(iy).data());
  }
  return out;
}

}  // namespace ldghw
