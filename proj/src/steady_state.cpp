#include "steerlab/steady_state.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace steerlab {

namespace {

constexpr double kStructureTol = 1e-8;

double rel_dev(double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); }

}  // namespace

void validate(const ModelPoint& pt) {
  const double vals[] = {pt.c1, pt.c2, pt.nth1, pt.nth2, pt.r, pt.tau};
  for (double v : vals)
    if (!std::isfinite(v)) throw std::invalid_argument("ModelPoint: entries must be finite");
  if (pt.c1 < 0.0 || pt.c2 < 0.0)
    throw std::invalid_argument("ModelPoint: cooperativities must be nonnegative");
  if (pt.nth1 < 0.0 || pt.nth2 < 0.0)
    throw std::invalid_argument("ModelPoint: thermal occupations must be nonnegative");
  if (pt.r < 0.0) throw std::invalid_argument("ModelPoint: squeezing must be nonnegative");
  if (!(pt.tau > 0.0)) throw std::invalid_argument("ModelPoint: tau must be positive");
}

CovarianceMatrix solve_lyapunov(const LyapunovProblem& prob) {
  if (!check_stability(prob.drift))
    throw std::domain_error("solve_lyapunov: drift matrix is not strictly stable");

  const Matrix8d& a = prob.drift;
  const Matrix8d& d = prob.diffusion;

  // Column-major vectorization: vec(AV + VA^T) = (I kron A + A kron I) vec(V).
  Eigen::Matrix<double, 64, 64> k = Eigen::Matrix<double, 64, 64>::Zero();
  for (int i = 0; i < 8; ++i) {
    k.block<8, 8>(8 * i, 8 * i) += a;
    for (int j = 0; j < 8; ++j) k.block<8, 8>(8 * i, 8 * j) += a(i, j) * Matrix8d::Identity();
  }
  const Eigen::Map<const Eigen::Matrix<double, 64, 1>> dvec(d.data());
  const Eigen::Matrix<double, 64, 1> vvec = k.partialPivLu().solve(-dvec);

  Matrix8d v = Eigen::Map<const Matrix8d>(vvec.data());
  v = 0.5 * (v + v.transpose()).eval();

  const double dscale = d.cwiseAbs().maxCoeff();
  const double residual = (a * v + v * a.transpose() + d).cwiseAbs().maxCoeff();
  if (residual > prob.tolerance * dscale + 1e-300) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "solve_lyapunov: residual %.3e exceeds %.3e", residual,
                  prob.tolerance * dscale);
    throw std::runtime_error(buf);
  }
  return CovarianceMatrix(v);
}

ModelMatrices point_matrices(const ModelPoint& pt) {
  validate(pt);
  const double chi1 = 0.5 * std::sqrt(pt.c1 * pt.tau);
  const double chi2 = 0.5 * std::sqrt(pt.c2 * pt.tau);
  return {drift_from_rates(pt.tau, pt.tau, 1.0, 1.0, chi1, chi2),
          diffusion_from_rates(pt.tau, pt.tau, 1.0, 1.0, pt.nth1, pt.nth2, pt.r)};
}

MechanicalCM mechanical_block(const CovarianceMatrix& v) {
  if (v.modes() < 2)
    throw std::invalid_argument("mechanical_block: need at least two modes");
  const Eigen::MatrixXd b = extract_modes(v, {0, 1}).matrix();
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());

  double worst = 0.0;
  const double offenders[] = {std::abs(b(0, 1)), std::abs(b(0, 3)), std::abs(b(1, 2)),
                              std::abs(b(2, 3)), std::abs(b(0, 0) - b(1, 1)),
                              std::abs(b(2, 2) - b(3, 3))};
  for (double x : offenders) worst = std::max(worst, x);
  if (worst > kStructureTol * scale) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "mechanical_block: off-standard-form residue %.3e (tol %.3e), "
                  "model assembly is inconsistent",
                  worst, kStructureTol * scale);
    throw std::runtime_error(buf);
  }

  TwoModeStandardForm sf(0.5 * (b(0, 0) + b(1, 1)), 0.5 * (b(2, 2) + b(3, 3)), b(0, 2), b(1, 3));
  return {sf, Provenance::Numeric};
}

MechanicalCM numeric_mechanical_cm(const ModelPoint& pt) {
  const ModelMatrices mm = point_matrices(pt);
  return mechanical_block(solve_lyapunov({mm.drift, mm.diffusion}));
}

TwoModeStandardForm analytic_mechanical_cm(const ModelPoint& pt) {
  validate(pt);
  const double ch = std::cosh(2.0 * pt.r);
  const double sh = std::sinh(2.0 * pt.r);
  const double tau = pt.tau;
  const auto diag = [&](double c, double n) {
    return ((1.0 + 2.0 * n) * (1.0 + tau + tau * c) + c * ch) / (2.0 * (1.0 + tau) * (1.0 + c));
  };
  const double u1 = diag(pt.c1, pt.nth1);
  const double u2 = diag(pt.c2, pt.nth2);
  const double csum = pt.c1 + pt.c2;
  const double cdiff = pt.c1 - pt.c2;
  const double denom =
      (2.0 + csum) * (1.0 + tau) * (1.0 + tau) + 0.5 * tau * cdiff * cdiff;
  const double u12 = std::sqrt(pt.c1 * pt.c2) * (1.0 + tau) * sh / denom;
  return TwoModeStandardForm(u1, u2, u12, -u12);
}

CrossValidation cross_validate(const ModelPoint& pt, double tol) {
  const TwoModeStandardForm ana = analytic_mechanical_cm(pt);
  const TwoModeStandardForm num = numeric_mechanical_cm(pt).standard_form;
  double dev = rel_dev(num.a, ana.a);
  dev = std::max(dev, rel_dev(num.b, ana.b));
  dev = std::max(dev, rel_dev(num.c_plus, ana.c_plus));
  dev = std::max(dev, rel_dev(num.c_minus, ana.c_minus));
  return {dev, dev <= tol};
}

}  // namespace steerlab
