#include "steerlab/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace steerlab {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kLocalVarianceTol = 1e-9;

}  // namespace

Eigen::MatrixXd symplectic_form(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("symplectic_form: need at least one mode");
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (int k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

CovarianceMatrix::CovarianceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols())
    throw std::invalid_argument("CovarianceMatrix: matrix must be square");
  if (entries_.rows() == 0 || entries_.rows() % 2 != 0)
    throw std::invalid_argument("CovarianceMatrix: dimension must be a positive even number");
  if (!entries_.allFinite())
    throw std::invalid_argument("CovarianceMatrix: entries must be finite");
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  const double asym = (entries_ - entries_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTol * scale)
    throw std::invalid_argument("CovarianceMatrix: matrix is not symmetric (max asymmetry " +
                                std::to_string(asym) + ")");
}

CovarianceMatrix CovarianceMatrix::vacuum(int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("CovarianceMatrix::vacuum: need at least one mode");
  return CovarianceMatrix(0.5 * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

CovarianceMatrix extract_modes(const CovarianceMatrix& v, const std::vector<int>& modes) {
  if (modes.empty()) throw std::invalid_argument("extract_modes: empty mode list");
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= v.modes())
      throw std::invalid_argument("extract_modes: mode index " + std::to_string(modes[i]) +
                                  " out of range");
    for (size_t j = i + 1; j < modes.size(); ++j)
      if (modes[i] == modes[j])
        throw std::invalid_argument("extract_modes: duplicate mode index " +
                                    std::to_string(modes[i]));
  }
  const int m = static_cast<int>(modes.size());
  Eigen::MatrixXd out(2 * m, 2 * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      out.block<2, 2>(2 * i, 2 * j) = v.matrix().block<2, 2>(2 * modes[i], 2 * modes[j]);
  return CovarianceMatrix(std::move(out));
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(v.matrix(), Eigen::EigenvaluesOnly);
  if (sa.eigenvalues().minCoeff() <= 0.0)
    throw std::domain_error("symplectic_eigenvalues: matrix is not positive definite");

  // Eigenvalues of Omega V come in pairs +- i nu with nu > 0.
  Eigen::EigenSolver<Eigen::MatrixXd> es(symplectic_form(v.modes()) * v.matrix(), false);
  std::vector<double> moduli(static_cast<size_t>(v.dim()));
  for (int k = 0; k < v.dim(); ++k) moduli[static_cast<size_t>(k)] = std::abs(es.eigenvalues()(k));
  std::sort(moduli.begin(), moduli.end());
  std::vector<double> nu(static_cast<size_t>(v.modes()));
  for (int k = 0; k < v.modes(); ++k)
    nu[static_cast<size_t>(k)] = 0.5 * (moduli[static_cast<size_t>(2 * k)] +
                                        moduli[static_cast<size_t>(2 * k + 1)]);
  return nu;
}

bool is_physical(const CovarianceMatrix& v, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sa(v.matrix(), Eigen::EigenvaluesOnly);
  if (sa.eigenvalues().minCoeff() <= 0.0) return false;
  const std::vector<double> nu = symplectic_eigenvalues(v);
  return nu.front() >= 0.5 - tol;
}

TwoModeStandardForm::TwoModeStandardForm(double a_, double b_, double c_plus_, double c_minus_)
    : a(a_), b(b_), c_plus(c_plus_), c_minus(c_minus_) {
  if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c_plus) && std::isfinite(c_minus)))
    throw std::invalid_argument("TwoModeStandardForm: entries must be finite");
  if (a < 0.5 - kLocalVarianceTol || b < 0.5 - kLocalVarianceTol)
    throw std::invalid_argument("TwoModeStandardForm: local variances must be >= 1/2");
}

CovarianceMatrix TwoModeStandardForm::expand() const {
  Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
  v(0, 0) = a;
  v(1, 1) = a;
  v(2, 2) = b;
  v(3, 3) = b;
  v(0, 2) = c_plus;
  v(2, 0) = c_plus;
  v(1, 3) = c_minus;
  v(3, 1) = c_minus;
  return CovarianceMatrix(v);
}

Eigen::Matrix2d schur_complement(const TwoModeStandardForm& sf, Mode conditioned_on) {
  const double pivot = conditioned_on == Mode::A ? sf.a : sf.b;
  const double other = conditioned_on == Mode::A ? sf.b : sf.a;
  if (pivot < 1e-300) throw std::runtime_error("schur_complement: singular pivot block");
  Eigen::Matrix2d out = Eigen::Matrix2d::Zero();
  out(0, 0) = other - sf.c_plus * sf.c_plus / pivot;
  out(1, 1) = other - sf.c_minus * sf.c_minus / pivot;
  return out;
}

}  // namespace steerlab
