#pragma once

#include <Eigen/Dense>
#include <vector>

// Gaussian-state primitives. Conventions used throughout: hbar = 1, vacuum
// quadrature variance 1/2, quadratures ordered (q1, p1, q2, p2, ...).

namespace steerlab {

// Block-diagonal symplectic form, [[0, 1], [-1, 0]] per mode.
Eigen::MatrixXd symplectic_form(int n_modes);

class CovarianceMatrix {
public:
  // Requires a square, even-dimensioned matrix, symmetric to within
  // 1e-12 relative tolerance. Physicality is checked separately.
  explicit CovarianceMatrix(Eigen::MatrixXd entries);

  static CovarianceMatrix vacuum(int n_modes);

  int modes() const { return static_cast<int>(entries_.rows()) / 2; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXd& matrix() const { return entries_; }

private:
  Eigen::MatrixXd entries_;
};

// Reduced state of the listed modes, in listing order.
CovarianceMatrix extract_modes(const CovarianceMatrix& v, const std::vector<int>& modes);

// Moduli of the eigenvalues of i Omega V, one per mode, nondecreasing.
// V must be positive definite.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& v);

// Heisenberg bound: positive definite and every symplectic eigenvalue
// >= 1/2 - tol.
bool is_physical(const CovarianceMatrix& v, double tol = 1e-9);

enum class Mode { A, B };

// Two-mode covariance matrix in standard form,
//   [[a, 0, c+, 0], [0, a, 0, c-], [c+, 0, b, 0], [0, c-, 0, b]],
// mode A first. Local variances must satisfy a, b >= 1/2.
struct TwoModeStandardForm {
  double a = 0.5;
  double b = 0.5;
  double c_plus = 0.0;
  double c_minus = 0.0;

  TwoModeStandardForm() = default;
  TwoModeStandardForm(double a, double b, double c_plus, double c_minus);

  CovarianceMatrix expand() const;
};

// Schur complement of the named block: the conditional covariance of the
// other mode given a measurement on the named one.
Eigen::Matrix2d schur_complement(const TwoModeStandardForm& sf, Mode conditioned_on);

}  // namespace steerlab
