#pragma once

#include "steerlab/covariance.hpp"
#include "steerlab/optomech.hpp"

// Steady-state covariance of the four-mode model, by two routes: a dense
// Lyapunov solve of A V + V A^T = -D, and closed-form expressions for the
// reduced two-mirror block. The steady state depends on the physical
// parameters only through the cooperativities, thermal occupations, the
// drive squeezing and the damping-to-decay ratio, so both routes take the
// dimensionless operating point below.

namespace steerlab {

struct ModelPoint {
  double c1;    // cooperativity, cavity 1
  double c2;    // cooperativity, cavity 2
  double nth1;  // mirror 1 thermal occupation
  double nth2;  // mirror 2 thermal occupation
  double r;     // drive squeeze parameter
  double tau;   // gamma_m / kappa_c, > 0
};

// Throws std::invalid_argument on negative entries, nonpositive tau, or
// nonfinite values.
void validate(const ModelPoint& pt);

struct LyapunovProblem {
  Matrix8d drift;
  Matrix8d diffusion;
  double tolerance = 1e-10;  // residual bound relative to max|D|
};

// Requires a strictly stable drift. The solution is symmetrized and its
// residual checked against the stated tolerance.
CovarianceMatrix solve_lyapunov(const LyapunovProblem& prob);

// Model matrices at the operating point, in units of the cavity decay
// (kappa_c = 1, gamma_m = tau, chi_j = sqrt(c_j tau) / 2).
ModelMatrices point_matrices(const ModelPoint& pt);

enum class Provenance { Analytic, Numeric };

struct MechanicalCM {
  TwoModeStandardForm standard_form;
  Provenance provenance;
};

// Mirror-mirror block of a solved four-mode covariance matrix, fitted to
// standard form. Off-standard-form structure beyond fitting tolerance
// signals a model assembly inconsistency and throws std::runtime_error.
MechanicalCM mechanical_block(const CovarianceMatrix& v);

// Full numeric route: point matrices, Lyapunov solve, block fit.
MechanicalCM numeric_mechanical_cm(const ModelPoint& pt);

// Closed-form mirror-mirror covariances (upsilon1, upsilon2, upsilon12),
// valid under adiabatic elimination at the red-sideband working point.
TwoModeStandardForm analytic_mechanical_cm(const ModelPoint& pt);

struct CrossValidation {
  double max_rel_deviation;
  bool pass;
};

// Element-wise comparison of the numeric and analytic mechanical blocks,
// relative to max(1, |analytic value|).
CrossValidation cross_validate(const ModelPoint& pt, double tol = 1e-8);

}  // namespace steerlab
