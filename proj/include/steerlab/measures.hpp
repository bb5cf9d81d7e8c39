#pragma once

#include "steerlab/covariance.hpp"

// Steady-state correlation measures on a two-mode Gaussian state in
// standard form: Gaussian quadrature steering in both directions, steering
// asymmetry, and Gaussian Renyi-2 entanglement. All measures are in nats.

namespace steerlab {

enum class SteerDirection { AtoB, BtoA };
enum class SteeringClass { NoWay, OneWayAtoB, OneWayBtoA, TwoWay };

const char* to_string(SteeringClass c);

// G^{A->B} = max(0, ln(a / (2 sqrt(det V)))) and the B->A mirror image.
// Requires a physical state (min symplectic eigenvalue >= 1/2 - 1e-9),
// otherwise throws std::domain_error.
double gaussian_steering(const TwoModeStandardForm& sf, SteerDirection dir);

// |G^{A->B} - G^{B->A}|, bounded by ln 2.
double steering_asymmetry(const TwoModeStandardForm& sf);

// Thresholds both directions at eps to absorb floating-point dust.
SteeringClass classify_direction(double g_ab, double g_ba, double eps = 1e-10);

// Gaussian Renyi-2 entanglement of formation. Requires a physical state
// with c_minus = -c_plus (squeezed-thermal standard form); a form violating
// that symmetry beyond tolerance throws std::invalid_argument.
double renyi2_entanglement(const TwoModeStandardForm& sf);

// Necessary condition for entanglement or steering: det of the cross
// block, c_plus * c_minus, is negative.
bool entanglement_witness(const TwoModeStandardForm& sf);

// Minimum eigenvalue of V + (i/2)(0 oplus Omega), with the symplectic form
// placed on the steered party. Negative iff steerable in that direction.
double steering_condition_margin(const TwoModeStandardForm& sf, SteerDirection dir);

struct SteeringReport {
  double g_ab;
  double g_ba;
  double asymmetry;
  double e2;
  double det_cross;
  SteeringClass direction;
};

SteeringReport analyze_state(const TwoModeStandardForm& sf);

}  // namespace steerlab
