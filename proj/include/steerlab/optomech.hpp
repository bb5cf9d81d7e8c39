#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

// Linearized model of two Fabry-Perot cavities with movable end mirrors,
// driven by the two entangled outputs of a squeezed light source. Each
// cavity is adiabatically eliminated onto the resonant (red) sideband,
// leaving four modes: mirror 1, mirror 2, cavity field 1, cavity field 2,
// quadrature order (qm1, pm1, qm2, pm2, qc1, pc1, qc2, pc2).

namespace steerlab {

namespace constants {
// CODATA 2018 exact values.
inline constexpr double planck = 6.62607015e-34;       // J s
inline constexpr double hbar = planck / 6.283185307179586476925286766559;
inline constexpr double k_boltzmann = 1.380649e-23;    // J / K
}  // namespace constants

struct CavityParams {
  double length;        // m
  double cavity_freq;   // rad/s
  double cavity_decay;  // rad/s
  double laser_freq;    // rad/s
  double laser_power;   // W
  double mirror_mass;   // kg
  double mech_freq;     // rad/s
  double mech_damping;  // rad/s
  // Exactly one of the two must be set.
  std::optional<double> temperature;         // K
  std::optional<double> thermal_occupation;  // mean phonon number
  // When set, the optomechanical coupling is fixed by this cooperativity
  // instead of being derived from the drive power.
  std::optional<double> cooperativity;
};

struct SystemParams {
  std::array<CavityParams, 2> cavity;
  double squeezing = 0.0;  // squeeze parameter r of the driving field
};

// Cryogenic micromirror reference set: 145 ng mirrors at 2pi x 947 kHz,
// 25 mm cavities decaying at 2pi x 215 kHz, driven with 12 mW and 5 mW.
SystemParams default_params();

// Throws std::invalid_argument on nonpositive scales, negative powers or
// occupations, or an over/underdetermined thermal specification.
void validate(const SystemParams& p);

// Bose-Einstein mean occupation 1/(exp(hbar w / kB T) - 1); 0 at T = 0.
double mean_thermal_occupation(double mech_freq, double temperature);

// Working point of one cavity after linearization.
struct CavityState {
  double drive_amplitude;            // eps_j
  double effective_detuning;         // Delta'_j, pinned to -mech_freq
  double bare_detuning;              // Delta_j, before the mirror shift
  double phase;                      // drive phase phi_j
  double mean_field_modulus;         // |a_js|
  std::complex<double> mirror_shift; // b_js
  double single_photon_coupling;     // chi0_j
  double effective_coupling;         // chi_j = chi0_j |a_js|
  double cooperativity;              // C_j = 4 chi_j^2 / (gamma_mj kappa_cj)
  double thermal_occupation;         // n_th,j
};

struct DerivedState {
  std::array<CavityState, 2> cavity;
  double squeeze_n;  // sinh^2 r
  double squeeze_m;  // sinh r cosh r
};

DerivedState derive_state(const SystemParams& p);

using Matrix8d = Eigen::Matrix<double, 8, 8>;

// Drift and diffusion of the quadrature Langevin equation
// d u = A u dt + noise, <noise noise^T> symmetrized = D.
Matrix8d drift_from_rates(double gamma_m1, double gamma_m2, double kappa_c1,
                          double kappa_c2, double chi1, double chi2);
Matrix8d diffusion_from_rates(double gamma_m1, double gamma_m2, double kappa_c1,
                              double kappa_c2, double nth1, double nth2,
                              double squeezing);

Matrix8d build_drift(const DerivedState& s, const SystemParams& p);
Matrix8d build_diffusion(const DerivedState& s, const SystemParams& p);

struct ModelMatrices {
  Matrix8d drift;
  Matrix8d diffusion;
};

// Hurwitz test: every eigenvalue real part < -tol.
bool check_stability(const Eigen::MatrixXd& drift, double tol = 0.0);

struct ValidityThresholds {
  double min_quality = 10.0;     // omega_m / gamma_m
  double min_sideband = 1.0;     // omega_m / kappa_c
  double min_mean_field = 10.0;  // |a_js| supporting linearization
};

// Human-readable warnings for regimes where the adiabatic, linearized,
// rotating-wave treatment degrades. Empty means no concerns.
std::vector<std::string> check_validity(const SystemParams& p, const DerivedState& s,
                                        const ValidityThresholds& t = {});

}  // namespace steerlab
