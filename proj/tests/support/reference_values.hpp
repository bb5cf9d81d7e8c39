#pragma once

// Frozen reference values for the golden tests, computed with 50-digit
// arithmetic from the closed-form steady state and the cooperativity
// definition. Regenerate with support/gen_reference.py; constants are
// written with 25 significant digits and round to the nearest double.

namespace refvals {

inline constexpr double kTau = 140.0 / 215000.0;

// Operating point c1=35, c2=15, nth1=1, nth2=2, r=0.8, tau = kTau
// (grid point r=0.8 of preset fig2c).
inline constexpr double kPointV1 = 1.294734445899666781783873;
inline constexpr double kPointV2 = 1.365175426408894276267037;
inline constexpr double kPointV12 = 1.043460838600136489341087;
inline constexpr double kPointGba = 0.005668916812138406587692686;
inline constexpr double kPointE2 = 0.1491211248139474779500226;
// sqrt(det) of the conditional covariances, equal to g / v1 and g / v2.
inline constexpr double kPointSchurA = 0.5242226540930833547285826;
inline constexpr double kPointSchurB = 0.4971735605882269525510384;

// Operating point c1=35, c2=25, nth1=1, nth2=0.1, r=0.5, tau = kTau
// (grid point nth1=1 of preset fig3a); two-way steerable.
inline constexpr double kThermalV1 = 0.7922361780561952832423228;
inline constexpr double kThermalV2 = 0.7648352782921259957128759;
inline constexpr double kThermalV12 = 0.5600336869721489178130755;
inline constexpr double kThermalGab = 0.3039575389317565386127847;
inline constexpr double kThermalGba = 0.2687584751024481480794824;
inline constexpr double kThermalE2 = 0.3125327471656362152765697;

// Entanglement peak of preset fig2a (301-point squeezing grid).
inline constexpr int kFig2aPeakIndex = 80;  // r = 0.8
inline constexpr double kFig2aPeakE2 = 0.2163734025738786050719748;

// Derived quantities for the default physical parameter set (hbar-free
// expanded cooperativity, CODATA 2018 constants).
inline constexpr double kCoop12mW = 34791.04406923156954651233;
inline constexpr double kCoop5mW = 14496.26836217982064438014;
inline constexpr double kCoupling12mW = 3214895.431284176307558917;   // rad/s
inline constexpr double kMeanField12mW = 69558.80172749805071930004;  // photons^(1/2)

}  // namespace refvals
