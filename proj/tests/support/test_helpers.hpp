#pragma once

#include <cmath>
#include <random>
#include <utility>

#include "steerlab/covariance.hpp"
#include "steerlab/steady_state.hpp"

namespace testhelp {

inline double log_uniform(std::mt19937& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline bool coin(std::mt19937& rng, double p = 0.02) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

// Random dimensionless operating point; occasionally lands exactly on the
// decoupled or unsqueezed edges.
inline steerlab::ModelPoint random_point(std::mt19937& rng) {
  steerlab::ModelPoint pt;
  pt.c1 = coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e3);
  pt.c2 = coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e3);
  pt.nth1 = coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e2);
  pt.nth2 = coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e2);
  pt.r = coin(rng) ? 0.0 : std::uniform_real_distribution<double>(0.0, 3.0)(rng);
  pt.tau = log_uniform(rng, 1e-6, 1.0);
  return pt;
}

// Two-mode squeezing applied to a thermal product state: physical by
// construction, with c_minus = -c_plus.
inline steerlab::TwoModeStandardForm random_sts(std::mt19937& rng) {
  const double nb1 = 0.5 + (coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e2));
  const double nb2 = 0.5 + (coin(rng) ? 0.0 : log_uniform(rng, 1e-3, 1e2));
  const double r = coin(rng) ? 0.0 : std::uniform_real_distribution<double>(0.0, 2.0)(rng);
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  const double c = (nb1 + nb2) * ch * sh;
  return {nb1 * ch * ch + nb2 * sh * sh, nb1 * sh * sh + nb2 * ch * ch, c, -c};
}

// Closed quartic for the symplectic spectrum of a two-mode standard form:
// nu^2 are the roots of x^2 - Delta x + det V.
inline std::pair<double, double> quartic_spectrum(const steerlab::TwoModeStandardForm& sf) {
  const double det =
      (sf.a * sf.b - sf.c_plus * sf.c_plus) * (sf.a * sf.b - sf.c_minus * sf.c_minus);
  const double delta = sf.a * sf.a + sf.b * sf.b + 2.0 * sf.c_plus * sf.c_minus;
  const double disc = std::sqrt(std::max(0.0, delta * delta - 4.0 * det));
  return {std::sqrt(std::max(0.0, 0.5 * (delta - disc))), std::sqrt(0.5 * (delta + disc))};
}

}  // namespace testhelp
