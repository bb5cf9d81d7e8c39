#include "steerlab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace steerlab {

namespace {

constexpr double kPhysicalityTol = 1e-9;
constexpr double kSymmetryTol = 1e-8;

// det V = (ab - c+^2)(ab - c-^2) for the standard form.
double standard_form_det(const TwoModeStandardForm& sf) {
  return (sf.a * sf.b - sf.c_plus * sf.c_plus) * (sf.a * sf.b - sf.c_minus * sf.c_minus);
}

// Smaller symplectic eigenvalue via the closed quartic; requires positive
// definiteness first so the quartic roots are meaningful.
double min_symplectic(const TwoModeStandardForm& sf) {
  const double ab = sf.a * sf.b;
  if (ab <= sf.c_plus * sf.c_plus || ab <= sf.c_minus * sf.c_minus)
    throw std::domain_error("measures: state is not positive definite");
  const double det = standard_form_det(sf);
  const double delta = sf.a * sf.a + sf.b * sf.b + 2.0 * sf.c_plus * sf.c_minus;
  const double disc = std::max(0.0, delta * delta - 4.0 * det);
  return std::sqrt(std::max(0.0, 0.5 * (delta - std::sqrt(disc))));
}

void require_physical(const TwoModeStandardForm& sf) {
  if (min_symplectic(sf) < 0.5 - kPhysicalityTol)
    throw std::domain_error("measures: state violates the Heisenberg bound");
}

}  // namespace

const char* to_string(SteeringClass c) {
  switch (c) {
    case SteeringClass::NoWay: return "none";
    case SteeringClass::OneWayAtoB: return "one-way-ab";
    case SteeringClass::OneWayBtoA: return "one-way-ba";
    case SteeringClass::TwoWay: return "two-way";
  }
  return "?";
}

double gaussian_steering(const TwoModeStandardForm& sf, SteerDirection dir) {
  require_physical(sf);
  // Product states are never steerable; return an exact zero rather than
  // the rounded ln(1/(2b)) clamp.
  if (sf.c_plus == 0.0 && sf.c_minus == 0.0) return 0.0;
  const double g = std::sqrt(standard_form_det(sf));
  const double local = dir == SteerDirection::AtoB ? sf.a : sf.b;
  return std::max(0.0, std::log(local / (2.0 * g)));
}

double steering_asymmetry(const TwoModeStandardForm& sf) {
  return std::abs(gaussian_steering(sf, SteerDirection::AtoB) -
                  gaussian_steering(sf, SteerDirection::BtoA));
}

SteeringClass classify_direction(double g_ab, double g_ba, double eps) {
  const bool ab = g_ab > eps;
  const bool ba = g_ba > eps;
  if (ab && ba) return SteeringClass::TwoWay;
  if (ab) return SteeringClass::OneWayAtoB;
  if (ba) return SteeringClass::OneWayBtoA;
  return SteeringClass::NoWay;
}

double renyi2_entanglement(const TwoModeStandardForm& sf) {
  require_physical(sf);
  const double cscale = std::max({1.0, std::abs(sf.c_plus), std::abs(sf.c_minus)});
  if (std::abs(sf.c_plus + sf.c_minus) > kSymmetryTol * cscale)
    throw std::invalid_argument("renyi2_entanglement: requires c_minus = -c_plus");
  if (sf.c_plus == 0.0 && sf.c_minus == 0.0) return 0.0;

  const double g = std::sqrt(standard_form_det(sf));
  const double s = 0.5 * (sf.a + sf.b);
  const double d = 0.5 * (sf.a - sf.b);
  if (4.0 * g >= 4.0 * s - 1.0) return 0.0;  // positive partial transpose

  const double t1 = (4.0 * g - 1.0) * (4.0 * g - 1.0) - 16.0 * d * d;
  const double t2 = s * s - d * d - g;
  // Physicality pins 4g >= 4|d| + 1 and t2 = upsilon12^2, so both factors
  // are nonnegative up to rounding of the terms they are assembled from.
  const double t1_scale = (4.0 * g - 1.0) * (4.0 * g - 1.0) + 16.0 * d * d + 1.0;
  const double t2_scale = s * s + d * d + g + 1.0;
  if (t1 < -1e-9 * t1_scale || t2 < -1e-9 * t2_scale)
    throw std::domain_error("renyi2_entanglement: radicand out of range");
  const double root = std::sqrt(std::max(0.0, t1) * std::max(0.0, t2));
  const double h = ((4.0 * g + 1.0) * s - root) / (4.0 * (d * d + g));
  return std::max(0.0, std::log(h));
}

bool entanglement_witness(const TwoModeStandardForm& sf) {
  return sf.c_plus * sf.c_minus < 0.0;
}

double steering_condition_margin(const TwoModeStandardForm& sf, SteerDirection dir) {
  require_physical(sf);
  Eigen::Matrix4cd m = sf.expand().matrix().cast<std::complex<double>>();
  const int steered = dir == SteerDirection::AtoB ? 2 : 0;
  m(steered, steered + 1) += std::complex<double>(0.0, 0.5);
  m(steered + 1, steered) += std::complex<double>(0.0, -0.5);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

SteeringReport analyze_state(const TwoModeStandardForm& sf) {
  SteeringReport rep;
  rep.g_ab = gaussian_steering(sf, SteerDirection::AtoB);
  rep.g_ba = gaussian_steering(sf, SteerDirection::BtoA);
  rep.asymmetry = std::abs(rep.g_ab - rep.g_ba);
  rep.e2 = renyi2_entanglement(sf);
  rep.det_cross = sf.c_plus * sf.c_minus;
  rep.direction = classify_direction(rep.g_ab, rep.g_ba);
  return rep;
}

}  // namespace steerlab
