#include "steerlab/optomech.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace steerlab {

namespace {

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::invalid_argument(std::string("SystemParams: ") + name + " must be positive");
}

void require_nonnegative(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::invalid_argument(std::string("SystemParams: ") + name + " must be nonnegative");
}

}  // namespace

SystemParams default_params() {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  CavityParams c;
  c.length = 25e-3;
  c.cavity_freq = two_pi * 5.26e14;
  c.cavity_decay = two_pi * 215e3;
  c.laser_freq = two_pi * 2.82e14;
  c.mirror_mass = 145e-12;
  c.mech_freq = two_pi * 947e3;
  c.mech_damping = two_pi * 140.0;
  c.thermal_occupation = 1.0;

  SystemParams p;
  p.cavity = {c, c};
  p.cavity[0].laser_power = 12e-3;
  p.cavity[1].laser_power = 5e-3;
  p.squeezing = 0.5;
  return p;
}

void validate(const SystemParams& p) {
  for (const CavityParams& c : p.cavity) {
    require_positive(c.length, "length");
    require_positive(c.cavity_freq, "cavity_freq");
    require_positive(c.cavity_decay, "cavity_decay");
    require_positive(c.laser_freq, "laser_freq");
    require_nonnegative(c.laser_power, "laser_power");
    require_positive(c.mirror_mass, "mirror_mass");
    require_positive(c.mech_freq, "mech_freq");
    require_positive(c.mech_damping, "mech_damping");
    if (c.temperature.has_value() == c.thermal_occupation.has_value())
      throw std::invalid_argument(
          "SystemParams: set exactly one of temperature and thermal_occupation");
    if (c.temperature) require_nonnegative(*c.temperature, "temperature");
    if (c.thermal_occupation) require_nonnegative(*c.thermal_occupation, "thermal_occupation");
    if (c.cooperativity) require_nonnegative(*c.cooperativity, "cooperativity");
  }
  require_nonnegative(p.squeezing, "squeezing");
}

double mean_thermal_occupation(double mech_freq, double temperature) {
  if (!(mech_freq > 0.0) || !std::isfinite(mech_freq))
    throw std::invalid_argument("mean_thermal_occupation: mech_freq must be positive");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("mean_thermal_occupation: temperature must be nonnegative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(constants::hbar * mech_freq / (constants::k_boltzmann * temperature));
}

DerivedState derive_state(const SystemParams& p) {
  validate(p);
  DerivedState out;
  out.squeeze_n = std::sinh(p.squeezing) * std::sinh(p.squeezing);
  out.squeeze_m = std::sinh(p.squeezing) * std::cosh(p.squeezing);

  for (int j = 0; j < 2; ++j) {
    const CavityParams& c = p.cavity[static_cast<size_t>(j)];
    CavityState& s = out.cavity[static_cast<size_t>(j)];
    const double kappa = c.cavity_decay;
    const double gamma = c.mech_damping;
    const double omega_m = c.mech_freq;

    s.effective_detuning = -omega_m;
    s.phase = std::atan2(-2.0 * s.effective_detuning, kappa);
    s.single_photon_coupling =
        (c.cavity_freq / c.length) * std::sqrt(constants::hbar / (c.mirror_mass * omega_m));

    const double eps_sq = 2.0 * kappa * c.laser_power / (constants::hbar * c.laser_freq);
    s.drive_amplitude = std::sqrt(eps_sq);
    const double lorentz = 0.25 * kappa * kappa + omega_m * omega_m;

    double mean_sq;  // |a_js|^2
    if (c.cooperativity) {
      s.cooperativity = *c.cooperativity;
      s.effective_coupling = 0.5 * std::sqrt(s.cooperativity * gamma * kappa);
      mean_sq = (s.effective_coupling / s.single_photon_coupling) *
                (s.effective_coupling / s.single_photon_coupling);
    } else {
      mean_sq = eps_sq / lorentz;
      s.effective_coupling = s.single_photon_coupling * std::sqrt(mean_sq);
      // Kept linear in the drive power: C is assembled from |a_js|^2, not
      // from the rounded coupling.
      s.cooperativity =
          4.0 * s.single_photon_coupling * s.single_photon_coupling * mean_sq / (gamma * kappa);
    }
    s.mean_field_modulus = std::sqrt(mean_sq);
    s.mirror_shift = std::complex<double>(0.0, -2.0) * s.single_photon_coupling * mean_sq /
                     std::complex<double>(gamma, 2.0 * omega_m);
    s.bare_detuning = s.effective_detuning + 2.0 * s.single_photon_coupling * s.mirror_shift.real();

    if (c.temperature)
      s.thermal_occupation = mean_thermal_occupation(omega_m, *c.temperature);
    else
      s.thermal_occupation = *c.thermal_occupation;
  }
  return out;
}

Matrix8d drift_from_rates(double gamma_m1, double gamma_m2, double kappa_c1, double kappa_c2,
                          double chi1, double chi2) {
  Matrix8d a = Matrix8d::Zero();
  const double gamma[2] = {gamma_m1, gamma_m2};
  const double kappa[2] = {kappa_c1, kappa_c2};
  const double chi[2] = {chi1, chi2};
  for (int j = 0; j < 2; ++j) {
    const int m = 2 * j;      // mirror quadratures
    const int c = 4 + 2 * j;  // cavity quadratures
    for (int q = 0; q < 2; ++q) {
      a(m + q, m + q) = -0.5 * gamma[j];
      a(c + q, c + q) = -0.5 * kappa[j];
      a(m + q, c + q) = chi[j];
      a(c + q, m + q) = -chi[j];
    }
  }
  return a;
}

Matrix8d diffusion_from_rates(double gamma_m1, double gamma_m2, double kappa_c1, double kappa_c2,
                              double nth1, double nth2, double squeezing) {
  Matrix8d d = Matrix8d::Zero();
  const double gamma[2] = {gamma_m1, gamma_m2};
  const double kappa[2] = {kappa_c1, kappa_c2};
  const double nth[2] = {nth1, nth2};
  const double ch = std::cosh(2.0 * squeezing);
  const double sh = std::sinh(2.0 * squeezing);
  for (int j = 0; j < 2; ++j) {
    const int m = 2 * j;
    const int c = 4 + 2 * j;
    for (int q = 0; q < 2; ++q) {
      d(m + q, m + q) = gamma[j] * (nth[j] + 0.5);
      d(c + q, c + q) = 0.5 * kappa[j] * ch;
    }
  }
  const double cross = 0.5 * std::sqrt(kappa_c1 * kappa_c2) * sh;
  d(4, 6) = cross;
  d(6, 4) = cross;
  d(5, 7) = -cross;
  d(7, 5) = -cross;
  return d;
}

Matrix8d build_drift(const DerivedState& s, const SystemParams& p) {
  return drift_from_rates(p.cavity[0].mech_damping, p.cavity[1].mech_damping,
                          p.cavity[0].cavity_decay, p.cavity[1].cavity_decay,
                          s.cavity[0].effective_coupling, s.cavity[1].effective_coupling);
}

Matrix8d build_diffusion(const DerivedState& s, const SystemParams& p) {
  return diffusion_from_rates(p.cavity[0].mech_damping, p.cavity[1].mech_damping,
                              p.cavity[0].cavity_decay, p.cavity[1].cavity_decay,
                              s.cavity[0].thermal_occupation, s.cavity[1].thermal_occupation,
                              p.squeezing);
}

bool check_stability(const Eigen::MatrixXd& drift, double tol) {
  if (drift.rows() != drift.cols() || drift.rows() == 0)
    throw std::invalid_argument("check_stability: drift must be square and nonempty");
  if (!drift.allFinite())
    throw std::invalid_argument("check_stability: drift entries must be finite");
  Eigen::EigenSolver<Eigen::MatrixXd> es(drift, false);
  return es.eigenvalues().real().maxCoeff() < -tol;
}

std::vector<std::string> check_validity(const SystemParams& p, const DerivedState& s,
                                        const ValidityThresholds& t) {
  std::vector<std::string> warnings;
  char buf[160];
  for (int j = 0; j < 2; ++j) {
    const CavityParams& c = p.cavity[static_cast<size_t>(j)];
    const CavityState& st = s.cavity[static_cast<size_t>(j)];
    const double quality = c.mech_freq / c.mech_damping;
    if (quality < t.min_quality) {
      std::snprintf(buf, sizeof buf,
                    "cavity %d: mechanical quality factor %.3g below %.3g, damping is not weak",
                    j + 1, quality, t.min_quality);
      warnings.emplace_back(buf);
    }
    const double sideband = c.mech_freq / c.cavity_decay;
    if (sideband < t.min_sideband) {
      std::snprintf(buf, sizeof buf,
                    "cavity %d: sideband ratio omega_m/kappa_c %.3g below %.3g, "
                    "rotating-wave treatment degrades",
                    j + 1, sideband, t.min_sideband);
      warnings.emplace_back(buf);
    }
    if (st.mean_field_modulus < t.min_mean_field) {
      std::snprintf(buf, sizeof buf,
                    "cavity %d: mean field modulus %.3g below %.3g, linearization is unreliable",
                    j + 1, st.mean_field_modulus, t.min_mean_field);
      warnings.emplace_back(buf);
    }
  }
  return warnings;
}

}  // namespace steerlab
