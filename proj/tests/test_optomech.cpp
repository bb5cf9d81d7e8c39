#include <doctest.h>

#include <cmath>
#include <random>

#include "steerlab/optomech.hpp"
#include "support/reference_values.hpp"

using namespace steerlab;

TEST_CASE("mean thermal occupation") {
  const double omega = 2.0 * 3.141592653589793 * 947e3;

  CHECK(mean_thermal_occupation(omega, 0.0) == 0.0);

  // Invert n(T) at n = 1 and n = 2.
  const double t1 = constants::hbar * omega / (constants::k_boltzmann * std::log(2.0));
  CHECK(mean_thermal_occupation(omega, t1) == doctest::Approx(1.0).epsilon(1e-12));
  const double t2 = constants::hbar * omega / (constants::k_boltzmann * std::log(1.5));
  CHECK(mean_thermal_occupation(omega, t2) == doctest::Approx(2.0).epsilon(1e-12));

  // Deep quantum regime underflows to zero without overflow.
  CHECK(mean_thermal_occupation(omega, 1e-12) == 0.0);

  CHECK_THROWS_AS(mean_thermal_occupation(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(mean_thermal_occupation(omega, -1.0), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  SystemParams p = default_params();
  CHECK_NOTHROW(validate(p));

  SystemParams bad = p;
  bad.cavity[0].mirror_mass = 0.0;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = p;
  bad.cavity[1].temperature = 0.1;  // both thermal fields set
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = p;
  bad.cavity[0].thermal_occupation.reset();  // neither set
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  bad = p;
  bad.squeezing = -0.1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("derived state reproduces the frozen reference quantities") {
  const SystemParams p = default_params();
  const DerivedState s = derive_state(p);

  CHECK(s.cavity[0].cooperativity == doctest::Approx(refvals::kCoop12mW).epsilon(1e-10));
  CHECK(s.cavity[1].cooperativity == doctest::Approx(refvals::kCoop5mW).epsilon(1e-10));
  CHECK(s.cavity[0].effective_coupling ==
        doctest::Approx(refvals::kCoupling12mW).epsilon(1e-10));
  CHECK(s.cavity[0].mean_field_modulus ==
        doctest::Approx(refvals::kMeanField12mW).epsilon(1e-10));

  for (int j = 0; j < 2; ++j) {
    const CavityState& c = s.cavity[j];
    const CavityParams& cp = p.cavity[j];
    CHECK(c.effective_detuning == -cp.mech_freq);
    CHECK(c.phase == doctest::Approx(std::atan2(2.0 * cp.mech_freq, cp.cavity_decay)));
    // Working-point consistency.
    CHECK(4.0 * c.effective_coupling * c.effective_coupling /
              (cp.mech_damping * cp.cavity_decay) ==
          doctest::Approx(c.cooperativity).epsilon(1e-12));
    CHECK(c.bare_detuning == doctest::Approx(c.effective_detuning +
                                             2.0 * c.single_photon_coupling *
                                                 c.mirror_shift.real()));
    CHECK(std::abs(c.mirror_shift) <
          2.0 * c.single_photon_coupling * c.mean_field_modulus * c.mean_field_modulus /
              (2.0 * cp.mech_freq));
  }

  // Squeezed-reservoir moments satisfy M^2 = N(N+1).
  CHECK(s.squeeze_m * s.squeeze_m ==
        doctest::Approx(s.squeeze_n * (s.squeeze_n + 1.0)).epsilon(1e-12));
}

TEST_CASE("cooperativity is exactly linear in drive power") {
  SystemParams p = default_params();
  const DerivedState base = derive_state(p);
  p.cavity[0].laser_power *= 2.0;
  const DerivedState doubled = derive_state(p);
  CHECK(doubled.cavity[0].cooperativity == 2.0 * base.cavity[0].cooperativity);
  CHECK(doubled.cavity[1].cooperativity == base.cavity[1].cooperativity);

  p.cavity[0].laser_power = 0.0;
  const DerivedState off = derive_state(p);
  CHECK(off.cavity[0].cooperativity == 0.0);
  CHECK(off.cavity[0].effective_coupling == 0.0);
  CHECK(off.cavity[0].mean_field_modulus == 0.0);
}

TEST_CASE("cooperativity override fixes the coupling") {
  SystemParams p = default_params();
  p.cavity[0].cooperativity = 35.0;
  const DerivedState s = derive_state(p);
  CHECK(s.cavity[0].cooperativity == 35.0);
  CHECK(4.0 * s.cavity[0].effective_coupling * s.cavity[0].effective_coupling /
            (p.cavity[0].mech_damping * p.cavity[0].cavity_decay) ==
        doctest::Approx(35.0).epsilon(1e-12));
  CHECK(s.cavity[0].mean_field_modulus ==
        doctest::Approx(s.cavity[0].effective_coupling / s.cavity[0].single_photon_coupling));
  // The other cavity still follows its power.
  CHECK(s.cavity[1].cooperativity == doctest::Approx(refvals::kCoop5mW).epsilon(1e-10));
}

TEST_CASE("drift matrix structure") {
  const double g1 = 0.3, g2 = 0.05, k1 = 2.0, k2 = 1.5, x1 = 0.8, x2 = 0.4;
  const Matrix8d a = drift_from_rates(g1, g2, k1, k2, x1, x2);

  CHECK(a(0, 0) == -0.5 * g1);
  CHECK(a(3, 3) == -0.5 * g2);
  CHECK(a(4, 4) == -0.5 * k1);
  CHECK(a(7, 7) == -0.5 * k2);
  CHECK(a(0, 4) == x1);
  CHECK(a(1, 5) == x1);
  CHECK(a(2, 6) == x2);
  CHECK(a(4, 0) == -x1);
  CHECK(a(6, 2) == -x2);
  CHECK(a(0, 2) == 0.0);  // no direct mirror-mirror coupling
  CHECK(a(4, 6) == 0.0);  // no direct cavity-cavity coupling
  CHECK(a(0, 5) == 0.0);  // no cross-quadrature coupling

  // Each mirror-cavity pair carries trace -(gamma+kappa)/2 and
  // determinant gamma kappa / 4 + chi^2.
  Eigen::Matrix2d pair1;
  pair1 << a(0, 0), a(0, 4), a(4, 0), a(4, 4);
  CHECK(pair1.trace() == doctest::Approx(-0.5 * (g1 + k1)));
  CHECK(pair1.determinant() == doctest::Approx(0.25 * g1 * k1 + x1 * x1).epsilon(1e-14));
  Eigen::Matrix2d pair2;
  pair2 << a(2, 2), a(2, 6), a(6, 2), a(6, 6);
  CHECK(pair2.trace() == doctest::Approx(-0.5 * (g2 + k2)));
  CHECK(pair2.determinant() == doctest::Approx(0.25 * g2 * k2 + x2 * x2).epsilon(1e-14));
}

TEST_CASE("swapping the cavities permutes the matrices exactly") {
  const Matrix8d a12 = drift_from_rates(0.3, 0.05, 2.0, 1.5, 0.8, 0.4);
  const Matrix8d a21 = drift_from_rates(0.05, 0.3, 1.5, 2.0, 0.4, 0.8);
  const Matrix8d d12 = diffusion_from_rates(0.3, 0.05, 2.0, 1.5, 1.0, 4.0, 0.7);
  const Matrix8d d21 = diffusion_from_rates(0.05, 0.3, 1.5, 2.0, 4.0, 1.0, 0.7);

  Matrix8d perm = Matrix8d::Zero();  // swaps mirror 1<->2 and cavity 1<->2
  for (int q = 0; q < 2; ++q) {
    perm(0 + q, 2 + q) = 1.0;
    perm(2 + q, 0 + q) = 1.0;
    perm(4 + q, 6 + q) = 1.0;
    perm(6 + q, 4 + q) = 1.0;
  }
  CHECK(((perm * a12 * perm.transpose()) - a21).cwiseAbs().maxCoeff() == 0.0);
  CHECK(((perm * d12 * perm.transpose()) - d21).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("diffusion matrix structure and positivity") {
  const double r = 0.5;
  const Matrix8d d = diffusion_from_rates(0.3, 0.05, 2.0, 1.5, 2.0, 0.0, r);

  CHECK(d(0, 0) == doctest::Approx(0.3 * 2.5));
  CHECK(d(1, 1) == d(0, 0));
  CHECK(d(2, 2) == doctest::Approx(0.05 * 0.5));
  CHECK(d(4, 4) == doctest::Approx(0.5 * 2.0 * std::cosh(2 * r)));
  CHECK(d(4, 6) == doctest::Approx(0.5 * std::sqrt(2.0 * 1.5) * std::sinh(2 * r)));
  CHECK(d(5, 7) == doctest::Approx(-d(4, 6)));
  CHECK(d(0, 2) == 0.0);  // mirror baths are independent
  CHECK(d(4, 5) == 0.0);

  std::mt19937 rng(31);
  auto logu = [&](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  for (int k = 0; k < 2000; ++k) {
    const Matrix8d dd = diffusion_from_rates(logu(1e-4, 1e2), logu(1e-4, 1e2), logu(1e-4, 1e2),
                                             logu(1e-4, 1e2), logu(1e-3, 1e2), logu(1e-3, 1e2),
                                             std::uniform_real_distribution<double>(0, 3)(rng));
    Eigen::SelfAdjointEigenSolver<Matrix8d> es(dd, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-12 * dd.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("drift is stable for all positive rates") {
  std::mt19937 rng(47);
  auto logu = [&](double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
  };
  for (int k = 0; k < 10000; ++k) {
    const Matrix8d a = drift_from_rates(logu(1e-2, 1e8), logu(1e-2, 1e8), logu(1e-2, 1e8),
                                        logu(1e-2, 1e8), logu(1e-2, 1e8), logu(1e-2, 1e8));
    CHECK(check_stability(a));
  }
}

TEST_CASE("stability check edge cases") {
  CHECK(check_stability(-0.5 * Eigen::MatrixXd::Identity(4, 4)));
  CHECK_FALSE(check_stability(Eigen::MatrixXd::Identity(4, 4)));
  // An undamped decoupled mirror sits on the imaginary axis.
  CHECK_FALSE(check_stability(drift_from_rates(0.0, 1.0, 1.0, 1.0, 0.0, 0.1)));
  // tol pushes the bar past a weakly damped mode.
  CHECK_FALSE(check_stability(-0.5 * Eigen::MatrixXd::Identity(4, 4), 0.6));
  CHECK_THROWS_AS(check_stability(Eigen::MatrixXd::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("validity warnings flag degraded regimes") {
  const SystemParams good = default_params();
  CHECK(check_validity(good, derive_state(good)).empty());

  SystemParams lossy = good;
  lossy.cavity[0].mech_damping = lossy.cavity[0].mech_freq;  // quality factor 1
  const auto warn_q = check_validity(lossy, derive_state(lossy));
  REQUIRE(!warn_q.empty());
  CHECK(warn_q.front().find("quality factor") != std::string::npos);

  SystemParams weak = good;
  weak.cavity[1].laser_power = 1e-12;
  const auto warn_drive = check_validity(weak, derive_state(weak));
  REQUIRE(!warn_drive.empty());
  CHECK(warn_drive.front().find("mean field") != std::string::npos);

  SystemParams bad_sideband = good;
  bad_sideband.cavity[0].cavity_decay = 10.0 * bad_sideband.cavity[0].mech_freq;
  const auto warn_sb = check_validity(bad_sideband, derive_state(bad_sideband));
  REQUIRE(!warn_sb.empty());
  CHECK(warn_sb.front().find("sideband") != std::string::npos);
}

TEST_CASE("build_drift and build_diffusion use the derived working point") {
  SystemParams p = default_params();
  p.cavity[0].cooperativity = 35.0;
  p.cavity[1].cooperativity = 15.0;
  const DerivedState s = derive_state(p);
  const Matrix8d a = build_drift(s, p);
  const Matrix8d d = build_diffusion(s, p);

  CHECK(a(0, 4) == s.cavity[0].effective_coupling);
  CHECK(a(2, 6) == s.cavity[1].effective_coupling);
  CHECK(a(0, 0) == -0.5 * p.cavity[0].mech_damping);
  CHECK(d(0, 0) == doctest::Approx(p.cavity[0].mech_damping * 1.5));
  CHECK(d(4, 6) == doctest::Approx(0.5 * p.cavity[0].cavity_decay * std::sinh(2 * p.squeezing)));
}
