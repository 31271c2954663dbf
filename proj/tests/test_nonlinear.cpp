#include <cmath>
#include <complex>

#include <doctest.h>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"
#include "chi2opt/nonlinear.hpp"

using namespace chi2opt;
using constants::c0;
using constants::pi;

namespace {

constexpr double kOmegaPump = 2.4e15;
constexpr double kChi = 3e-7;
constexpr double kLength = 1e-5;

ThreeWaveKinematics matched_kinematics() {
  ThreeWaveKinematics kin;
  kin.pump.amplitude = 2.0;
  kin.pump.phase = 0.4;
  kin.pump.omega_p = kOmegaPump;
  kin.pump.k_p = kOmegaPump / c0;
  kin.omega_s = kin.omega_i = 0.5 * kOmegaPump;
  // counter-propagating emission closes the momentum balance
  kin.k_s = kin.k_i = -0.5 * kOmegaPump / c0;
  return kin;
}

DressedPropagator fixed_k(Complex k) {
  return DressedPropagator::analytic(WaveVectorModel([k](double) { return k; }));
}

}  // namespace

TEST_CASE("effective coupling") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  PumpField pump;
  pump.amplitude = 2.0;
  pump.phase = 0.0;
  pump.omega_p = kOmegaPump;
  pump.k_p = 0.0;

  CHECK(effective_coupling(medium, pump, -1e-6) == Complex(0.0));
  CHECK(effective_coupling(medium, pump, 2e-6) == Complex(kChi * 2.0, 0.0));

  pump.k_p = 5e6;
  pump.phase = 1.1;
  for (double x : {1e-6, 3e-6, 9e-6}) {
    CHECK(std::abs(effective_coupling(medium, pump, x)) ==
          doctest::Approx(kChi * 2.0).epsilon(1e-12));
  }
}

TEST_CASE("frequency and phase mismatch arithmetic") {
  ThreeWaveKinematics kin = matched_kinematics();
  CHECK(frequency_mismatch(kin) == 0.0);
  CHECK(energy_allowed(kin));

  kin.omega_s = 0.3 * kOmegaPump;
  kin.omega_i = 0.7 * kOmegaPump;
  CHECK(frequency_mismatch(kin) == doctest::Approx(0.0));

  kin.omega_i = 0.8 * kOmegaPump;
  CHECK(frequency_mismatch(kin) == doctest::Approx(-0.1 * kOmegaPump));
  CHECK(!energy_allowed(kin));

  ThreeWaveKinematics simple;
  simple.pump.omega_p = 1.0;
  simple.omega_s = simple.omega_i = 0.5;
  simple.pump.k_p = 2.0;
  simple.k_s = simple.k_i = -1.0;
  CHECK(phase_mismatch(simple) == Complex(0.0));
  simple.pump.k_p = simple.k_s = simple.k_i = 1.0;
  CHECK(phase_mismatch(simple) == Complex(3.0));
}

TEST_CASE("sinc convention") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(pi) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(sinc(0.5) == doctest::Approx(std::sin(0.5) / 0.5));
  CHECK(sinc(-0.7) == sinc(0.7));
}

TEST_CASE("biphoton analytic closed form") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  const ThreeWaveKinematics kin = matched_kinematics();
  const double x = -1e-6, y = -2e-6;

  // Theta(x - y) prefactor
  CHECK(biphoton_1d_analytic(medium, kin, y, x) == Complex(0.0));

  // Delta k = 0 modulus
  const Complex val = biphoton_1d_analytic(medium, kin, x, y);
  const double kski = std::abs(kin.k_s * kin.k_i);
  CHECK(std::abs(val) ==
        doctest::Approx(kChi * kin.pump.amplitude * kLength / (4.0 * kski))
            .epsilon(1e-12));

  // first sinc zero at L dk / 2 = pi
  ThreeWaveKinematics detuned = kin;
  detuned.pump.k_p += 2.0 * pi / kLength;
  CHECK(std::abs(biphoton_1d_analytic(medium, detuned, x, y)) <
        1e-12 * std::abs(val));
}

TEST_CASE("biphoton analytic pump-phase covariance") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  ThreeWaveKinematics kin = matched_kinematics();
  const Complex base = biphoton_1d_analytic(medium, kin, -1e-6, -2e-6);
  kin.pump.phase += 0.9;
  const Complex shifted = biphoton_1d_analytic(medium, kin, -1e-6, -2e-6);
  CHECK(std::abs(shifted) == doctest::Approx(std::abs(base)).epsilon(1e-12));
  CHECK(std::arg(shifted / base) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("biphoton analytic linear in L at phase matching") {
  const ThreeWaveKinematics kin = matched_kinematics();
  const Chi2Medium m1 = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  const Chi2Medium m3 = Chi2Medium::homogeneous(kChi, 0.0, 3.0 * kLength);
  const double x = -1e-6, y = -2e-6;
  CHECK(std::abs(biphoton_1d_analytic(m3, kin, x, y)) ==
        doctest::Approx(3.0 * std::abs(biphoton_1d_analytic(m1, kin, x, y)))
            .epsilon(1e-12));
}

TEST_CASE("biphoton energy filter throws for forbidden processes") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  ThreeWaveKinematics kin = matched_kinematics();
  kin.omega_i = 0.6 * kOmegaPump;
  CHECK_THROWS_AS(biphoton_1d_analytic(medium, kin, -1e-6, -2e-6),
                  ForbiddenProcessError);
  const DressedPropagator G = fixed_k(kin.k_s);
  CHECK_THROWS_AS(biphoton_numeric(medium, kin, G, G, -1e-6, -2e-6),
                  ForbiddenProcessError);
}

TEST_CASE("biphoton numeric equals the closed form up to the overall scale") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  ThreeWaveKinematics kin = matched_kinematics();
  const DressedPropagator Gs = fixed_k(kin.k_s);
  const DressedPropagator Gi = fixed_k(kin.k_i);
  // both detectors to the left of the medium, x > y
  const double x = -1e-6, y = -2e-6;

  SUBCASE("phase matched") {
    const Complex num = biphoton_numeric(medium, kin, Gs, Gi, x, y);
    const Complex ana = biphoton_1d_analytic(medium, kin, x, y);
    CHECK(std::abs(num / ana + 1.0) < 1e-8);
  }
  SUBCASE("detuned sweep keeps the ratio fixed") {
    for (int i = 0; i < 5; ++i) {
      ThreeWaveKinematics detuned = kin;
      detuned.pump.k_p += (i - 2) * 0.4 * pi / kLength;
      const Complex num = biphoton_numeric(medium, detuned, Gs, Gi, x, y);
      const Complex ana = biphoton_1d_analytic(medium, detuned, x, y);
      CHECK(std::abs(num / ana + 1.0) < 1e-7);
    }
  }
}

TEST_CASE("biphoton numeric: zero chi, pump linearity, additivity") {
  ThreeWaveKinematics kin = matched_kinematics();
  const DressedPropagator Gs = fixed_k(kin.k_s);
  const DressedPropagator Gi = fixed_k(kin.k_i);
  const double x = -1e-6, y = -2e-6;

  const Chi2Medium empty = Chi2Medium::homogeneous(0.0, 0.0, kLength);
  CHECK(biphoton_numeric(empty, kin, Gs, Gi, x, y) == Complex(0.0));

  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  const Complex base = biphoton_numeric(medium, kin, Gs, Gi, x, y);
  ThreeWaveKinematics loud = kin;
  loud.pump.amplitude *= 2.0;
  const Complex doubled = biphoton_numeric(medium, loud, Gs, Gi, x, y);
  CHECK(std::abs(doubled - 2.0 * base) < 1e-12 * std::abs(base));

  // additivity over disjoint chi regions
  auto chi_ab = [](double, double z) {
    if (z < 0.3 * kLength) return kChi;
    if (z > 0.6 * kLength) return 2.0 * kChi;
    return 0.0;
  };
  Chi2Medium split;
  split.chi2 = chi_ab;
  split.x_start = 0.0;
  split.x_end = kLength;
  Chi2Medium a = split, b = split;
  a.x_end = 0.3 * kLength;
  b.x_start = 0.6 * kLength;
  const Complex whole = biphoton_numeric(split, kin, Gs, Gi, x, y);
  const Complex parts = biphoton_numeric(a, kin, Gs, Gi, x, y) +
                        biphoton_numeric(b, kin, Gs, Gi, x, y);
  CHECK(std::abs(whole - parts) < 1e-8 * std::abs(whole));
}

TEST_CASE("spdc probability law") {
  CHECK(spdc_probability(2.0, 0.0) / spdc_probability(1.0, 0.0) ==
        doctest::Approx(4.0));
  CHECK(spdc_probability(1.0, 2.0 * pi) < 1e-28);
  CHECK(spdc_probability(2.0, pi / 2.0) ==
        doctest::Approx(4.0 * std::pow(2.0 / pi, 2)).epsilon(1e-12));
  CHECK(spdc_probability(1.5, 0.7) == spdc_probability(1.5, -0.7));
  CHECK_THROWS_AS(spdc_probability(0.0, 1.0), DomainError);
}

TEST_CASE("kinematic singularity") {
  const Chi2Medium medium = Chi2Medium::homogeneous(kChi, 0.0, kLength);
  ThreeWaveKinematics kin = matched_kinematics();
  kin.k_s = 0.0;
  CHECK_THROWS_AS(biphoton_1d_analytic(medium, kin, -1e-6, -2e-6),
                  KinematicSingularityError);
}
