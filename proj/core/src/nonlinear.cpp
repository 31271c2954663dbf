#include "chi2opt/nonlinear.hpp"

#include <cmath>

#include "chi2opt/errors.hpp"
#include "chi2opt/quadrature.hpp"

namespace chi2opt {

namespace {
constexpr Complex kImag(0.0, 1.0);
}

Complex PumpField::complex_amplitude() const {
  return amplitude * std::exp(kImag * phase);
}

void PumpField::validate() const {
  if (amplitude < 0.0) throw ValidationError("pump: amplitude must be >= 0");
  if (!(omega_p > 0.0)) throw ValidationError("pump: omega_p must be > 0");
  if (!std::isfinite(phase)) throw ValidationError("pump: phase must be finite");
}

double Chi2Medium::chi_at(double omega, double x) const {
  if (x < x_start || x > x_end) return 0.0;
  return chi2(omega, x);
}

void Chi2Medium::validate() const {
  if (!chi2) throw ValidationError("chi2 medium: response function not set");
  if (!(x_start < x_end)) {
    throw ValidationError("chi2 medium: x_start must be < x_end");
  }
}

Chi2Medium Chi2Medium::homogeneous(double chi, double x_start, double x_end) {
  Chi2Medium m;
  m.chi2 = [chi](double, double) { return chi; };
  m.x_start = x_start;
  m.x_end = x_end;
  return m;
}

void ThreeWaveKinematics::validate() const {
  if (!(omega_s > 0.0)) throw ValidationError("kinematics: omega_s must be > 0");
  if (!(omega_i > 0.0)) throw ValidationError("kinematics: omega_i must be > 0");
  pump.validate();
}

Complex effective_coupling(const Chi2Medium& medium, const PumpField& pump,
                           double x) {
  const double chi = medium.chi_at(pump.omega_p, x);
  if (chi == 0.0) return 0.0;
  return chi * pump.complex_amplitude() * std::exp(kImag * pump.k_p * x);
}

double frequency_mismatch(const ThreeWaveKinematics& kin) {
  return kin.pump.omega_p - kin.omega_s - kin.omega_i;
}

bool energy_allowed(const ThreeWaveKinematics& kin, double tol_rel) {
  return std::abs(frequency_mismatch(kin)) <= tol_rel * kin.pump.omega_p;
}

Complex phase_mismatch(const ThreeWaveKinematics& kin) {
  return kin.pump.k_p + kin.k_s + kin.k_i;
}

double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

Complex sinc(Complex u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

Complex biphoton_1d_analytic(const Chi2Medium& medium,
                             const ThreeWaveKinematics& kin, double x,
                             double y) {
  medium.validate();
  kin.validate();
  if (!energy_allowed(kin)) {
    throw ForbiddenProcessError("biphoton: energy conservation violated");
  }
  if (x <= y) return 0.0;  // Theta(x - y)
  const Complex ks = kin.k_s;
  const Complex ki = kin.k_i;
  if (std::abs(ks * ki) < 1e-60) {
    throw KinematicSingularityError("biphoton: vanishing signal/idler wave number");
  }
  const double L = medium.length();
  const double z_mid = 0.5 * (medium.x_start + medium.x_end);
  const double chi = medium.chi_at(kin.pump.omega_p, z_mid);
  const Complex dk = phase_mismatch(kin);
  const Complex prefactor =
      chi * kin.pump.complex_amplitude() / (4.0 * ks * ki);
  // The vertex integral over the extent referenced to the medium centre:
  //   int dz e^{i dk z} = L sinc(L dk / 2) e^{i dk z_mid}.
  return prefactor * std::exp(-kImag * (ks * x + ki * y)) *
         std::exp(kImag * dk * z_mid) * L * sinc(0.5 * L * dk);
}

Complex biphoton_numeric(const Chi2Medium& medium,
                         const ThreeWaveKinematics& kin,
                         const DressedPropagator& G_s,
                         const DressedPropagator& G_i, double x, double y,
                         const QuadratureOptions& opts) {
  medium.validate();
  kin.validate();
  if (!energy_allowed(kin)) {
    throw ForbiddenProcessError("biphoton: energy conservation violated");
  }
  auto integrand = [&](double z) -> Complex {
    const Complex lam = effective_coupling(medium, kin.pump, z);
    if (lam == 0.0) return 0.0;
    return G_s.evaluate(kin.omega_s, x, z) * lam *
           G_i.evaluate(kin.omega_i, z, y);
  };
  return integrate(integrand, medium.x_start, medium.x_end, opts).value;
}

double spdc_probability(double L, double delta_k) {
  if (!(L > 0.0)) throw DomainError("spdc_probability: L must be > 0");
  const double s = sinc(0.5 * L * delta_k);
  return L * L * s * s;
}

}  // namespace chi2opt
