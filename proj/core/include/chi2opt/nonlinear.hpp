#pragma once

#include <complex>
#include <functional>

#include "chi2opt/greens.hpp"
#include "chi2opt/media.hpp"

namespace chi2opt {

/// Classical plane-wave pump, fixed under the undepleted pump approximation.
struct PumpField {
  double amplitude = 0.0;  // |A_p| >= 0
  double phase = 0.0;      // phi_p, rad
  double omega_p = 0.0;    // rad/s
  Complex k_p = 0.0;       // 1/m

  Complex complex_amplitude() const;  // |A_p| e^{i phi_p}
  void validate() const;
};

/// Scalar chi^(2) medium of finite extent embedded in a linear profile.
struct Chi2Medium {
  std::function<double(double, double)> chi2;  // chi(omega, x) inside extent
  double x_start = 0.0;
  double x_end = 0.0;
  const MediumProfile* linear = nullptr;  // optional linear background

  double length() const { return x_end - x_start; }
  double chi_at(double omega, double x) const;  // 0 outside the extent
  void validate() const;

  static Chi2Medium homogeneous(double chi, double x_start, double x_end);
};

struct ThreeWaveKinematics {
  double omega_s = 0.0;
  double omega_i = 0.0;
  Complex k_s = 0.0;
  Complex k_i = 0.0;
  PumpField pump;

  void validate() const;
};

/// lambda(x) = chi(x) |A_p| e^{i phi_p} e^{i k_p x}; 0 outside the extent.
/// The e^{-i omega_p t} pump factor lives in the energy-mismatch bookkeeping,
/// never in this value.
Complex effective_coupling(const Chi2Medium& medium, const PumpField& pump,
                           double x);

/// Delta omega = omega_p - omega_s - omega_i.
double frequency_mismatch(const ThreeWaveKinematics& kin);

/// Energy filter used by every downstream operation: |Delta omega| above
/// tol (default 1e-9 omega_p) marks the process forbidden.
bool energy_allowed(const ThreeWaveKinematics& kin, double tol_rel = 1e-9);

/// Delta k = k_p + k_s + k_i (sign convention with counter-propagating
/// signal/idler emission closing the momentum balance).
Complex phase_mismatch(const ThreeWaveKinematics& kin);

/// sinc(u) = sin(u)/u with sinc(0) = 1.
double sinc(double u);
Complex sinc(Complex u);

/// Closed-form 1D biphoton propagator for a homogeneous chi^(2) medium:
///   Theta(x-y) * [chi |A_p| e^{i phi_p} / (4 k_s k_i)] e^{-i(k_s x + k_i y)}
///     * L * sinc(L dk / 2).
/// Phase-mismatched additive terms are dropped (forbidden processes).
Complex biphoton_1d_analytic(const Chi2Medium& medium,
                             const ThreeWaveKinematics& kin, double x,
                             double y);

/// Biphoton propagator by quadrature over the vertex position:
///   X2(x, y) = int_extent dz G_s(omega_s, x, z) lambda(z) G_i(omega_i, z, y).
Complex biphoton_numeric(const Chi2Medium& medium,
                         const ThreeWaveKinematics& kin,
                         const DressedPropagator& G_s,
                         const DressedPropagator& G_i, double x, double y,
                         const QuadratureOptions& opts = {});

/// Unnormalised SPDC probability L^2 sinc^2(L dk / 2).
double spdc_probability(double L, double delta_k);

}  // namespace chi2opt
