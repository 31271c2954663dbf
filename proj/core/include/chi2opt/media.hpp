#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "chi2opt/quadrature.hpp"

namespace chi2opt {

using Complex = std::complex<double>;

/// One homogeneous slab on the 1D axis. epsilon is a function of angular
/// frequency only; spatial variation is piecewise-constant across regions.
struct Region {
  double x_start = 0.0;
  double x_end = 0.0;
  std::function<Complex(double)> epsilon;  // epsilon(omega)
  double coupling = 1.0;                   // value of g(x) inside the region
};

/// Piecewise description of a linear medium on a 1D axis: relative dielectric
/// function per region and the geometry factor g(x), zero outside all regions.
class MediumProfile {
 public:
  MediumProfile() = default;
  MediumProfile(std::vector<Region> regions, std::string label);

  const std::vector<Region>& regions() const { return regions_; }
  const std::string& label() const { return label_; }

  /// epsilon(omega, x); 1 (vacuum) outside all regions.
  Complex epsilon(double omega, double x) const;
  /// Geometry factor g(x); 0 outside all regions.
  double g(double x) const;
  /// Refractive index sqrt(epsilon) on the branch Re n >= 0.
  Complex index(double omega, double x) const;

  /// Scans Im epsilon over the given frequencies; returns the frequencies at
  /// which any region shows gain (Im epsilon < 0). A gain medium is legal but
  /// worth flagging to the caller.
  std::vector<double> gain_frequencies(const std::vector<double>& omegas) const;

  static MediumProfile homogeneous(double x_start, double x_end, Complex epsilon,
                                   std::string label = "homogeneous");
  static MediumProfile vacuum();

 private:
  std::vector<Region> regions_;
  std::string label_;
};

/// Microscopic oscillator + reservoir parameters generating the effective
/// dielectric function. Immutable after construction.
struct HuttnerBarnettModel {
  double omega0 = 0.0;        // resonance angular frequency, rad/s
  double beta = 0.0;          // static polarisability, dimensionless
  double rho = 0.0;           // reservoir mass density per unit frequency
  std::function<double(double)> coupling_f;  // spectral coupling f(omega)
  double omega_cutoff = 0.0;  // reservoir integration cutoff, rad/s
  double eta = 0.0;           // pole-shift regulator, > 0

  void validate() const;  // throws ValidationError on a broken invariant
};

/// Scaled resonance frequency squared: omega0^2 shifted by the reservoir
/// coupling integral, with v(omega) = f(omega) sqrt(eps0 omega0^2 beta rho).
double scaled_resonance(const HuttnerBarnettModel& model,
                        const QuadratureOptions& opts = {});

/// Frequency-domain reservoir kernel
///   G(Omega) = int_0^cutoff domega omega^2 |f|^2 / (omega^2 - Omega^2 - i eta).
Complex reservoir_kernel(const HuttnerBarnettModel& model, double Omega,
                         const QuadratureOptions& opts = {});

/// Frequency-domain medium response
///   Gamma(Omega) = [ (w0t^2 - Omega^2)/(eps0 omega0^2 beta) - G(Omega)/rho ]^-1.
/// Throws ResonanceError when the denominator collapses.
Complex gamma_tilde(const HuttnerBarnettModel& model, double Omega,
                    const QuadratureOptions& opts = {});

/// Positive-frequency effective dielectric constant
///   eps+(Omega) = 1 + (g/eps0) Gamma(Omega).
/// Negative frequencies: eps-(Omega) = conj(eps+(Omega)).
Complex effective_epsilon(const HuttnerBarnettModel& model, double g_value,
                          double Omega, const QuadratureOptions& opts = {});

/// Numerically verifies the n-dimensional Gaussian integral identity for a
/// symmetric positive-definite matrix (row-major, n x n) and shift vector b:
/// quadrature over a +-10 sigma box against the closed form. True when the
/// relative error is below 1e-6. n in 1..3.
bool gaussian_identity_selftest(int dimension, const std::vector<double>& matrix,
                                const std::vector<double>& shift);

}  // namespace chi2opt
