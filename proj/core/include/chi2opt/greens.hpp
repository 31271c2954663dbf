#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "chi2opt/media.hpp"

namespace chi2opt {

/// Dispersion relation k(omega) = (omega/c) n(omega), branch Re n >= 0.
class WaveVectorModel {
 public:
  WaveVectorModel() = default;
  explicit WaveVectorModel(std::function<Complex(double)> dispersion)
      : dispersion_(std::move(dispersion)) {}

  Complex operator()(double omega) const { return dispersion_(omega); }

  static WaveVectorModel vacuum();
  static WaveVectorModel constant_index(Complex n);
  static WaveVectorModel from_epsilon(std::function<Complex(double)> epsilon);

 private:
  std::function<Complex(double)> dispersion_;
};

/// Closed-form 1D Green function of a homogeneous medium:
///   G = (1/2ik) [Theta(x-y) e^{ik(x-y)} + Theta(y-x) e^{-ik(x-y)}]
/// with Theta(0) = 1/2 (continuous at coincidence). The stationary
/// frequency-domain convention is used: no e^{-i omega t} factor.
Complex analytic_1d_propagator(double omega, double x, double y,
                               const WaveVectorModel& k_model);

/// Outgoing-wave Green function of [d^2/dx^2 + k0^2 n^2(x)] G = delta(x-y)
/// for a piecewise medium. Two homogeneous solutions (left- and
/// right-outgoing) are propagated across the layer structure and combined
/// through their Wronskian. The Wronskian is verified constant along the
/// grid at construction.
class Numeric1DPropagator {
 public:
  Numeric1DPropagator(const MediumProfile& medium, double omega,
                      std::vector<double> grid);

  Complex evaluate(double x, double y) const;
  Complex wronskian() const { return wronskian_; }
  const std::vector<double>& grid() const { return grid_; }
  double omega() const { return omega_; }

  /// G(x_i, y) over the whole grid for a fixed source position.
  std::vector<Complex> sample(double y) const;

 private:
  struct Layer {
    double x0, x1;
    Complex k;
    Complex a_plus, b_plus;    // u+ = a e^{ik(x-x0)} + b e^{-ik(x-x0)}
    Complex a_minus, b_minus;  // u-
  };
  const Layer& layer_at(double x) const;
  Complex u_plus(double x) const;
  Complex u_minus(double x) const;
  Complex du_plus(double x) const;
  Complex du_minus(double x) const;

  double omega_;
  std::vector<double> grid_;
  std::vector<Layer> layers_;
  Complex wronskian_;
};

struct ResidualReport {
  double interior_residual;  // max |G'' + k0^2 n^2 G| / max |k0^2 n^2 G|
  double source_jump;        // dG/dx|_{y+} - dG/dx|_{y-}, should be 1
};

/// Finite-difference verification that a sampled Green function solves the
/// 1D Helmholtz equation away from the source, plus the unit derivative jump
/// across the source.
ResidualReport helmholtz_residual(const std::vector<double>& grid,
                                  const std::vector<Complex>& G,
                                  const MediumProfile& medium, double omega,
                                  double y);

/// Feynman propagator of the regulated oscillator:
///   D_F(tau, omega) = int dOmega/2pi e^{i Omega tau} / (omega^2 - Omega^2 - i eta)
/// in residue closed form. Even in tau; unit derivative jump at tau = 0 as
/// eta -> 0.
Complex feynman_propagator(double tau, double omega, double eta);

/// Evaluator over either propagator backend, so downstream code does not
/// care which route produced G.
class DressedPropagator {
 public:
  static DressedPropagator analytic(WaveVectorModel k_model);
  static DressedPropagator numeric(const MediumProfile& medium, double omega,
                                   std::vector<double> grid);

  Complex evaluate(double omega, double x, double y) const;
  bool is_analytic() const { return numeric_ == nullptr; }

 private:
  DressedPropagator() = default;
  WaveVectorModel k_model_;
  std::shared_ptr<const Numeric1DPropagator> numeric_;
};

}  // namespace chi2opt
