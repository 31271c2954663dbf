#pragma once

#include <complex>
#include <vector>

#include "chi2opt/nonlinear.hpp"

namespace chi2opt {

/// Photon-number expansion of a single-mode state, truncated at kmax.
struct PhotonNumberState {
  std::vector<Complex> coefficients;  // index = photon number k
  int kmax() const { return static_cast<int>(coefficients.size()) - 1; }
  double norm() const;
  void normalise();
};

struct SqueezingParameter {
  double s = 0.0;      // magnitude, >= 0
  double theta = 0.0;  // rad, in (-pi, pi]
};

/// Squeezed-vacuum photon-number coefficients
///   c_{2k} = sqrt(sech s) sqrt((2k)!) / (2^k k!) (-e^{i theta} tanh s)^k,
/// odd coefficients zero, normalised over the truncation window. Factorials
/// are accumulated in the log domain; kmax above 300 is refused.
PhotonNumberState squeezed_vacuum_coefficients(const SqueezingParameter& param,
                                               int kmax);

/// State built from the cascaded pair-creation series: even photon numbers
/// only, k-th term carrying sigma^{k/2} combinatorics, normalised. Requires
/// |sigma| < 1.
PhotonNumberState cascaded_state(Complex sigma, int N);

/// tanh s = |sigma|, theta = Arg sigma. Requires |sigma| < 1.
SqueezingParameter squeezing_from_sigma(Complex sigma);

/// Closed form for perfect phase matching in a homogeneous 1D medium:
///   s = ln sqrt((4 k_s k_i + chi |A_p| L) / (4 k_s k_i - chi |A_p| L)),
///   theta = phi_p - (k_s x + k_i y), wrapped to (-pi, pi].
SqueezingParameter squeezing_1d_closed_form(double chi, const PumpField& pump,
                                            double L,
                                            const ThreeWaveKinematics& kin,
                                            double x, double y);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double theta);

}  // namespace chi2opt
