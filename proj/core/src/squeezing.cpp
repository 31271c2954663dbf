#include "chi2opt/squeezing.hpp"

#include <cmath>
#include <limits>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"

namespace chi2opt {

using constants::pi;

namespace {
constexpr Complex kImag(0.0, 1.0);
}

double PhotonNumberState::norm() const {
  double n2 = 0.0;
  for (const Complex& c : coefficients) n2 += std::norm(c);
  return std::sqrt(n2);
}

void PhotonNumberState::normalise() {
  const double n = norm();
  if (n == 0.0) throw NumericalError("PhotonNumberState: cannot normalise null state");
  for (Complex& c : coefficients) c /= n;
}

double wrap_angle(double theta) {
  theta = std::fmod(theta + pi, 2.0 * pi);
  if (theta <= 0.0) theta += 2.0 * pi;
  return theta - pi;
}

PhotonNumberState squeezed_vacuum_coefficients(const SqueezingParameter& param,
                                               int kmax) {
  if (param.s < 0.0) throw DomainError("squeezed vacuum: s must be >= 0");
  if (kmax < 2 || kmax % 2 != 0) {
    throw DomainError("squeezed vacuum: kmax must be even and >= 2");
  }
  if (kmax > 300) {
    throw DomainError("squeezed vacuum: kmax above 300 exceeds the truncation budget");
  }
  PhotonNumberState state;
  state.coefficients.assign(kmax + 1, 0.0);

  const double sech = 1.0 / std::cosh(param.s);
  const double tanh = std::tanh(param.s);
  for (int k = 0; 2 * k <= kmax; ++k) {
    // log-domain magnitude: sqrt(sech s) sqrt((2k)!) / (2^k k!) tanh^k s
    double logmag = 0.5 * std::log(sech) +
                    0.5 * std::lgamma(2.0 * k + 1.0) -
                    k * std::log(2.0) - std::lgamma(k + 1.0);
    if (tanh > 0.0) logmag += k * std::log(tanh);
    else if (k > 0) logmag = -std::numeric_limits<double>::infinity();
    const Complex phase = std::exp(kImag * (param.theta * k)) *
                          ((k % 2 == 0) ? 1.0 : -1.0);
    state.coefficients[2 * k] = phase * std::exp(logmag);
  }
  state.normalise();
  return state;
}

PhotonNumberState cascaded_state(Complex sigma, int N) {
  if (std::abs(sigma) >= 1.0) {
    throw DomainError("cascaded_state: |sigma| must be < 1");
  }
  if (N < 0 || N > 600 || N % 2 != 0) {
    throw DomainError("cascaded_state: N must be even and in [0, 600]");
  }
  PhotonNumberState state;
  state.coefficients.assign(N + 1, 0.0);
  // Pair-creation recurrence: each step adds two photons and one power of
  // -sigma/2 together with the bosonic matrix elements.
  Complex c = 1.0;
  state.coefficients[0] = c;
  for (int m = 1; 2 * m <= N; ++m) {
    c *= (-0.5 * sigma) * std::sqrt((2.0 * m) * (2.0 * m - 1.0)) / double(m);
    state.coefficients[2 * m] = c;
  }
  state.normalise();
  return state;
}

SqueezingParameter squeezing_from_sigma(Complex sigma) {
  const double mag = std::abs(sigma);
  if (mag >= 1.0) {
    throw DomainError("squeezing_from_sigma: |sigma| must be < 1");
  }
  SqueezingParameter p;
  p.s = std::atanh(mag);
  p.theta = mag == 0.0 ? 0.0 : wrap_angle(std::arg(sigma));
  return p;
}

SqueezingParameter squeezing_1d_closed_form(double chi, const PumpField& pump,
                                            double L,
                                            const ThreeWaveKinematics& kin,
                                            double x, double y) {
  pump.validate();
  kin.validate();
  if (L < 0.0) throw DomainError("squeezing closed form: L must be >= 0");
  const double kski = (kin.k_s * kin.k_i).real();
  if (!(kski > 0.0)) {
    throw KinematicSingularityError("squeezing closed form: k_s k_i must be real positive");
  }
  const double drive = std::abs(chi) * pump.amplitude * L;
  if (drive >= 4.0 * kski) {
    throw DomainError(
        "squeezing closed form: perturbative validity bound chi |A_p| L < 4 k_s k_i violated");
  }
  SqueezingParameter p;
  p.s = std::atanh(drive / (4.0 * kski));
  p.theta = wrap_angle(pump.phase - (kin.k_s.real() * x + kin.k_i.real() * y));
  return p;
}

}  // namespace chi2opt
