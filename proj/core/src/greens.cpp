#include "chi2opt/greens.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"

namespace chi2opt {

using constants::c0;
using constants::pi;

namespace {
constexpr Complex kImag(0.0, 1.0);
}

WaveVectorModel WaveVectorModel::vacuum() {
  return WaveVectorModel([](double omega) { return Complex(omega / c0, 0.0); });
}

WaveVectorModel WaveVectorModel::constant_index(Complex n) {
  return WaveVectorModel([n](double omega) { return (omega / c0) * n; });
}

WaveVectorModel WaveVectorModel::from_epsilon(
    std::function<Complex(double)> epsilon) {
  return WaveVectorModel([eps = std::move(epsilon)](double omega) {
    Complex n = std::sqrt(eps(omega));
    if (n.real() < 0.0) n = -n;
    const Complex k = (omega / c0) * n;
    // Passive media keep Im k >= 0; a gain profile is legal but flagged.
    if (k.imag() < -1e-12 * std::abs(k)) {
      std::cerr << "chi2opt: warning: Im k < 0 at omega = " << omega
                << " (gain medium)\n";
    }
    return k;
  });
}

Complex analytic_1d_propagator(double omega, double x, double y,
                               const WaveVectorModel& k_model) {
  if (!(omega > 0.0)) throw DomainError("analytic_1d_propagator: omega must be > 0");
  const Complex k = k_model(omega);
  if (std::abs(k) < 1e-30) {
    throw NumericalError("analytic_1d_propagator: degenerate wave number");
  }
  const double d = x - y;
  // Theta(0) = 1/2 makes the two branches agree at coincidence.
  if (d == 0.0) return 1.0 / (2.0 * kImag * k);
  const double theta_p = d > 0.0 ? 1.0 : 0.0;
  const double theta_m = 1.0 - theta_p;
  return (theta_p * std::exp(kImag * k * d) + theta_m * std::exp(-kImag * k * d)) /
         (2.0 * kImag * k);
}

Numeric1DPropagator::Numeric1DPropagator(const MediumProfile& medium,
                                         double omega,
                                         std::vector<double> grid)
    : omega_(omega), grid_(std::move(grid)) {
  if (!(omega > 0.0)) throw DomainError("Numeric1DPropagator: omega must be > 0");
  if (grid_.size() < 2) {
    throw ValidationError("Numeric1DPropagator: grid needs at least 2 points");
  }
  if (!std::is_sorted(grid_.begin(), grid_.end())) {
    throw ValidationError("Numeric1DPropagator: grid must be sorted");
  }

  const double x_lo = grid_.front();
  const double x_hi = grid_.back();

  // Slice [x_lo, x_hi] into homogeneous layers: the medium regions clipped to
  // the grid plus vacuum gaps in between.
  std::vector<double> cuts{x_lo, x_hi};
  for (const Region& r : medium.regions()) {
    if (r.x_start > x_lo && r.x_start < x_hi) cuts.push_back(r.x_start);
    if (r.x_end > x_lo && r.x_end < x_hi) cuts.push_back(r.x_end);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Layer layer;
    layer.x0 = cuts[i];
    layer.x1 = cuts[i + 1];
    const double mid = 0.5 * (layer.x0 + layer.x1);
    Complex n = std::sqrt(medium.epsilon(omega_, mid));
    if (n.real() < 0.0) n = -n;
    layer.k = (omega_ / c0) * n;
    layers_.push_back(layer);
  }

  // Sampling density: at least 20 grid points per local wavelength.
  double max_re_k = 0.0;
  for (const Layer& l : layers_) max_re_k = std::max(max_re_k, l.k.real());
  double max_dx = 0.0;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    max_dx = std::max(max_dx, grid_[i + 1] - grid_[i]);
  }
  if (max_re_k > 0.0 && max_dx > (2.0 * pi / max_re_k) / 20.0) {
    throw DiscretisationError(
        "Numeric1DPropagator: grid coarser than 20 points per wavelength");
  }

  // Right-outgoing solution u+: pure e^{+ikx} in the rightmost layer,
  // matched (value and derivative) leftwards across each interface.
  {
    Layer& last = layers_.back();
    last.a_plus = 1.0;
    last.b_plus = 0.0;
    for (int j = static_cast<int>(layers_.size()) - 2; j >= 0; --j) {
      Layer& cur = layers_[j];
      const Layer& right = layers_[j + 1];
      // value and derivative at the interface from the right-hand layer
      const Complex u = right.a_plus + right.b_plus;
      const Complex du = kImag * right.k * (right.a_plus - right.b_plus);
      const Complex phase = std::exp(kImag * cur.k * (cur.x1 - cur.x0));
      cur.a_plus = 0.5 * (u + du / (kImag * cur.k)) / phase;
      cur.b_plus = 0.5 * (u - du / (kImag * cur.k)) * phase;
    }
  }
  // Left-outgoing solution u-: pure e^{-ikx} in the leftmost layer, matched
  // rightwards.
  {
    Layer& first = layers_.front();
    first.a_minus = 0.0;
    first.b_minus = 1.0;
    for (std::size_t j = 1; j < layers_.size(); ++j) {
      Layer& cur = layers_[j];
      const Layer& left = layers_[j - 1];
      const Complex phase = std::exp(kImag * left.k * (left.x1 - left.x0));
      const Complex u = left.a_minus * phase + left.b_minus / phase;
      const Complex du = kImag * left.k * (left.a_minus * phase - left.b_minus / phase);
      cur.a_minus = 0.5 * (u + du / (kImag * cur.k));
      cur.b_minus = 0.5 * (u - du / (kImag * cur.k));
    }
  }

  // Wronskian constancy along the grid (1e-8 relative) and scale check.
  Complex w_ref = 0.0;
  double w_scale = 0.0;
  for (double x : grid_) {
    const Complex w = u_minus(x) * du_plus(x) - du_minus(x) * u_plus(x);
    w_scale = std::max(w_scale,
                       std::abs(u_minus(x) * du_plus(x)) +
                           std::abs(du_minus(x) * u_plus(x)));
    if (w_ref == 0.0) w_ref = w;
  }
  for (double x : grid_) {
    const Complex w = u_minus(x) * du_plus(x) - du_minus(x) * u_plus(x);
    if (std::abs(w - w_ref) > 1e-8 * std::abs(w_ref)) {
      throw NumericalError("Numeric1DPropagator: Wronskian drifts along grid");
    }
  }
  if (std::abs(w_ref) < 1e-12 * w_scale) {
    throw ResonanceError("Numeric1DPropagator: degenerate Wronskian");
  }
  wronskian_ = w_ref;
}

const Numeric1DPropagator::Layer& Numeric1DPropagator::layer_at(double x) const {
  if (x < grid_.front() || x > grid_.back()) {
    throw DomainError("Numeric1DPropagator: position outside grid");
  }
  for (const Layer& l : layers_) {
    if (x <= l.x1) return l;
  }
  return layers_.back();
}

Complex Numeric1DPropagator::u_plus(double x) const {
  const Layer& l = layer_at(x);
  const Complex e = std::exp(kImag * l.k * (x - l.x0));
  return l.a_plus * e + l.b_plus / e;
}

Complex Numeric1DPropagator::u_minus(double x) const {
  const Layer& l = layer_at(x);
  const Complex e = std::exp(kImag * l.k * (x - l.x0));
  return l.a_minus * e + l.b_minus / e;
}

Complex Numeric1DPropagator::du_plus(double x) const {
  const Layer& l = layer_at(x);
  const Complex e = std::exp(kImag * l.k * (x - l.x0));
  return kImag * l.k * (l.a_plus * e - l.b_plus / e);
}

Complex Numeric1DPropagator::du_minus(double x) const {
  const Layer& l = layer_at(x);
  const Complex e = std::exp(kImag * l.k * (x - l.x0));
  return kImag * l.k * (l.a_minus * e - l.b_minus / e);
}

Complex Numeric1DPropagator::evaluate(double x, double y) const {
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return u_minus(lo) * u_plus(hi) / wronskian_;
}

std::vector<Complex> Numeric1DPropagator::sample(double y) const {
  std::vector<Complex> out;
  out.reserve(grid_.size());
  for (double x : grid_) out.push_back(evaluate(x, y));
  return out;
}

ResidualReport helmholtz_residual(const std::vector<double>& grid,
                                  const std::vector<Complex>& G,
                                  const MediumProfile& medium, double omega,
                                  double y) {
  if (grid.size() != G.size() || grid.size() < 5) {
    throw ValidationError("helmholtz_residual: grid/G mismatch or too short");
  }
  const double h = grid[1] - grid[0];
  const double k0 = omega / c0;

  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    // skip the delta-source neighbourhood
    if (std::abs(grid[i] - y) <= 2.5 * h) continue;
    Complex n = std::sqrt(medium.epsilon(omega, grid[i]));
    if (n.real() < 0.0) n = -n;
    const Complex k2 = k0 * k0 * n * n;
    const Complex d2 = (G[i - 1] - 2.0 * G[i] + G[i + 1]) / (h * h);
    worst = std::max(worst, std::abs(d2 + k2 * G[i]));
    scale = std::max(scale, std::abs(k2 * G[i]));
  }
  if (scale == 0.0) scale = 1.0;

  // Derivative jump across the source. One-sided 3-point stencils at the
  // first grid points clear of y, corrected back to y using G'' = -k^2 G.
  auto one_sided = [&](std::size_t j, int dir) {
    return double(dir) * (-3.0 * G[j] + 4.0 * G[j + dir] - G[j + 2 * dir]) /
           (2.0 * h);
  };
  std::size_t jr = 0;
  while (jr < grid.size() && grid[jr] <= y) ++jr;
  std::size_t jl = jr - 1;
  if (jr + 2 >= grid.size() || jl < 2) {
    throw ValidationError("helmholtz_residual: source too close to grid edge");
  }
  Complex n_src = std::sqrt(medium.epsilon(omega, y));
  if (n_src.real() < 0.0) n_src = -n_src;
  const Complex k2 = k0 * k0 * n_src * n_src;
  const Complex dr = one_sided(jr, +1) + k2 * G[jr] * (grid[jr] - y);
  const Complex dl = one_sided(jl, -1) - k2 * G[jl] * (y - grid[jl]);
  const double jump = std::abs(dr - dl);

  return {worst / scale, jump};
}

Complex feynman_propagator(double tau, double omega, double eta) {
  if (!(omega > 0.0)) throw DomainError("feynman_propagator: omega must be > 0");
  if (!(eta > 0.0)) throw DomainError("feynman_propagator: eta must be > 0");
  // Poles at +-sqrt(omega^2 - i eta); the principal square root has
  // Re > 0, Im < 0, so closing the contour picks up a single residue.
  const Complex pole = std::sqrt(Complex(omega * omega, -eta));
  return kImag * std::exp(-kImag * pole * std::abs(tau)) / (2.0 * pole);
}

DressedPropagator DressedPropagator::analytic(WaveVectorModel k_model) {
  DressedPropagator p;
  p.k_model_ = std::move(k_model);
  return p;
}

DressedPropagator DressedPropagator::numeric(const MediumProfile& medium,
                                             double omega,
                                             std::vector<double> grid) {
  DressedPropagator p;
  p.numeric_ = std::make_shared<Numeric1DPropagator>(medium, omega, std::move(grid));
  return p;
}

Complex DressedPropagator::evaluate(double omega, double x, double y) const {
  if (numeric_) {
    if (std::abs(omega - numeric_->omega()) >
        1e-9 * std::max(omega, numeric_->omega())) {
      throw DomainError("DressedPropagator: numeric backend built for a different omega");
    }
    return numeric_->evaluate(x, y);
  }
  return analytic_1d_propagator(omega, x, y, k_model_);
}

}  // namespace chi2opt
