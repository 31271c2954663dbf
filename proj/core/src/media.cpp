#include "chi2opt/media.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

#include "chi2opt/constants.hpp"
#include "chi2opt/errors.hpp"

namespace chi2opt {

using constants::eps0;
using constants::pi;

MediumProfile::MediumProfile(std::vector<Region> regions, std::string label)
    : regions_(std::move(regions)), label_(std::move(label)) {
  std::sort(regions_.begin(), regions_.end(),
            [](const Region& a, const Region& b) { return a.x_start < b.x_start; });
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const Region& r = regions_[i];
    if (!(r.x_start < r.x_end)) {
      throw ValidationError("medium '" + label_ + "': region with x_start >= x_end");
    }
    if (!r.epsilon) {
      throw ValidationError("medium '" + label_ + "': region without epsilon");
    }
    if (i > 0 && r.x_start < regions_[i - 1].x_end) {
      throw ValidationError("medium '" + label_ + "': overlapping regions");
    }
  }
}

Complex MediumProfile::epsilon(double omega, double x) const {
  for (const Region& r : regions_) {
    if (x >= r.x_start && x <= r.x_end) return r.epsilon(omega);
  }
  return 1.0;
}

double MediumProfile::g(double x) const {
  for (const Region& r : regions_) {
    if (x >= r.x_start && x <= r.x_end) return r.coupling;
  }
  return 0.0;
}

Complex MediumProfile::index(double omega, double x) const {
  Complex n = std::sqrt(epsilon(omega, x));
  if (n.real() < 0.0) n = -n;
  return n;
}

std::vector<double> MediumProfile::gain_frequencies(
    const std::vector<double>& omegas) const {
  std::vector<double> flagged;
  for (double w : omegas) {
    for (const Region& r : regions_) {
      if (r.epsilon(w).imag() < 0.0) {
        flagged.push_back(w);
        break;
      }
    }
  }
  return flagged;
}

MediumProfile MediumProfile::homogeneous(double x_start, double x_end,
                                         Complex eps, std::string label) {
  Region r;
  r.x_start = x_start;
  r.x_end = x_end;
  r.epsilon = [eps](double) { return eps; };
  return MediumProfile({r}, std::move(label));
}

MediumProfile MediumProfile::vacuum() { return MediumProfile({}, "vacuum"); }

void HuttnerBarnettModel::validate() const {
  if (!(omega0 > 0.0)) throw ValidationError("HuttnerBarnett: omega0 must be > 0");
  if (!(beta > 0.0)) throw ValidationError("HuttnerBarnett: beta must be > 0");
  if (!(rho > 0.0)) throw ValidationError("HuttnerBarnett: rho must be > 0");
  if (!(omega_cutoff > omega0)) {
    throw ValidationError("HuttnerBarnett: omega_cutoff must exceed omega0");
  }
  if (!(eta > 0.0)) throw ValidationError("HuttnerBarnett: eta must be > 0");
  if (!coupling_f) throw ValidationError("HuttnerBarnett: coupling_f not set");
}

double scaled_resonance(const HuttnerBarnettModel& model,
                        const QuadratureOptions& opts) {
  model.validate();
  // |v(omega)|^2 / rho^2 with v = f sqrt(eps0 omega0^2 beta rho)
  const double scale = eps0 * model.omega0 * model.omega0 * model.beta / model.rho;
  auto integrand = [&](double w) -> Complex {
    const double f = model.coupling_f(w);
    return scale * f * f;
  };
  const auto r = integrate(integrand, 0.0, model.omega_cutoff, opts);
  return model.omega0 * model.omega0 + r.value.real();
}

Complex reservoir_kernel(const HuttnerBarnettModel& model, double Omega,
                         const QuadratureOptions& opts) {
  model.validate();
  if (Omega < 0.0) throw DomainError("reservoir_kernel: Omega must be >= 0");
  if (Omega > model.omega_cutoff - model.eta && Omega < model.omega_cutoff + model.eta) {
    std::cerr << "chi2opt: warning: reservoir kernel pole within eta of the "
                 "cutoff edge (Omega = " << Omega << "); truncation error likely\n";
  }
  const Complex shift(Omega * Omega, model.eta);
  auto integrand = [&](double w) -> Complex {
    const double f = model.coupling_f(w);
    return w * w * f * f / (Complex(w * w, 0.0) - shift);
  };
  // Bisect exactly at the pole so the subdivision concentrates there.
  if (Omega > 0.0 && Omega < model.omega_cutoff) {
    const auto left = integrate(integrand, 0.0, Omega, opts);
    const auto right = integrate(integrand, Omega, model.omega_cutoff, opts);
    return left.value + right.value;
  }
  return integrate(integrand, 0.0, model.omega_cutoff, opts).value;
}

Complex gamma_tilde(const HuttnerBarnettModel& model, double Omega,
                    const QuadratureOptions& opts) {
  const double w0t2 = scaled_resonance(model, opts);
  const double osc = eps0 * model.omega0 * model.omega0 * model.beta;
  const Complex kernel = reservoir_kernel(model, Omega, opts);
  const Complex denom = (w0t2 - Omega * Omega) / osc - kernel / model.rho;
  const double scale =
      (w0t2 + Omega * Omega) / osc + std::abs(kernel) / model.rho;
  if (std::abs(denom) < 1e-14 * scale) {
    throw ResonanceError("gamma_tilde: resonance singularity at Omega = " +
                         std::to_string(Omega));
  }
  return 1.0 / denom;
}

Complex effective_epsilon(const HuttnerBarnettModel& model, double g_value,
                          double Omega, const QuadratureOptions& opts) {
  if (g_value < 0.0) throw DomainError("effective_epsilon: g must be >= 0");
  if (g_value == 0.0) return 1.0;  // vacuum, exactly
  return 1.0 + (g_value / eps0) * gamma_tilde(model, Omega, opts);
}

namespace {

// Dense linear algebra for n <= 3, enough for the Gaussian self-test.
bool cholesky(int n, const std::vector<double>& a, std::vector<double>& l) {
  l.assign(n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double sum = a[i * n + j];
      for (int k = 0; k < j; ++k) sum -= l[i * n + k] * l[j * n + k];
      if (i == j) {
        if (sum <= 0.0) return false;
        l[i * n + i] = std::sqrt(sum);
      } else {
        l[i * n + j] = sum / l[j * n + j];
      }
    }
  }
  return true;
}

std::vector<double> solve_spd(int n, const std::vector<double>& l,
                              const std::vector<double>& b) {
  std::vector<double> y(n), x(n);
  for (int i = 0; i < n; ++i) {
    double sum = b[i];
    for (int k = 0; k < i; ++k) sum -= l[i * n + k] * y[k];
    y[i] = sum / l[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double sum = y[i];
    for (int k = i + 1; k < n; ++k) sum -= l[k * n + i] * x[k];
    x[i] = sum / l[i * n + i];
  }
  return x;
}

}  // namespace

bool gaussian_identity_selftest(int n, const std::vector<double>& matrix,
                                const std::vector<double>& shift) {
  if (n < 1 || n > 3) throw DomainError("gaussian_identity_selftest: dimension must be 1..3");
  if (matrix.size() != static_cast<std::size_t>(n * n) ||
      shift.size() != static_cast<std::size_t>(n)) {
    throw DomainError("gaussian_identity_selftest: shape mismatch");
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(matrix[i * n + j] - matrix[j * n + i]) >
          1e-12 * (1.0 + std::abs(matrix[i * n + j]))) {
        throw DomainError("gaussian_identity_selftest: matrix not symmetric");
      }
    }
  }
  std::vector<double> l;
  if (!cholesky(n, matrix, l)) {
    throw DomainError("gaussian_identity_selftest: matrix not positive definite");
  }

  double det = 1.0;
  for (int i = 0; i < n; ++i) det *= l[i * n + i] * l[i * n + i];
  const std::vector<double> ainv_b = solve_spd(n, l, shift);
  double b_ainv_b = 0.0;
  for (int i = 0; i < n; ++i) b_ainv_b += shift[i] * ainv_b[i];

  const double rhs =
      std::sqrt(std::pow(2.0 * pi, n) / det) * std::exp(0.5 * b_ainv_b);

  // Quadrature box: +-10 sigma per axis around the stationary point -A^{-1}b,
  // with sigma_i = sqrt((A^{-1})_{ii}).
  std::vector<double> center(n), sigma(n);
  for (int i = 0; i < n; ++i) {
    center[i] = -ainv_b[i];
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    sigma[i] = std::sqrt(solve_spd(n, l, e)[i]);
  }

  const int m = 64;
  std::vector<double> nodes, weights;
  gauss_legendre(m, nodes, weights);

  double lhs = 0.0;
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  while (true) {
    double w = 1.0;
    for (int d = 0; d < n; ++d) {
      x[d] = center[d] + 10.0 * sigma[d] * nodes[idx[d]];
      w *= 10.0 * sigma[d] * weights[idx[d]];
    }
    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < n; ++i) {
      lin += shift[i] * x[i];
      for (int j = 0; j < n; ++j) quad += x[i] * matrix[i * n + j] * x[j];
    }
    lhs += w * std::exp(-0.5 * quad - lin);

    int d = 0;
    while (d < n && ++idx[d] == m) idx[d++] = 0;
    if (d == n) break;
  }

  return std::abs(lhs - rhs) < 1e-6 * std::abs(rhs);
}

}  // namespace chi2opt
