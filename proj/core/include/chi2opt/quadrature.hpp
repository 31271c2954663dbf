#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace chi2opt {

struct QuadratureOptions {
  double rel_tol = 1e-9;
  double abs_tol = 0.0;
  int max_subdivisions = 10000;
};

struct QuadratureResult {
  std::complex<double> value;
  double error_estimate;
  int subdivisions;
};

/// Adaptive Gauss-Kronrod (7-15) quadrature of a complex-valued integrand
/// over the finite interval [a, b]. Throws IntegrationError (carrying the
/// achieved error estimate) if the tolerance cannot be reached within
/// max_subdivisions bisections.
QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           double a, double b,
                           const QuadratureOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace chi2opt
