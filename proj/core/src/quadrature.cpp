#include "chi2opt/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "chi2opt/errors.hpp"

namespace chi2opt {

namespace {

// 15-point Kronrod extension of 7-point Gauss, abscissae on [0, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double a, b;
  std::complex<double> value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const std::function<std::complex<double>(double)>& f, double a,
             double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  std::complex<double> kronrod = 0.0, gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const std::complex<double> fsum =
        (i == 7) ? f(c) : f(c - h * kXgk[i]) + f(c + h * kXgk[i]);
    kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kronrod *= h;
  gauss *= h;

  Segment s;
  s.a = a;
  s.b = b;
  s.value = kronrod;
  s.error = std::abs(kronrod - gauss);
  return s;
}

}  // namespace

QuadratureResult integrate(const std::function<std::complex<double>(double)>& f,
                           double a, double b, const QuadratureOptions& opts) {
  if (!(a < b)) {
    if (a == b) return {0.0, 0.0, 0};
    auto r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }

  std::priority_queue<Segment> segments;
  Segment whole = gk15(f, a, b);
  std::complex<double> total = whole.value;
  double total_error = whole.error;
  double total_mass = std::abs(whole.value);  // L1 floor for cancelling sums
  segments.push(whole);

  int subdivisions = 0;
  auto converged = [&] {
    const double floor = 50.0 * 2.220446049250313e-16 * total_mass;
    return total_error <=
           std::max({opts.abs_tol, opts.rel_tol * std::abs(total), floor});
  };
  while (!converged()) {
    if (subdivisions >= opts.max_subdivisions) {
      throw IntegrationError("adaptive quadrature did not converge", total_error);
    }
    Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid);
    Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    total_mass += std::abs(left.value) + std::abs(right.value) -
                  std::abs(worst.value);
    segments.push(left);
    segments.push(right);
    ++subdivisions;
  }
  return {total, total_error, subdivisions};
}

void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Legendre recurrence for P_n(x) and P'_n(x)
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

}  // namespace chi2opt
