#include "triboltz/quadrature.hpp"

#include <cmath>
#include <numbers>

#include <gsl/gsl_integration.h>

#include "triboltz/errors.hpp"

namespace triboltz {

Rule1D gauss_legendre(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "gauss_legendre: n must be positive");
  gsl_integration_glfixed_table* t = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  if (!t) fail(ErrorKind::Numerical, "gauss_legendre: table allocation failed");
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &r.x[i], &r.w[i], t);
  gsl_integration_glfixed_table_free(t);
  return r;
}

Rule1D gauss_legendre(int n, double a, double b) {
  Rule1D r = gauss_legendre(n);
  const double h = 0.5 * (b - a), c = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    r.x[i] = c + h * r.x[i];
    r.w[i] *= h;
  }
  return r;
}

Rule1D chebyshev_gauss(int n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "chebyshev_gauss: n must be positive");
  Rule1D r;
  r.x.resize(n);
  r.w.assign(n, std::numbers::pi / n);
  for (int i = 0; i < n; ++i) r.x[i] = std::cos(std::numbers::pi * (2.0 * i + 1.0) / (2.0 * n));
  return r;
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

SphereRule sphere_rule(int d, int n) {
  SphereRule r;
  r.dim = d;
  if (d == 2) {
    r.nodes.reserve(2 * n);
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * std::numbers::pi * (i + 0.5) / n;
      r.nodes.push_back(std::cos(t));
      r.nodes.push_back(std::sin(t));
      r.w.push_back(2.0 * std::numbers::pi / n);
    }
    return r;
  }
  if (d == 3) {
    const Rule1D g = gauss_legendre(n);
    const int na = 2 * n;
    for (int i = 0; i < n; ++i) {
      const double z = g.x[i];
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < na; ++j) {
        const double phi = 2.0 * std::numbers::pi * (j + 0.5) / na;
        r.nodes.push_back(s * std::cos(phi));
        r.nodes.push_back(s * std::sin(phi));
        r.nodes.push_back(z);
        r.w.push_back(g.w[i] * 2.0 * std::numbers::pi / na);
      }
    }
    return r;
  }
  fail(ErrorKind::InvalidInput, "sphere_rule: dimension must be 2 or 3");
}

SphereRule stacked_sphere_rule(int d, int nTheta, int nSphere) {
  const SphereRule s = sphere_rule(d, nSphere);
  const Rule1D g = gauss_legendre(nTheta, 0.0, 0.5 * std::numbers::pi);
  SphereRule r;
  r.dim = 2 * d;
  const int m = s.count();
  if (static_cast<double>(nTheta) * m * m > 2e7)
    fail(ErrorKind::InvalidInput, "stacked_sphere_rule: resolution exceeds 2e7 nodes");
  r.nodes.reserve(static_cast<size_t>(nTheta) * m * m * 2 * d);
  r.w.reserve(static_cast<size_t>(nTheta) * m * m);
  for (int t = 0; t < nTheta; ++t) {
    const double c = std::cos(g.x[t]), sn = std::sin(g.x[t]);
    const double wt = g.w[t] * std::pow(c * sn, d - 1);
    for (int a = 0; a < m; ++a) {
      for (int b = 0; b < m; ++b) {
        for (int k = 0; k < d; ++k) r.nodes.push_back(c * s.nodes[a * d + k]);
        for (int k = 0; k < d; ++k) r.nodes.push_back(sn * s.nodes[b * d + k]);
        r.w.push_back(wt * s.w[a] * s.w[b]);
      }
    }
  }
  return r;
}

}  // namespace triboltz
