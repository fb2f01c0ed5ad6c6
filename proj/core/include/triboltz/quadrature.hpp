#pragma once

#include <vector>

#include "triboltz/vector.hpp"

namespace triboltz {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre on [-1, 1].
Rule1D gauss_legendre(int n);
// Gauss-Legendre mapped to [a, b].
Rule1D gauss_legendre(int n, double a, double b);
// Chebyshev-Gauss (first kind): integrates g(z)/sqrt(1-z^2) on [-1, 1].
Rule1D chebyshev_gauss(int n);

// Surface measure of the unit sphere S^{n-1} in R^n.
double sphere_area(int n);

// Flat node set on a sphere: node i occupies [i*dim, (i+1)*dim).
struct SphereRule {
  int dim = 0;
  std::vector<double> nodes;
  std::vector<double> w;
  int count() const { return static_cast<int>(w.size()); }
};

// Rule on S^{d-1}, d in {2, 3}. Trapezoid on the circle; Gauss-Legendre in
// the polar cosine times trapezoid in azimuth on S^2.
SphereRule sphere_rule(int d, int n);

// Product rule on S^{2d-1} via (w1, w2) = (cos t s1, sin t s2) with
// weight cos^{d-1} t sin^{d-1} t on [0, pi/2].
SphereRule stacked_sphere_rule(int d, int nTheta, int nSphere);

}  // namespace triboltz
