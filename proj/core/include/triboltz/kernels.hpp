#pragma once

#include <array>
#include <string>

#include "triboltz/kinematics.hpp"
#include "triboltz/vector.hpp"

namespace triboltz {

enum class Arity { Binary, Ternary };

// Angular profile c0 + c1 x + c2 x^2. Binary profiles must be even (c1 = 0).
struct Profile {
  double c0 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;

  double operator()(double x) const { return c0 + x * (c1 + x * c2); }
  bool constant() const { return c1 == 0.0 && c2 == 0.0; }
  // Supremum over [-r, r].
  double sup(double r) const;
  // Infimum over [-r, r].
  double inf(double r) const;
};

struct KernelConfig {
  int d = 2;
  double gamma2 = 1.0;
  double gamma3 = 1.0;
  double theta3 = 0.0;
  Profile b2;
  Profile phi;

  double gamma() const { return gamma2 > gamma3 ? gamma2 : gamma3; }
  // b3(x, y) = |x|^theta3 phi(y).
  double b3(double x, double y) const;
  double b2_sup() const { return b2.sup(1.0); }
  double b3_sup() const { return phi.sup(0.5); }
  // Throws Config naming the violated hypothesis.
  void validate() const;
};

struct KernelNorms {
  double b2 = 0.0;
  double b3 = 0.0;
};

// |u|^gamma2 b2(u^.w).
double binary_cross_section(const KernelConfig& cfg, const Vec& u, const Vec& omega);
// |u~|^(gamma3-theta3) |U|^theta3 b3(U^.w, w1.w2).
double ternary_cross_section(const KernelConfig& cfg, const RelativeState& rs, const Vec2& omega);
// Arity dispatch; for binary the first d components of dir are used with rs.u.
double cross_section(const KernelConfig& cfg, Arity arity, const RelativeState& rs, const Vec2& dir);

struct CutoffNorm {
  double value = 0.0;
  double errorEstimate = 0.0;
  double directionVariation = 0.0;
};

// Zero ternary resolutions select dimension defaults (d = 2: 48 x 48, d = 3: 16 x 16).
struct CutoffResolution {
  int binaryNodes = 256;
  int ternaryTheta = 0;
  int ternarySphere = 0;
  CutoffResolution resolved(int d) const;
};

CutoffNorm cutoff_norm(const KernelConfig& cfg, Arity arity, const CutoffResolution& res = {});
KernelNorms kernel_norms(const KernelConfig& cfg);

// Reference direction integral of b3(n.w, w1.w2) over S^{2d-1} by product quadrature.
double ternary_angular_integral(const KernelConfig& cfg, const Vec2& direction, int nTheta, int nSphere);

struct Envelope {
  double lower = 0.0;
  double value = 0.0;
  double upper = 0.0;
};

double c_gamma2(double gamma2);
double c_gamma3(double gamma3);

// perm[0] is the index singled out by the lower bound.
Envelope potential_envelope(const KernelConfig& cfg, const Vec& v, const Vec& v1, std::array<int, 2> perm);
Envelope potential_envelope(const KernelConfig& cfg, const Vec& v, const Vec& v1, const Vec& v2,
                            std::array<int, 3> perm);

}  // namespace triboltz
