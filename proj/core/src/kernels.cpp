#include "triboltz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "triboltz/errors.hpp"
#include "triboltz/quadrature.hpp"

namespace triboltz {

namespace {

double ipow(double x, double p) { return p == 0.0 ? 1.0 : std::pow(x, p); }

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double Profile::sup(double r) const {
  double m = std::max((*this)(-r), (*this)(r));
  if (c2 != 0.0) {
    const double x = -c1 / (2.0 * c2);
    if (x > -r && x < r) m = std::max(m, (*this)(x));
  }
  return m;
}

double Profile::inf(double r) const {
  double m = std::min((*this)(-r), (*this)(r));
  if (c2 != 0.0) {
    const double x = -c1 / (2.0 * c2);
    if (x > -r && x < r) m = std::min(m, (*this)(x));
  }
  return m;
}

double KernelConfig::b3(double x, double y) const { return ipow(std::abs(x), theta3) * phi(y); }

void KernelConfig::validate() const {
  if (d != 2 && d != 3)
    fail(ErrorKind::Config, "d = " + std::to_string(d) + " unsupported: velocity dimension must be 2 or 3");
  if (!(gamma2 >= 0.0 && gamma2 <= 2.0))
    fail(ErrorKind::Config, "gamma2 = " + num(gamma2) + " violates hypothesis gamma_2 in [0,2] of the binary cross-section");
  if (!(gamma3 >= 0.0 && gamma3 <= 2.0))
    fail(ErrorKind::Config, "gamma3 = " + num(gamma3) + " violates hypothesis gamma_3 in [0,2] of the ternary cross-section");
  if (!(gamma() > 0.0))
    fail(ErrorKind::Config, "gamma2 = gamma3 = 0 violates hypothesis gamma = max{gamma_2, gamma_3} > 0");
  if (!(theta3 >= 0.0))
    fail(ErrorKind::Config, "theta3 = " + num(theta3) + " violates hypothesis theta_3 >= 0 of the ternary cross-section");
  if (b2.c1 != 0.0)
    fail(ErrorKind::Config, "b2 profile must be even: b_2(z) = b_2(-z)");
  if (b2.inf(1.0) < 0.0)
    fail(ErrorKind::Config, "b2 profile must be nonnegative on [-1,1]");
  if (phi.inf(0.5) < 0.0)
    fail(ErrorKind::Config, "phi profile must be nonnegative on [-1/2,1/2]");
  if (!(b2.sup(1.0) > 0.0))
    fail(ErrorKind::Config, "b2 profile vanishes identically: cutoff norm ||b_2|| must be positive");
  if (!(phi.sup(0.5) > 0.0))
    fail(ErrorKind::Config, "phi profile vanishes identically: cutoff norm ||b_3|| must be positive");
}

double binary_cross_section(const KernelConfig& cfg, const Vec& u, const Vec& omega) {
  const double un = norm(u);
  if (!(un > 0.0)) fail(ErrorKind::Degenerate, "binary_cross_section: zero relative velocity");
  return ipow(un, cfg.gamma2) * cfg.b2(dot(u, omega) / un);
}

double ternary_cross_section(const KernelConfig& cfg, const RelativeState& rs, const Vec2& omega) {
  const double un = norm(rs.U);
  if (!(un > 0.0) || !rs.uBarDefined) fail(ErrorKind::Degenerate, "ternary_cross_section: zero relative velocity");
  const int d = omega.size() / 2;
  const double w12 = dot(head(omega, d), tail(omega, d));
  return ipow(rs.uTildeNorm, cfg.gamma3 - cfg.theta3) * ipow(un, cfg.theta3) *
         cfg.b3(dot(rs.U, omega) / un, w12);
}

double cross_section(const KernelConfig& cfg, Arity arity, const RelativeState& rs, const Vec2& dir) {
  if (arity == Arity::Binary) return binary_cross_section(cfg, rs.u, head(dir, rs.u.size()));
  return ternary_cross_section(cfg, rs, dir);
}

double ternary_angular_integral(const KernelConfig& cfg, const Vec2& direction, int nTheta, int nSphere) {
  const int d = cfg.d;
  const SphereRule r = stacked_sphere_rule(d, nTheta, nSphere);
  const int n = 2 * d;
  double s = 0.0;
  for (int i = 0; i < r.count(); ++i) {
    const double* w = &r.nodes[static_cast<size_t>(i) * n];
    double x = 0.0, y = 0.0;
    for (int k = 0; k < n; ++k) x += direction[k] * w[k];
    for (int k = 0; k < d; ++k) y += w[k] * w[d + k];
    s += r.w[i] * cfg.b3(x, y);
  }
  return s;
}

namespace {

double binary_norm(const KernelConfig& cfg, int n) {
  const int d = cfg.d;
  const double area = sphere_area(d - 1);
  double s = 0.0;
  if (d == 2) {
    const Rule1D r = chebyshev_gauss(n);
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * cfg.b2(r.x[i]);
  } else {
    const Rule1D r = gauss_legendre(n);
    for (size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * cfg.b2(r.x[i]) * std::pow(1.0 - r.x[i] * r.x[i], 0.5 * (d - 3));
  }
  return area * s;
}

Vec2 reference_direction(int d, int which) {
  Vec2 e(2 * d);
  switch (which) {
    case 0:
      e[0] = 1.0;
      break;
    case 1:
      e[d] = 1.0;
      break;
    case 2:
      e[0] = e[d] = std::sqrt(0.5);
      break;
    default:
      e[0] = std::sqrt(0.5);
      e[d + 1] = std::sqrt(0.5);
      break;
  }
  return e;
}

}  // namespace

CutoffResolution CutoffResolution::resolved(int d) const {
  CutoffResolution r = *this;
  if (r.ternaryTheta <= 0) r.ternaryTheta = d == 3 ? 16 : 48;
  if (r.ternarySphere <= 0) r.ternarySphere = d == 3 ? 16 : 48;
  return r;
}

CutoffNorm cutoff_norm(const KernelConfig& cfg, Arity arity, const CutoffResolution& resolution) {
  const CutoffResolution res = resolution.resolved(cfg.d);
  CutoffNorm out;
  if (arity == Arity::Binary) {
    out.value = binary_norm(cfg, res.binaryNodes);
    out.errorEstimate = std::abs(out.value - binary_norm(cfg, res.binaryNodes / 2));
    return out;
  }
  const int d = cfg.d;
  if (cfg.phi.constant()) {
    // Closed form: |S^{2d-2}| * B((theta+1)/2, d - 1/2) integrates |z|^theta (1-z^2)^{d-3/2}.
    const double beta = std::beta(0.5 * (cfg.theta3 + 1.0), d - 0.5);
    out.value = cfg.phi.c0 * sphere_area(2 * d - 1) * beta;
    const double q = ternary_angular_integral(cfg, reference_direction(d, 0), res.ternaryTheta / 2, res.ternarySphere / 2);
    out.errorEstimate = std::abs(q - out.value);
    out.directionVariation = 0.0;
    return out;
  }
  const double q0 = ternary_angular_integral(cfg, reference_direction(d, 0), res.ternaryTheta, res.ternarySphere);
  const double qc = ternary_angular_integral(cfg, reference_direction(d, 0), res.ternaryTheta / 2, res.ternarySphere / 2);
  double lo = q0, hi = q0;
  for (int k = 1; k < 4; ++k) {
    const double qk = ternary_angular_integral(cfg, reference_direction(d, k), res.ternaryTheta, res.ternarySphere);
    lo = std::min(lo, qk);
    hi = std::max(hi, qk);
  }
  out.value = q0;
  out.errorEstimate = std::abs(q0 - qc);
  out.directionVariation = hi - lo;
  if (!std::isfinite(out.value) || out.value <= 0.0)
    fail(ErrorKind::Numerical, "cutoff_norm: ternary quadrature produced a nonpositive value");
  return out;
}

KernelNorms kernel_norms(const KernelConfig& cfg) {
  return {cutoff_norm(cfg, Arity::Binary).value, cutoff_norm(cfg, Arity::Ternary).value};
}

double c_gamma2(double g) { return std::max(1.0, std::pow(2.0, g - 1.0)); }
double c_gamma3(double g) { return std::pow(2.0, g) * std::max(1.0, std::pow(3.0, g - 1.0)); }

Envelope potential_envelope(const KernelConfig& cfg, const Vec& v, const Vec& v1, std::array<int, 2> perm) {
  const double g = cfg.gamma2;
  const double b[2] = {bracket(v), bracket(v1)};
  Envelope e;
  e.value = ipow(norm(v1 - v), g);
  e.upper = c_gamma2(g) * (ipow(b[0], g) + ipow(b[1], g));
  e.lower = std::pow(2.0, -0.5 * g) * ipow(b[perm[0]], g) - ipow(b[perm[1]], g);
  return e;
}

Envelope potential_envelope(const KernelConfig& cfg, const Vec& v, const Vec& v1, const Vec& v2,
                            std::array<int, 3> perm) {
  const double g = cfg.gamma3, th = cfg.theta3;
  const double b[3] = {bracket(v), bracket(v1), bracket(v2)};
  const double ut = std::sqrt(u_tilde_norm2(v, v1, v2));
  const double un = norm(stack(v1 - v, v2 - v));
  Envelope e;
  e.value = ipow(ut, g - th) * ipow(un, th);
  if (ut == 0.0) e.value = (g == 0.0) ? 1.0 : 0.0;
  e.upper = c_gamma3(g) * (ipow(b[0], g) + ipow(b[1], g) + ipow(b[2], g));
  e.lower = std::pow(3.0, -0.5 * th) *
            (std::pow(2.0 / 3.0, 0.5 * g) * ipow(b[perm[0]], g) - ipow(b[perm[1]], g) - ipow(b[perm[2]], g));
  return e;
}

}  // namespace triboltz
