#include "triboltz/kinematics.hpp"

#include <cmath>
#include <string>

#include "triboltz/errors.hpp"

namespace triboltz {

namespace {

void require_dim(const Vec& a, const Vec& b, const char* op) {
  if (a.size() != b.size() || a.size() < 2)
    fail(ErrorKind::InvalidInput, std::string(op) + ": dimension mismatch");
}

constexpr double kSqrt2 = 1.4142135623730950488;
constexpr double kSqrt3 = 1.7320508075688772935;

}  // namespace

BinaryPost binary_collide(const Vec& v, const Vec& v1, const Vec& omega) {
  require_dim(v, v1, "binary_collide");
  require_dim(v, omega, "binary_collide");
  const Vec u = v1 - v;
  const double c = dot(omega, u);
  return {v + c * omega, v1 - c * omega};
}

TernaryPost ternary_collide(const Vec& v, const Vec& v1, const Vec& v2, const Vec2& omega,
                            TernaryMode mode) {
  require_dim(v, v1, "ternary_collide");
  require_dim(v, v2, "ternary_collide");
  const int d = v.size();
  if (omega.size() != 2 * d) fail(ErrorKind::InvalidInput, "ternary_collide: dimension mismatch");
  const Vec w1 = head(omega, d), w2 = tail(omega, d);
  const double den = 1.0 + dot(w1, w2);
  if (mode == TernaryMode::Central) {
    const double c = (dot(v1 - v, w1) + dot(v2 - v, w2)) / den;
    return {v + c * (w1 + w2), v1 - c * w1, v2 - c * w2};
  }
  const double c = (dot(v - v1, w1) + dot(v2 - v1, w2)) / den;
  return {v - c * w1, v1 + c * (w1 + w2), v2 - c * w2};
}

double u_tilde_norm2(const Vec& v, const Vec& v1, const Vec& v2) {
  return norm2(v - v1) + norm2(v - v2) + norm2(v1 - v2);
}

RelativeState relative_state(const Vec& v, const Vec& v1, const Vec& v2) {
  require_dim(v, v1, "relative_state");
  require_dim(v, v2, "relative_state");
  RelativeState r;
  r.u = v1 - v;
  r.U = stack(v1 - v, v2 - v);
  r.U1 = stack(v - v1, v2 - v1);
  r.uTildeNorm = std::sqrt(u_tilde_norm2(v, v1, v2));
  if (r.uTildeNorm > 0.0) {
    r.uBar = r.U * (1.0 / r.uTildeNorm);
    r.uBar1 = r.U1 * (1.0 / r.uTildeNorm);
    r.uBarDefined = true;
  } else {
    r.uBar = Vec2(2 * v.size());
    r.uBar1 = Vec2(2 * v.size());
  }
  return r;
}

double ellipsoid_residual(const Vec2& nu) {
  const int d = nu.size() / 2;
  const Vec a = head(nu, d), b = tail(nu, d);
  return norm2(a) + norm2(b) + norm2(a - b) - 1.0;
}

Vec2 ellipsoid_chart(const Vec2& p) {
  if (p.size() % 2 != 0 || p.size() < 4) fail(ErrorKind::InvalidInput, "ellipsoid_chart: odd length");
  if (std::abs(norm(p) - 1.0) > 1e-10) fail(ErrorKind::InvalidInput, "ellipsoid_chart: input is not a unit vector");
  const int d = p.size() / 2;
  Vec2 r(2 * d);
  for (int i = 0; i < d; ++i) {
    const double a = p[i], b = p[d + i] / kSqrt3;
    r[i] = (a + b) / kSqrt2;
    r[d + i] = (a - b) / kSqrt2;
  }
  return r;
}

Vec2 ellipsoid_chart_inverse(const Vec2& nu) {
  const int d = nu.size() / 2;
  Vec2 r(2 * d);
  for (int i = 0; i < d; ++i) {
    r[i] = (nu[i] + nu[d + i]) / kSqrt2;
    r[d + i] = kSqrt3 * (nu[i] - nu[d + i]) / kSqrt2;
  }
  return r;
}

namespace {

ScatteringFrame frame_core(const Vec& v, const Vec& v1, const Vec& v2) {
  const int d = v.size();
  ScatteringFrame f;
  f.V3 = (v + v1 + v2) * (1.0 / 3.0);
  f.E3 = bracket2(v) + bracket2(v1) + bracket2(v2);
  f.uTildeNorm = std::sqrt(u_tilde_norm2(v, v1, v2));
  if (!(f.uTildeNorm > 0.0))
    fail(ErrorKind::Degenerate, "scattering_frame: all three velocities coincide");
  const double vn = norm(f.V3);
  f.vHat = Vec(d);
  if (vn > 0.0) {
    f.vHat = f.V3 * (1.0 / vn);
  } else {
    f.vHat[0] = 1.0;
  }
  f.xi1 = f.uTildeNorm * f.uTildeNorm / (3.0 * f.E3);
  f.xi1Prime = 2.0 * f.uTildeNorm * vn / f.E3;
  f.alpha = 1.0 - 3.0 / f.E3;
  return f;
}

}  // namespace

ScatteringFrame scattering_frame(const Vec& v, const Vec& v1, const Vec& v2) {
  require_dim(v, v1, "scattering_frame");
  require_dim(v, v2, "scattering_frame");
  ScatteringFrame f = frame_core(v, v1, v2);
  f.sigma = stack(v1 - v, v2 - v) * (1.0 / f.uTildeNorm);
  return f;
}

ScatteringFrame scattering_frame(const Vec& v, const Vec& v1, const Vec& v2, const Vec2& omega) {
  require_dim(v, v1, "scattering_frame");
  require_dim(v, v2, "scattering_frame");
  ScatteringFrame f = frame_core(v, v1, v2);
  const TernaryPost p = ternary_collide(v, v1, v2, omega, TernaryMode::Central);
  f.sigma = stack(p.v1 - p.v, p.v2 - p.v) * (1.0 / f.uTildeNorm);
  return f;
}

Vec2 scattering_direction(const Vec2& uBar, const Vec2& omega) {
  const int d = uBar.size() / 2;
  const Vec w1 = head(omega, d), w2 = tail(omega, d);
  const double c = dot(uBar, omega) / (1.0 + dot(w1, w2));
  const Vec s1 = head(uBar, d) - c * (2.0 * w1 + w2);
  const Vec s2 = tail(uBar, d) - c * (w1 + 2.0 * w2);
  return stack(s1, s2);
}

std::array<double, 3> energy_fractions(double xi, double alpha, const Vec2& sigma, const Vec& vHat) {
  if (!(xi >= 0.0 && xi <= 1.0)) fail(ErrorKind::InvalidInput, "energy_fractions: xi outside [0,1]");
  if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidInput, "energy_fractions: alpha outside [0,1]");
  const int d = vHat.size();
  const Vec s1 = head(sigma, d), s2 = tail(sigma, d);
  const double root = 2.0 * std::sqrt(std::max(0.0, alpha * xi - xi * xi));
  const Vec a = s1 + s2, b = 2.0 * s1 - s2, c = 2.0 * s2 - s1;
  return {(1.0 - root * dot(vHat, a) + xi * (norm2(a) - 1.0)) / 3.0,
          (1.0 + root * dot(vHat, b) + xi * (norm2(b) - 1.0)) / 3.0,
          (1.0 + root * dot(vHat, c) + xi * (norm2(c) - 1.0)) / 3.0};
}

std::array<double, 2> binary_energy_fractions(double xi, double beta, const Vec& sigma, const Vec& vHat) {
  if (!(xi >= 0.0 && xi <= 1.0)) fail(ErrorKind::InvalidInput, "binary_energy_fractions: xi outside [0,1]");
  if (!(beta >= 0.0 && beta <= 1.0)) fail(ErrorKind::InvalidInput, "binary_energy_fractions: beta outside [0,1]");
  const double c = std::sqrt(std::max(0.0, beta * xi - xi * xi)) * dot(vHat, sigma);
  return {0.5 - c, 0.5 + c};
}

}  // namespace triboltz
