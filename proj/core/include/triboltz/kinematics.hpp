#pragma once

#include <array>

#include "triboltz/vector.hpp"

namespace triboltz {

struct BinaryPost {
  Vec v, v1;
};

struct TernaryPost {
  Vec v, v1, v2;
};

enum class TernaryMode { Central, Adjacent };

// v' = v + (w.u)w, v1' = v1 - (w.u)w with u = v1 - v.
BinaryPost binary_collide(const Vec& v, const Vec& v1, const Vec& omega);

// Central mode stacks u = (v1 - v, v2 - v); adjacent mode stacks u1 = (v - v1, v2 - v1)
// and tracks v1 as the pivot.
TernaryPost ternary_collide(const Vec& v, const Vec& v1, const Vec& v2, const Vec2& omega,
                            TernaryMode mode = TernaryMode::Central);

struct RelativeState {
  Vec u;             // v1 - v
  Vec2 U;            // (v1 - v, v2 - v)
  Vec2 U1;           // (v - v1, v2 - v1)
  double uTildeNorm = 0.0;
  Vec2 uBar;         // U / |u~|, on the ellipsoid
  Vec2 uBar1;        // U1 / |u~|
  bool uBarDefined = false;
};

RelativeState relative_state(const Vec& v, const Vec& v1, const Vec& v2);

// |u~|^2 = |v-v1|^2 + |v-v2|^2 + |v1-v2|^2.
double u_tilde_norm2(const Vec& v, const Vec& v1, const Vec& v2);

// |n1|^2 + |n2|^2 + |n1-n2|^2 - 1.
double ellipsoid_residual(const Vec2& nu);

// Unit 2d-vector (pa, pb) -> ((pa + pb/sqrt3)/sqrt2, (pa - pb/sqrt3)/sqrt2).
Vec2 ellipsoid_chart(const Vec2& p);
Vec2 ellipsoid_chart_inverse(const Vec2& nu);

struct ScatteringFrame {
  Vec V3;
  Vec vHat;          // V3 / |V3|, e1 when V3 = 0
  Vec2 sigma;        // (v1* - v*, v2* - v*) / |u~|
  double E3 = 0.0;
  double uTildeNorm = 0.0;
  double xi1 = 0.0;
  double xi1Prime = 0.0;
  double alpha = 0.0;
};

// Frame of the pre-collision triple. Without an impact direction the scattering
// direction is the pre-collision one, (v1 - v, v2 - v) / |u~|.
ScatteringFrame scattering_frame(const Vec& v, const Vec& v1, const Vec& v2);
ScatteringFrame scattering_frame(const Vec& v, const Vec& v1, const Vec& v2, const Vec2& omega);

// Scale-free scattering direction produced by impact direction omega for the
// normalized relative state uBar under the central map.
Vec2 scattering_direction(const Vec2& uBar, const Vec2& omega);

// (mu, mu1, mu2) with mu + mu1 + mu2 = 1.
std::array<double, 3> energy_fractions(double xi, double alpha, const Vec2& sigma, const Vec& vHat);

// Binary analog: post-collision energy fractions of E2 = <v>^2 + <v1>^2.
// sigma = u^ - 2(u^.w)w is the unit post-collision direction, beta = 1 - 2/E2.
std::array<double, 2> binary_energy_fractions(double xi, double beta, const Vec& sigma, const Vec& vHat);

}  // namespace triboltz
