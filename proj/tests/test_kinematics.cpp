#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/kinematics.hpp"
#include "triboltz/random.hpp"

using namespace triboltz;

namespace {

Vec gaussian(Rng& r, int d, double s) {
  std::normal_distribution<double> g(0.0, s);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = g(r);
  return v;
}

double max_abs(const Vec& a) {
  double m = 0.0;
  for (int i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

Vec2 impact(Rng& r, int d) { return uniform_sphere<kMaxStack>(r, 2 * d); }

}  // namespace

class KinematicsDim : public ::testing::TestWithParam<int> {};

TEST_P(KinematicsDim, BinaryConservesAndIsInvolution) {
  const int d = GetParam();
  Rng r = substream(11, 1, d);
  for (int n = 0; n < 5000; ++n) {
    const Vec v = gaussian(r, d, 3.0), v1 = gaussian(r, d, 3.0);
    const Vec w = uniform_sphere<kMaxDim>(r, d);
    const BinaryPost p = binary_collide(v, v1, w);
    const double e = norm2(v) + norm2(v1);
    EXPECT_LT(max_abs((p.v + p.v1) - (v + v1)), 1e-12 * (1.0 + std::sqrt(e)));
    EXPECT_NEAR(norm2(p.v) + norm2(p.v1), e, 1e-12 * e);
    const BinaryPost back = binary_collide(p.v, p.v1, w);
    EXPECT_LT(max_abs(back.v - v) + max_abs(back.v1 - v1), 1e-11 * (1.0 + std::sqrt(e)));
    EXPECT_NEAR(dot(p.v1 - p.v, w), -dot(v1 - v, w), 1e-12 * (1.0 + std::sqrt(e)));
  }
}

TEST_P(KinematicsDim, TernaryConservesAndIsInvolution) {
  const int d = GetParam();
  Rng r = substream(11, 2, d);
  for (TernaryMode mode : {TernaryMode::Central, TernaryMode::Adjacent}) {
    for (int n = 0; n < 5000; ++n) {
      const Vec v = gaussian(r, d, 2.0), v1 = gaussian(r, d, 2.0), v2 = gaussian(r, d, 2.0);
      const Vec2 w = impact(r, d);
      const TernaryPost p = ternary_collide(v, v1, v2, w, mode);
      const double e = norm2(v) + norm2(v1) + norm2(v2);
      const double scale = 1.0 + std::sqrt(e);
      EXPECT_LT(max_abs((p.v + p.v1 + p.v2) - (v + v1 + v2)), 1e-12 * scale);
      EXPECT_NEAR(norm2(p.v) + norm2(p.v1) + norm2(p.v2), e, 1e-12 * e);
      const TernaryPost back = ternary_collide(p.v, p.v1, p.v2, w, mode);
      EXPECT_LT(max_abs(back.v - v) + max_abs(back.v1 - v1) + max_abs(back.v2 - v2), 1e-10 * scale);
    }
  }
}

TEST_P(KinematicsDim, CentralMicroReversibility) {
  const int d = GetParam();
  Rng r = substream(11, 3, d);
  for (int n = 0; n < 2000; ++n) {
    const Vec v = gaussian(r, d, 1.0), v1 = gaussian(r, d, 1.0), v2 = gaussian(r, d, 1.0);
    const Vec2 w = impact(r, d);
    const TernaryPost p = ternary_collide(v, v1, v2, w);
    EXPECT_NEAR(dot(relative_state(p.v, p.v1, p.v2).U, w), -dot(relative_state(v, v1, v2).U, w), 1e-12);
  }
}

TEST_P(KinematicsDim, EnergyFractionsMatchCollisionLaw) {
  const int d = GetParam();
  Rng r = substream(11, 4, d);
  for (int n = 0; n < 2000; ++n) {
    const Vec v = gaussian(r, d, 1.5), v1 = gaussian(r, d, 1.5), v2 = gaussian(r, d, 1.5);
    const Vec2 w = impact(r, d);
    const ScatteringFrame f = scattering_frame(v, v1, v2, w);
    const auto mu = energy_fractions(f.xi1, f.alpha, f.sigma, f.vHat);
    EXPECT_NEAR(mu[0] + mu[1] + mu[2], 1.0, 1e-12);
    const TernaryPost p = ternary_collide(v, v1, v2, w);
    const Vec post[3] = {p.v, p.v1, p.v2};
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(mu[i] * f.E3, 1.0 + norm2(post[i]), 1e-9 * f.E3);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, KinematicsDim, ::testing::Values(2, 3));

TEST(Kinematics, FrameWithoutImpactUsesPreCollisionDirection) {
  const Vec v{0.3, -1.0}, v1{2.0, 0.5}, v2{-1.0, 1.5};
  const ScatteringFrame f = scattering_frame(v, v1, v2);
  const double n = std::sqrt(u_tilde_norm2(v, v1, v2));
  EXPECT_NEAR(f.sigma[0], (v1[0] - v[0]) / n, 1e-15);
  EXPECT_NEAR(f.sigma[3], (v2[1] - v[1]) / n, 1e-15);
  EXPECT_NEAR(ellipsoid_residual(f.sigma), 0.0, 1e-14);
}

TEST(Kinematics, UTildeNormIdentity) {
  const Vec v{1.0, 0.0}, v1{0.0, 1.0}, v2{0.0, 0.0};
  EXPECT_DOUBLE_EQ(u_tilde_norm2(v, v1, v2), 2.0 + 1.0 + 1.0);
}

TEST(Kinematics, EllipsoidChartRoundTrip) {
  Rng r = substream(11, 5, 0);
  for (int d : {2, 3}) {
    for (int n = 0; n < 1000; ++n) {
      const Vec2 p = uniform_sphere<kMaxStack>(r, 2 * d);
      const Vec2 nu = ellipsoid_chart(p);
      EXPECT_NEAR(ellipsoid_residual(nu), 0.0, 1e-14);
      const Vec2 back = ellipsoid_chart_inverse(nu);
      for (int i = 0; i < 2 * d; ++i) EXPECT_NEAR(back[i], p[i], 1e-14);
    }
  }
}

TEST(Kinematics, ScatteringDirectionStaysOnEllipsoid) {
  Rng r = substream(11, 6, 0);
  for (int n = 0; n < 1000; ++n) {
    const Vec2 uBar = ellipsoid_chart(uniform_sphere<kMaxStack>(r, 4));
    const Vec2 s = scattering_direction(uBar, uniform_sphere<kMaxStack>(r, 4));
    EXPECT_NEAR(ellipsoid_residual(s), 0.0, 1e-12);
  }
}

TEST(Kinematics, BinaryEnergyFractionsSumToOne) {
  Rng r = substream(11, 7, 0);
  for (int n = 0; n < 1000; ++n) {
    const Vec s = uniform_sphere<kMaxDim>(r, 3), vh = uniform_sphere<kMaxDim>(r, 3);
    const double beta = uniform01(r), xi = uniform01(r);
    const auto nu = binary_energy_fractions(xi, beta, s, vh);
    EXPECT_NEAR(nu[0] + nu[1], 1.0, 1e-12);
    EXPECT_GE(nu[0], -1e-12);
    EXPECT_GE(nu[1], -1e-12);
  }
}
