#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/errors.hpp"
#include "triboltz/kernels.hpp"
#include "triboltz/random.hpp"

using namespace triboltz;

TEST(CutoffNorm, ClosedFormsForConstantProfiles) {
  KernelConfig k2, k3;
  k3.d = 3;
  EXPECT_NEAR(cutoff_norm(k2, Arity::Binary).value, 2.0 * M_PI, 1e-8);
  EXPECT_NEAR(cutoff_norm(k3, Arity::Binary).value, 4.0 * M_PI, 1e-8);
  EXPECT_NEAR(cutoff_norm(k2, Arity::Ternary).value, 2.0 * M_PI * M_PI, 1e-8);
  EXPECT_NEAR(cutoff_norm(k3, Arity::Ternary).value, std::pow(M_PI, 3), 1e-8);
}

TEST(CutoffNorm, ConstantProfileQuadratureAgreesWithClosedForm) {
  KernelConfig k;
  const CutoffNorm n = cutoff_norm(k, Arity::Ternary);
  EXPECT_LT(n.errorEstimate, 1e-8);
}

TEST(CutoffNorm, TernaryProfileAgainstMonteCarlo) {
  KernelConfig k;
  k.phi = {1.0, 0.4, 2.0};
  const double q = cutoff_norm(k, Arity::Ternary).value;
  Rng r = substream(5, 1, 0);
  const int n = 400000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec2 w = uniform_sphere<kMaxStack>(r, 4);
    const double f = k.phi(w[0] * w[2] + w[1] * w[3]);
    s += f;
    s2 += f * f;
  }
  const double mean = s / n, se = std::sqrt((s2 / n - mean * mean) / n);
  const double area = 2.0 * M_PI * M_PI;
  EXPECT_NEAR(q, area * mean, 4.0 * area * se);
}

TEST(CutoffNorm, BinaryProfileExact) {
  KernelConfig k;
  k.b2 = {1.0, 0.0, 3.0};
  // int_0^{2pi} 1 + 3 cos^2 = 2 pi + 3 pi.
  EXPECT_NEAR(cutoff_norm(k, Arity::Binary).value, 5.0 * M_PI, 1e-10);
}

TEST(Profile, SupAndInf) {
  const Profile p{1.0, -1.0, 2.0};
  EXPECT_DOUBLE_EQ(p.sup(0.5), p(-0.5));
  EXPECT_NEAR(p.inf(0.5), p(0.25), 1e-15);
}

TEST(KernelConfig, RejectsViolatedHypotheses) {
  auto message = [](KernelConfig k) {
    try {
      k.validate();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Config);
      return std::string(e.what());
    }
    return std::string();
  };
  KernelConfig k;
  k.gamma2 = 3.0;
  EXPECT_NE(message(k).find("gamma_2 in [0,2]"), std::string::npos);
  k = {};
  k.gamma2 = k.gamma3 = 0.0;
  EXPECT_NE(message(k).find("max{gamma_2, gamma_3} > 0"), std::string::npos);
  k = {};
  k.b2 = {1.0, 0.5, 0.0};
  EXPECT_NE(message(k).find("even"), std::string::npos);
  k = {};
  k.d = 4;
  EXPECT_NE(message(k).find("2 or 3"), std::string::npos);
  EXPECT_TRUE(message(KernelConfig{}).empty());
}

TEST(PotentialEnvelope, BracketsThePotential) {
  Rng r = substream(5, 2, 0);
  std::normal_distribution<double> g(0.0, 4.0);
  for (double gamma : {0.0, 0.5, 1.0, 2.0}) {
    KernelConfig k;
    k.gamma2 = k.gamma3 = gamma;
    for (int n = 0; n < 2000; ++n) {
      Vec v(2), v1(2), v2(2);
      for (int i = 0; i < 2; ++i) {
        v[i] = g(r);
        v1[i] = g(r);
        v2[i] = g(r);
      }
      const Envelope b = potential_envelope(k, v, v1, {0, 1});
      EXPECT_LE(b.lower, b.value * (1.0 + 1e-12) + 1e-12);
      EXPECT_LE(b.value, b.upper * (1.0 + 1e-12));
      const Envelope t = potential_envelope(k, v, v1, v2, {2, 0, 1});
      EXPECT_LE(t.lower, t.value * (1.0 + 1e-12) + 1e-12);
      EXPECT_LE(t.value, t.upper * (1.0 + 1e-12));
    }
  }
}

TEST(CrossSection, BinaryScalesWithGamma) {
  KernelConfig k;
  k.gamma2 = 1.5;
  const Vec u{3.0, 4.0}, w{1.0, 0.0};
  EXPECT_NEAR(binary_cross_section(k, u, w), std::pow(5.0, 1.5), 1e-12);
  EXPECT_THROW(binary_cross_section(k, Vec{0.0, 0.0}, w), Error);
}
