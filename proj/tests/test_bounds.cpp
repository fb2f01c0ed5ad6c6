#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/bounds.hpp"
#include "triboltz/errors.hpp"

using namespace triboltz;

TEST(Bernoulli, BlowupSolvesTheOde) {
  const double C = 2.0, Ct = 0.5, q = 4.0, g = 1.0;
  for (double t : {0.05, 0.3, 1.0, 3.0}) {
    const double h = 1e-5 * t;
    const double y = bernoulli_blowup(t, C, Ct, q, g);
    const double dy = (bernoulli_blowup(t + h, C, Ct, q, g) - bernoulli_blowup(t - h, C, Ct, q, g)) / (2.0 * h);
    const double rhs = C * y - Ct * std::pow(y, 1.0 + g / (q - 2.0));
    EXPECT_NEAR(dy, rhs, 1e-6 * std::abs(rhs));
  }
  EXPECT_THROW(bernoulli_blowup(0.0, C, Ct, q, g), Error);
}

TEST(Bernoulli, FiniteBranchStartsAtDatumAndTendsToEquilibrium) {
  const double C = 1.5, Ct = 0.25, q = 6.0, g = 0.5;
  const double eq = std::pow(C / Ct, (q - 2.0) / g);
  EXPECT_NEAR(bernoulli_finite(0.0, 3.0, C, Ct, q, g), 3.0, 1e-12);
  EXPECT_NEAR(bernoulli_finite(200.0, 3.0, C, Ct, q, g), eq, 1e-8 * eq);
  EXPECT_NEAR(bernoulli_blowup(200.0, C, Ct, q, g), eq, 1e-8 * eq);
}

TEST(Bernoulli, BlowupBelowGenerationEnvelope) {
  for (double g : {0.5, 1.0, 2.0}) {
    const double C = 3.0, Ct = 0.7, q = 4.0;
    const double K = generation_constant(q, C, Ct, g);
    for (double t = 1e-4; t < 10.0; t *= 1.3)
      EXPECT_LE(bernoulli_blowup(t, C, Ct, q, g), K * std::max(1.0, std::pow(t, (2.0 - q) / g)) * (1.0 + 1e-12));
  }
}

TEST(Envelope, LogConstantMatchesDirectWhenFinite) {
  for (double C : {0.5, 3.0, 40.0})
    for (double g : {0.5, 1.0})
      EXPECT_NEAR(log_generation_constant(4.0, C, 1.3, g), std::log(generation_constant(4.0, C, 1.3, g)), 1e-12 * C);
  EXPECT_TRUE(std::isfinite(log_generation_constant(4.0, 1e8, 1.0, 1.0)));
  EXPECT_FALSE(std::isfinite(generation_constant(4.0, 1e8, 1.0, 1.0)));
}

TEST(Envelope, CombinedUsesSmallestExponentBelowOne) {
  OdiConstants o;
  o.q = 4.0;
  o.gamma2 = 1.0;
  o.gamma3 = 0.5;
  o.Cq = 2.0;
  o.CqTilde = 1.0;
  const EnvelopeSet e = generation_envelope(o, 1.0);
  EXPECT_NEAR(e.Kq, std::max(e.Kq2, e.Kq3), 0.0);
  EXPECT_NEAR(e.log_combined(0.1), std::log(e.combined(0.1)), 1e-12);
  EXPECT_NEAR(e.log_single(0.1, 3), std::log(e.single(0.1, 3)), 1e-12);
  EXPECT_NEAR(e.combined(0.1), e.Kq * std::pow(0.1, -2.0), 1e-9 * e.combined(0.1));
  EXPECT_NEAR(e.combined(5.0), e.Kq, 0.0);
  EXPECT_GE(e.Mq, e.Kq);
}

TEST(Envelope, RequiresAPositiveRate) {
  OdiConstants o;
  o.q = 4.0;
  o.Cq = o.CqTilde = 1.0;
  EXPECT_THROW(generation_envelope(o), Error);
}

TEST(WellPosed, RootAndMaximumOfL) {
  OdiConstants o;
  o.Cq = 3.0;
  o.CqTilde = 0.2;
  const WellPosedConstants w = wellposed_constants(o);
  EXPECT_NEAR(w.L(w.xStar), 0.0, 1e-12 * 2.0 * w.C * w.xStar);
  const double xm = std::pow(8.0 * w.C / (3.0 * w.Ct), 2.0);
  EXPECT_NEAR(w.L(xm), w.LStar, 1e-12 * w.LStar);
  EXPECT_LE(w.L(0.9 * xm), w.LStar);
  EXPECT_LE(w.L(1.1 * xm), w.LStar);
  EXPECT_DOUBLE_EQ(w.A, w.xStar + w.LStar);
}

TEST(InterpolationExponent, InUnitInterval) {
  for (double q : {3.0, 4.0, 6.0, 10.0})
    for (double g : {0.5, 1.0, 2.0}) {
      const double th = interpolation_exponent(q, g);
      EXPECT_GT(th, 0.0);
      EXPECT_LT(th, 1.0);
    }
}
