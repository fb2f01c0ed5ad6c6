#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/errors.hpp"
#include "triboltz/moments.hpp"
#include "triboltz/random.hpp"

using namespace triboltz;

namespace {

Ensemble random_ensemble(std::uint64_t seed, int d, int n) {
  Rng r = substream(seed, 9, 0);
  std::normal_distribution<double> g(0.0, 1.5);
  std::vector<double> flat(static_cast<size_t>(n) * d);
  for (double& x : flat) x = g(r);
  return Ensemble(d, flat, 1.0 / n);
}

}  // namespace

TEST(Moments, KnownEnsemble) {
  const Ensemble e(2, {3.0, 4.0, 0.0, 0.0}, 0.5);
  EXPECT_DOUBLE_EQ(moment(e, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(moment(e, 2.0), 0.5 * (26.0 + 1.0));
  EXPECT_NEAR(moment(e, 3.0), 0.5 * (std::pow(26.0, 1.5) + 1.0), 1e-12);
  const MomentVector mv = moments(e, {2.0, 4.0});
  EXPECT_DOUBLE_EQ(mv.at(4.0), 0.5 * (26.0 * 26.0 + 1.0));
  EXPECT_THROW(mv.at(3.0), Error);
}

TEST(Moments, InterpolationHolds) {
  Rng r = substream(4, 1, 0);
  const Ensemble e = random_ensemble(4, 3, 2000);
  for (int n = 0; n < 2000; ++n) {
    const double s1 = 8.0 * uniform01(r), s2 = s1 + 8.0 * uniform01(r);
    const double s = s1 + (s2 - s1) * uniform01(r);
    EXPECT_LE(moment(e, s), interpolation_bound(s1, moment(e, s1), s2, moment(e, s2), s) * (1.0 + 1e-12));
  }
}

TEST(Moments, ProductOfMomentsOrdering) {
  const Ensemble e = random_ensemble(5, 2, 2000);
  Rng r = substream(4, 2, 0);
  for (int n = 0; n < 1000; ++n) {
    const double k = 4.0 * uniform01(r), l = k + 4.0 * uniform01(r), i = k + (l - k) * uniform01(r);
    const ProductWitness w = product_order_bound(e, i, k + l - i, k, l);
    EXPECT_LE(w.lhs, w.rhs * (1.0 + 1e-12));
  }
}

TEST(PolynomialConstants, FrozenValues) {
  EXPECT_DOUBLE_EQ(binomial_constant(2.0), 2.0);
  EXPECT_DOUBLE_EQ(binomial_constant(6.0), 48.0);
  EXPECT_DOUBLE_EQ(trinomial_constant(3.0), 6.0);
  EXPECT_DOUBLE_EQ(trinomial_constant(6.0), 48.0 + 15.0 * 9.0);
  EXPECT_DOUBLE_EQ(trinomial_constant(6.0, TrinomialConstant::Printed), 48.0 + 15.0 * 4.0);
  for (double p : {2.5, 3.0, 3.7, 4.0})
    EXPECT_DOUBLE_EQ(trinomial_constant(p), trinomial_constant(p, TrinomialConstant::Printed));
}

TEST(PolynomialConstants, PrintedTrinomialFailsAtEqualArguments) {
  const GapBound printed = polynomial_gap_bound(10.0, 1.0, 1.0, 1.0, TrinomialConstant::Printed);
  EXPECT_DOUBLE_EQ(printed.gap, std::pow(3.0, 10) - 3.0);
  EXPECT_GT(printed.gap, printed.bound);
  const GapBound fixed = polynomial_gap_bound(10.0, 1.0, 1.0, 1.0);
  EXPECT_LE(fixed.gap, fixed.bound);
}

TEST(PolynomialConstants, GapBoundsHoldOnRandomArguments) {
  Rng r = substream(4, 3, 0);
  for (int n = 0; n < 20000; ++n) {
    const double p = 2.0 + 10.0 * uniform01(r);
    const double x = std::exp(6.0 * uniform01(r) - 3.0), y = std::exp(6.0 * uniform01(r) - 3.0);
    const double z = std::exp(6.0 * uniform01(r) - 3.0);
    for (const GapBound& g : {polynomial_gap_bound(p, x, y), polynomial_gap_bound(p, x, y, z), power_sum_bound(p, x, y),
                              power_sum_bound(p, x, y, z)})
      EXPECT_LE(g.gap, g.bound * (1.0 + 1e-12)) << "p=" << p << " x=" << x << " y=" << y << " z=" << z;
  }
}

TEST(PolynomialConstants, DomainChecks) {
  EXPECT_THROW(polynomial_gap_bound(1.0, 1.0, 1.0), Error);
  EXPECT_THROW(polynomial_gap_bound(2.0, 1.0, 1.0, 1.0), Error);
}

TEST(PsiApproximation, MonotoneInCutoffAndBelowPower) {
  for (double k : {3.0, 4.0, 6.0}) {
    for (double x : {0.5, 2.0, 10.0, 100.0}) {
      double prev = 0.0;
      for (int n : {1, 2, 4, 8, 16, 128}) {
        const double v = psi_approx(x, n, k);
        EXPECT_GE(v, prev - 1e-12);
        EXPECT_LE(v, psi_power(x, k) * (1.0 + 1e-12));
        prev = v;
      }
      EXPECT_DOUBLE_EQ(psi_approx(x, 1000, k), psi_power(x, k));
    }
  }
}

TEST(ExpPartialSum, MatchesDirectSum) {
  const Ensemble e = random_ensemble(6, 2, 500);
  const double s = 1.0, z = 0.3;
  double direct = 0.0;
  for (int i = 0; i < e.size(); ++i) {
    const double b = std::sqrt(1.0 + norm2(e.velocity(i)));
    double term = 1.0, acc = 0.0;
    for (int p = 0; p <= 6; ++p) {
      acc += term;
      term *= z * std::pow(b, s) / (p + 1);
    }
    direct += e.weight() * acc;
  }
  EXPECT_NEAR(exp_partial_sum(e, s, z, 6), direct, 1e-12 * direct);
  const MomentVector mv = moments(e, series_orders(s, 0.0, 6));
  EXPECT_NEAR(exp_partial_sum(mv, s, z, 6), direct, 1e-12 * direct);
}

TEST(Series, PovznerPartialSumBound) {
  const Ensemble e = random_ensemble(7, 2, 1000);
  for (int n : {3, 6, 10}) {
    const MomentVector mv = moments(e, series_orders(1.0, 1.0, n));
    for (int p0 = 0; p0 <= n; ++p0) EXPECT_TRUE(series_bound_check(mv, 1.0, 1.0, 0.5, n, p0).holds);
  }
}
