#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/dsmc.hpp"
#include "triboltz/errors.hpp"

using namespace triboltz;

namespace {

SimConfig small_run() {
  SimConfig sc;
  sc.N = 2000;
  sc.dt = 0.02;
  sc.tEnd = 0.4;
  sc.seed = 42;
  sc.init.law = InitialData::Law::Ball;
  sc.init.R = 2.0;
  sc.outputOrders = {4.0, 6.0};
  sc.outputEvery = 2;
  return sc;
}

}  // namespace

TEST(Dsmc, ConservesMassMomentumEnergy) {
  const MomentTrajectory tr = run(small_run());
  EXPECT_LT(tr.massDrift, 1e-14);
  EXPECT_LT(tr.momentumDrift, 1e-10);
  EXPECT_LT(std::abs(tr.energyDrift), 1e-10);
  const TrajectoryRow& a = tr.rows.front();
  const TrajectoryRow& b = tr.rows.back();
  EXPECT_NEAR(b.m2, a.m2, 1e-10 * a.m2);
  EXPECT_GT(b.eventsBinary, 0);
  EXPECT_GT(b.eventsTernary, 0);
}

TEST(Dsmc, DeterministicForSeed) {
  const MomentTrajectory a = run(small_run()), b = run(small_run());
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].t, b.rows[i].t);
    EXPECT_EQ(a.rows[i].moments, b.rows[i].moments);
    EXPECT_EQ(a.rows[i].eventsTernary, b.rows[i].eventsTernary);
  }
  SimConfig other = small_run();
  other.seed = 43;
  EXPECT_NE(run(other).rows.back().moments, a.rows.back().moments);
}

TEST(Dsmc, LandsOnEndTime) {
  const MomentTrajectory tr = run(small_run());
  EXPECT_DOUBLE_EQ(tr.rows.back().t, 0.4);
  EXPECT_DOUBLE_EQ(tr.rows.front().t, 0.0);
}

TEST(Dsmc, BallInitialDataHasCompactSupport) {
  const Ensemble e = init_ensemble(small_run());
  ASSERT_EQ(e.size(), 2000);
  for (int i = 0; i < e.size(); ++i) EXPECT_LE(std::sqrt(1.0 + norm2(e.velocity(i))), 2.0 + 1e-12);
  EXPECT_NEAR(e.mass(), 1.0, 1e-12);
}

TEST(Dsmc, TruncationDropsFastParticlesKeepingWeight) {
  const Ensemble e(2, {0.0, 0.0, 5.0, 0.0, 0.5, 0.5}, 0.25);
  const Ensemble t = truncate_ensemble(e, 2.0);
  EXPECT_EQ(t.size(), 2);
  EXPECT_DOUBLE_EQ(t.weight(), 0.25);
}

TEST(Dsmc, HighMomentsGrowFromColdBeams) {
  SimConfig sc = small_run();
  sc.init.law = InitialData::Law::GaussianMixture;
  Vec a(2), b(2);
  a[0] = 2.0;
  b[0] = -2.0;
  sc.init.mixture = {{0.5, a, 0.05}, {0.5, b, 0.05}};
  sc.tEnd = 1.0;
  const MomentTrajectory tr = run(sc);
  EXPECT_GT(tr.rows.back().moments[1], tr.rows.front().moments[1]);
}

TEST(Dsmc, InvalidConfigRejected) {
  SimConfig sc = small_run();
  sc.N = 2;
  EXPECT_THROW(sc.validate(), Error);
  sc = small_run();
  sc.dt = 0.0;
  EXPECT_THROW(sc.validate(), Error);
}
