#include <gtest/gtest.h>

#include <cmath>

#include "triboltz/harness.hpp"
#include "triboltz/weakform.hpp"

using namespace triboltz;

namespace {

Budget small_budget() {
  Budget b;
  b.pairs = 20000;
  b.triples = 20000;
  return b;
}

}  // namespace

TEST(WeakForm, CollisionInvariantsVanish) {
  const KernelConfig k;
  const Ensemble e = bimodal_ensemble(2, 2000, 2.0, 0.25, 3);
  for (const TestFunction& phi : {TestFunction::mass(), TestFunction::momentum(0), TestFunction::momentum(1),
                                  TestFunction::energy()}) {
    const WeakFormEstimate w = weakform_estimate(e, phi, k, small_budget(), 17);
    EXPECT_NEAR(w.value, 0.0, 1e-9) << phi.name();
  }
}

TEST(WeakForm, DeterministicForSeed) {
  const KernelConfig k;
  const Ensemble e = gaussian_ensemble(2, 2000, 1.0, 4);
  const WeakFormEstimate a = weakform_estimate(e, TestFunction::poly(4.0), k, small_budget(), 99);
  const WeakFormEstimate b = weakform_estimate(e, TestFunction::poly(4.0), k, small_budget(), 99);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.stderr_, b.stderr_);
  const WeakFormEstimate c = weakform_estimate(e, TestFunction::poly(4.0), k, small_budget(), 100);
  EXPECT_NE(a.value, c.value);
}

TEST(WeakForm, MaxwellianIsStationaryWithinNoise) {
  const KernelConfig k;
  const Ensemble e = gaussian_ensemble(2, 20000, 1.0, 5);
  const WeakFormEstimate w = weakform_estimate(e, TestFunction::poly(4.0), k, small_budget(), 7);
  EXPECT_LE(std::abs(w.value), 4.0 * w.stderr_);
}

// Cold beams carry no tail; relaxation towards the Maxwellian of equal energy raises m6.
TEST(WeakForm, ColdBeamsHighMomentsGrow) {
  const KernelConfig k;
  const Ensemble e = bimodal_ensemble(2, 5000, 2.0, 0.05, 6);
  const WeakFormEstimate w = weakform_estimate(e, TestFunction::poly(6.0), k, small_budget(), 8);
  EXPECT_GT(w.value - 3.0 * w.stderr_, 0.0);
}

TEST(WeakForm, DisabledOperatorContributesNothing) {
  const KernelConfig k;
  const Ensemble e = gaussian_ensemble(2, 1000, 1.0, 9);
  Budget b = small_budget();
  b.ternary = false;
  const WeakFormEstimate w = weakform_estimate(e, TestFunction::poly(4.0), k, b, 1);
  EXPECT_EQ(w.ternary, 0.0);
  EXPECT_EQ(w.sampleTriples, 0);
}

TEST(TestFunctionNames, Distinct) {
  EXPECT_NE(TestFunction::poly(4.0).name(), TestFunction::poly(6.0).name());
  EXPECT_DOUBLE_EQ(TestFunction::poly(4.0)(Vec{1.0, 1.0}), 9.0);
  EXPECT_DOUBLE_EQ(TestFunction::energy()(Vec{1.0, 2.0}), 5.0);
}
