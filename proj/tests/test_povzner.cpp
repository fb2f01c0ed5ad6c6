#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "triboltz/errors.hpp"
#include "triboltz/moments.hpp"
#include "triboltz/povzner.hpp"
#include "triboltz/random.hpp"

using namespace triboltz;

namespace {

// Independent scipy oracle (tests/oracles/coercive_oracle.py), d = 2, theta3 = 0, phi = 1.
constexpr double kLambda6Plane = 10.752404179414361;

Vec gaussian(Rng& r, int d, double s) {
  std::normal_distribution<double> g(0.0, s);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = g(r);
  return v;
}

}  // namespace

TEST(Coercive, LambdaSixMatchesOracle) {
  const CoerciveResult l = lambda_coeff(6.0, KernelConfig{});
  EXPECT_NEAR(l.value, kLambda6Plane, 1e-8 * kLambda6Plane);
  EXPECT_LT(l.quadratureError, 1e-3 * l.value);
  ASSERT_FALSE(l.argmax.empty());
  EXPECT_NEAR(0.5 * (1.0 - std::cos(l.argmax[0])), 1.0, 1e-9);
}

TEST(Coercive, AlphaSixClosedForms) {
  // At beta = 1 the sup concentrates the energy on one particle: int cos^6 + sin^6 over the sphere.
  KernelConfig k3;
  k3.d = 3;
  EXPECT_NEAR(alpha_coeff(6.0, k3).value, 12.0 * M_PI / 5.0, 1e-9);
  EXPECT_NEAR(alpha_coeff(6.0, KernelConfig{}).value, 5.0 * M_PI / 4.0, 1e-9);
}

TEST(Coercive, OrderTwoEqualsCutoffNorms) {
  const KernelConfig k;
  const KernelNorms n = kernel_norms(k);
  EXPECT_NEAR(alpha_coeff(2.0, k).value, n.b2, 1e-4 * n.b2);
  EXPECT_NEAR(lambda_coeff(2.0, k).value, n.b3, 1e-4 * n.b3);
}

TEST(Coercive, RejectsOrdersBelowTwo) {
  EXPECT_THROW(lambda_coeff(1.5, KernelConfig{}), Error);
  EXPECT_THROW(alpha_coeff(1.0, KernelConfig{}), Error);
}

TEST(Coercive, TableIsStrictlyDecreasingAndCached) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "triboltz_test_cache";
  std::filesystem::remove_all(dir);
  const KernelConfig k;
  const std::vector<double> orders{3.0, 4.0, 6.0, 8.0};
  const CoerciveTable a = coercive_table(k, Arity::Binary, orders, {}, dir.string());
  EXPECT_FALSE(a.fromCache);
  EXPECT_TRUE(a.strictly_decreasing());
  const CoerciveTable b = coercive_table(k, Arity::Binary, orders, {}, dir.string());
  EXPECT_TRUE(b.fromCache);
  EXPECT_EQ(a.key, b.key);
  for (size_t i = 0; i < orders.size(); ++i) EXPECT_EQ(a.values[i], b.values[i]);
  EXPECT_THROW(a.at(5.0), Error);
  std::filesystem::remove_all(dir);
}

TEST(Coercive, KeyDependsOnKernelAndResolution) {
  KernelConfig k, k2;
  k2.gamma3 = 0.5;
  CoerciveSearch s, s2;
  s2.starts = 3;
  const std::vector<double> o{4.0};
  EXPECT_EQ(coercive_key(k, Arity::Ternary, o, s), coercive_key(k, Arity::Ternary, o, s));
  EXPECT_NE(coercive_key(k, Arity::Ternary, o, s), coercive_key(k, Arity::Ternary, o, s2));
  EXPECT_NE(coercive_key(k, Arity::Ternary, o, s), coercive_key(k, Arity::Binary, o, s));
}

TEST(Regions, ExactlyOneIndicator) {
  Rng r = substream(3, 1, 0);
  for (int n = 0; n < 10000; ++n) {
    const double a = 1.0 + 10.0 * uniform01(r), b = 1.0 + 10.0 * uniform01(r), c = 1.0 + 10.0 * uniform01(r);
    const auto two = binary_regions(a, b);
    const auto three = ternary_regions(a, b, c);
    EXPECT_EQ(two[0] + two[1] + two[2], 1);
    EXPECT_EQ(three[0] + three[1] + three[2] + three[3], 1);
  }
}

TEST(Decomposition, IdentityAndBoundsAtOrderFour) {
  const KernelConfig k;
  const double alpha = alpha_coeff(4.0, k).value, lambda = lambda_coeff(4.0, k).value;
  const KernelNorms n = kernel_norms(k);
  const SphereRule trule = stacked_sphere_rule(2, 6, 8), brule = sphere_rule(2, 32);
  Rng r = substream(3, 2, 0);
  for (int i = 0; i < 300; ++i) {
    const Vec v = gaussian(r, 2, 2.0), v1 = gaussian(r, 2, 2.0), v2 = gaussian(r, 2, 0.5);
    for (const Decomposition& d :
         {modified_decomposition_binary(v, v1, 4.0, k, Psi{4.0, 0}, alpha, n.b2, brule),
          modified_decomposition_ternary(v, v1, v2, 4.0, k, Psi{4.0, 0}, lambda, n.b3, trule)}) {
      EXPECT_NEAR(d.Gtilde - d.Ltilde, d.G - d.L, 1e-10 * std::max(d.G, d.L));
      EXPECT_LE(d.Gtilde, d.gainBound * (1.0 + 1e-3));
      EXPECT_LE(d.lossBound, d.Ltilde * (1.0 + 1e-3));
    }
  }
}

TEST(Decomposition, GainConstantVariants) {
  EXPECT_DOUBLE_EQ(ternary_decomposition_constant(6.0, GainConstant::Printed), 3.5 + 4.0 * binomial_constant(6.0));
  EXPECT_DOUBLE_EQ(ternary_decomposition_constant(6.0, GainConstant::Safe), 3.5 + 4.0 * trinomial_constant(6.0));
  EXPECT_GT(ternary_decomposition_constant(6.0, GainConstant::Safe),
            ternary_decomposition_constant(6.0, GainConstant::Printed));
}

TEST(Psi, ApproximationIsPowerBelowCutoffAndTangentAbove) {
  const Psi p{6.0, 4}, pw{6.0, 0};
  EXPECT_DOUBLE_EQ(p(2.0), pw(2.0));
  EXPECT_NEAR(p(5.0), 64.0 + 3.0 * 16.0 * 1.0, 1e-12);
}
