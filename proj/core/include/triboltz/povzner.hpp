#pragma once

#include <array>
#include <string>
#include <vector>

#include "triboltz/kernels.hpp"
#include "triboltz/quadrature.hpp"
#include "triboltz/vector.hpp"

namespace triboltz {

// Quadrature nodes with kernel-independent per-node data folded in.
struct TernaryGainRule {
  int d = 0;
  std::vector<double> omega;    // 2d per node
  std::vector<double> a1, a2;   // 2 w1 + w2, w1 + 2 w2
  std::vector<double> weight;   // quadrature weight times phi(w1.w2)
  std::vector<double> inv;      // 1 / (1 + w1.w2)
  int count() const { return static_cast<int>(weight.size()); }
};

struct BinaryGainRule {
  int d = 0;
  std::vector<double> omega;
  std::vector<double> weight;
  int count() const { return static_cast<int>(weight.size()); }
};

TernaryGainRule make_ternary_gain_rule(const KernelConfig& cfg, int nTheta, int nSphere);
BinaryGainRule make_binary_gain_rule(const KernelConfig& cfg, int n);

// Integral over S^{2d-1} of b3(uBar.w, w1.w2)(mu^{k/2} + mu1^{k/2} + mu2^{k/2}).
double gain_average_ternary(double k, double xi, double alpha, const Vec2& uBar, const Vec& vHat,
                            const KernelConfig& cfg, const TernaryGainRule& rule);
// Integral over S^{d-1} of b2(uHat.w)(nu^{k/2} + nu1^{k/2}).
double gain_average_binary(double k, double xi, double beta, const Vec& uHat, const Vec& vHat,
                           const KernelConfig& cfg, const BinaryGainRule& rule);

// Zero ternary resolutions select dimension defaults (d = 2: 12x16 / 32x48, d = 3: 3x3 / 8x8).
struct CoerciveSearch {
  int ternaryTheta = 0;
  int ternarySphere = 0;
  int ternaryThetaFine = 0;
  int ternarySphereFine = 0;
  int binaryNodes = 64;
  int binaryNodesFine = 256;
  int gridPerAxis = 5;
  int starts = 10;
  int maxIterations = 600;
  double tolerance = 1e-10;

  CoerciveSearch resolved(int d) const;
};

struct CoerciveResult {
  double value = 0.0;
  double coarseValue = 0.0;
  double quadratureError = 0.0;
  std::vector<double> argmax;  // search angles; alpha (or beta) = (1 - cos x0) / 2, xi / alpha = (1 - cos x1) / 2
  bool converged = false;
  int evaluations = 0;
};

CoerciveResult lambda_coeff(double k, const KernelConfig& cfg, const CoerciveSearch& search = {});
CoerciveResult alpha_coeff(double k, const KernelConfig& cfg, const CoerciveSearch& search = {});

struct CoerciveTable {
  Arity arity = Arity::Ternary;
  std::vector<double> orders;
  std::vector<double> values;
  std::vector<int> converged;
  CoerciveSearch search;
  std::string key;
  bool fromCache = false;

  // Value at order k; throws InvalidInput when k is not tabulated.
  double at(double k) const;
  bool strictly_decreasing() const;
};

// Cache key over kernel, arity, orders and search resolution.
std::string coercive_key(const KernelConfig& cfg, Arity arity, const std::vector<double>& orders,
                         const CoerciveSearch& search);
// Directory from TRIBOLTZ_CACHE_DIR, empty when unset.
std::string cache_directory();

// Builds or loads from cacheDir (disabled when empty).
CoerciveTable coercive_table(const KernelConfig& cfg, Arity arity, const std::vector<double>& orders,
                             const CoerciveSearch& search = {}, const std::string& cacheDir = cache_directory());

struct CoerciveTables {
  CoerciveTable binary;
  CoerciveTable ternary;
  KernelNorms norms;
};

CoerciveTables coercive_tables(const KernelConfig& cfg, std::vector<double> orders, const CoerciveSearch& search = {},
                               const std::string& cacheDir = cache_directory());

struct Psi {
  double k = 4.0;
  int n = 0;  // 0 selects the pure power
  double operator()(double x) const;
};

enum class GainConstant { Printed, Safe };

// Constants multiplying the mixed monomials in the gain bounds.
double binary_decomposition_constant(double k);
double ternary_decomposition_constant(double k, GainConstant variant);

struct Decomposition {
  double G = 0.0;
  double L = 0.0;
  double Gtilde = 0.0;
  double Ltilde = 0.0;
  double gainBound = 0.0;
  double lossBound = 0.0;
  int region = 0;  // 0 for the balanced set, i + 1 for the complement of A_i
};

Decomposition modified_decomposition_binary(const Vec& v, const Vec& v1, double k, const KernelConfig& cfg,
                                            const Psi& psi, double alphaK, double normB2, const SphereRule& rule);
Decomposition modified_decomposition_ternary(const Vec& v, const Vec& v1, const Vec& v2, double k,
                                             const KernelConfig& cfg, const Psi& psi, double lambdaK, double normB3,
                                             const SphereRule& rule, GainConstant variant = GainConstant::Safe);

// Indicator partition for the pair and triple sets; exactly one entry is true.
std::array<bool, 3> binary_regions(double bv, double bv1);
std::array<bool, 4> ternary_regions(double bv, double bv1, double bv2);

}  // namespace triboltz
