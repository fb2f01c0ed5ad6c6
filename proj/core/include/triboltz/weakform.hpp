#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "triboltz/bounds.hpp"
#include "triboltz/kernels.hpp"
#include "triboltz/moments.hpp"
#include "triboltz/povzner.hpp"

namespace triboltz {

struct TestFunction {
  enum class Kind { Poly, Exp, Mass, Momentum, Energy, Custom };
  Kind kind = Kind::Poly;
  double q = 2.0;      // Poly: <v>^q
  double s = 1.0;      // Exp: exp(z <v>^s)
  double z = 0.0;
  int component = 0;   // Momentum
  std::function<double(const Vec&)> custom;

  static TestFunction poly(double q);
  static TestFunction exp_weight(double s, double z);
  static TestFunction mass();
  static TestFunction momentum(int component);
  static TestFunction energy();

  double operator()(const Vec& v) const;
  std::string name() const;
};

struct Budget {
  long pairs = 200000;
  long triples = 200000;
  int batches = 32;
  int binaryNodes = 16;        // sphere_rule resolution on S^{d-1}
  int ternaryDirections = 8;   // uniform directions on S^{2d-1} per triple
  bool binary = true;
  bool ternary = true;
  double targetStderr = 0.0;   // zero disables the low-confidence flag
};

struct WeakFormEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  double binary = 0.0, binaryStderr = 0.0;
  double ternary = 0.0, ternaryStderr = 0.0;
  long samplePairs = 0, sampleTriples = 0;
  int angularNodes = 0;
  std::uint64_t seed = 0;
  bool lowConfidence = false;
};

WeakFormEstimate weakform_estimate(const Ensemble& e, const TestFunction& phi, const KernelConfig& cfg,
                                   const Budget& budget, std::uint64_t seed);

struct CollisionFrequencies {
  double nu2 = 0.0;
  double nu3 = 0.0;
  bool sampled = false;
};

// Exact sums when N(N-1) <= maxPairs, otherwise a seeded subsample of ordered pairs.
CollisionFrequencies collision_frequencies(const Ensemble& e, const Vec& v, const KernelConfig& cfg,
                                           const KernelNorms& norms, long maxPairs = 4000000,
                                           std::uint64_t seed = 0);

struct OdiReport {
  double q = 0.0;
  WeakFormEstimate lhs;
  double mq = 0.0;
  double rhsShifted = 0.0;  // C_q m_q - C'_q (m_{q+g2} + m_{q+g3})
  double rhsPower = 0.0;    // C_q m_q - C~_q (m_q^{1+g2/(q-2)} + m_q^{1+g3/(q-2)})
  double marginShifted = 0.0;  // (rhs - lhs) / stderr
  double marginPower = 0.0;
  bool passShifted = false;
  bool passPower = false;
  OdiConstants constants;
};

OdiReport odi_verify(const Ensemble& e, double q, const KernelConfig& cfg, const CoerciveTables& tables,
                     const Budget& budget, std::uint64_t seed, double sigmas = 3.0);
// Same check against caller-supplied constants.
OdiReport odi_verify(const Ensemble& e, const OdiConstants& constants, const KernelConfig& cfg,
                     const Budget& budget, std::uint64_t seed, double sigmas = 3.0);

struct ExpOdiReport {
  double s = 0.0;
  int p = 0;
  WeakFormEstimate lhs;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = false;
  ExpLemmaConstants constants;
  PovznerSums sums2, sums3;
};

// Integer-order form: test function <v>^{sp}.
ExpOdiReport odi_verify_exp(const Ensemble& e, double s, int p, const KernelConfig& cfg,
                            const CoerciveTables& tables, const Budget& budget, std::uint64_t seed,
                            double sigmas = 3.0);

}  // namespace triboltz
