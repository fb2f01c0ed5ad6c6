#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "triboltz/kernels.hpp"
#include "triboltz/povzner.hpp"

namespace triboltz {

// Coercive values at a single order together with the cutoff norms.
struct CoerciveInputs {
  double alpha = 0.0;   // alpha_{q/2}
  double lambda = 0.0;  // lambda_{q/2}
  KernelNorms norms;
};

CoerciveInputs coercive_inputs(const CoerciveTables& t, double q);

struct OdiConstants {
  double q = 0.0;
  double m0 = 0.0, m2 = 0.0;
  CoerciveInputs in;
  double gamma2 = 0.0, gamma3 = 0.0, theta3 = 0.0;

  double thetaQ2 = 0.0, thetaQ3 = 0.0;  // interpolation exponents theta_{q,gamma_i}
  double B2 = 0.0, B3 = 0.0;            // m2 powers B_{q,gamma_i}
  double eps2 = 0.0, eps3 = 0.0;
  double C2q = 0.0, C3q = 0.0;          // C_{2,q/2}, C_{3,q/2}
  double Eq = 0.0, Dq = 0.0;
  double Cq = 0.0, CqPrime = 0.0, CqTilde = 0.0;
};

double interpolation_exponent(double q, double gamma);

OdiConstants odi_constants(double q, double m0, double m2, const KernelConfig& cfg, const CoerciveInputs& in);
OdiConstants odi_constants(double q, double m0, double m2, const KernelConfig& cfg, const CoerciveTables& t);

// Solution of y' = C y - Ct y^{1 + g/(q-2)} started from +infinity at t = 0.
double bernoulli_blowup(double t, double C, double Ct, double q, double g);
// Same ODE from y(0) = y0.
double bernoulli_finite(double t, double y0, double C, double Ct, double q, double g);
double bernoulli_flow(double t, const OdiConstants& odi, double g, std::optional<double> y0);

struct EnvelopeSet {
  double q = 0.0;
  double gamma2 = 0.0, gamma3 = 0.0;
  bool has2 = false, has3 = false;
  double Kq2 = 0.0, Kq3 = 0.0;
  double Kq = 0.0;
  double Mq = 0.0;
  // Natural logarithms; the constants themselves overflow for realistic C_q.
  double logKq2 = -HUGE_VAL, logKq3 = -HUGE_VAL, logKq = -HUGE_VAL, logMq = -HUGE_VAL;
  double Cq = 0.0, CqTilde = 0.0;

  // K_{q,i} max{1, t^{(2-q)/gamma_i}}, i in {2, 3}.
  double single(double t, int i) const;
  // K_q max{1, min over active i of t^{(2-q)/gamma_i}}.
  double combined(double t) const;
  double log_single(double t, int i) const;
  double log_combined(double t) const;
  // Times at which the min in combined() switches branch.
  std::vector<double> branch_switches() const;
};

double generation_constant(double q, double C, double Ct, double g);
double log_generation_constant(double q, double C, double Ct, double g);
EnvelopeSet generation_envelope(const OdiConstants& odi, std::optional<double> mq0 = std::nullopt);

struct ExpLemmaConstants {
  double sp = 0.0;
  double K1 = 0.0, K2 = 0.0, K3 = 0.0;
};

ExpLemmaConstants exp_lemma_constants(double sp, double m0, double m2, const KernelConfig& cfg,
                                      const CoerciveInputs& in);
ExpLemmaConstants exp_lemma_constants(double sp, double m0, double m2, const KernelConfig& cfg,
                                      const CoerciveTables& t);

struct ExpThreshold {
  int p0 = -1;  // -1 when no tabulated order satisfies both conditions
  double lhs2 = 0.0, rhs2 = 0.0, lhs3 = 0.0, rhs3 = 0.0;
};

// Smallest p with 12 C_{g2} alpha_{sp/2} C0 <= K1/2 and 108 C_{g3} lambda_{sp/2} C0^2 <= K2/2.
ExpThreshold exp_threshold(double s, double C0, int pMax, double m0, double m2, const KernelConfig& cfg,
                           const CoerciveTables& t);

struct WellPosedConstants {
  double C = 0.0, Ct = 0.0;
  double xStar = 0.0, LStar = 0.0, A = 0.0;
  double L(double x) const { return 2.0 * C * x - 0.5 * Ct * x * std::sqrt(x); }
};

WellPosedConstants wellposed_constants(const OdiConstants& odi);
WellPosedConstants wellposed_constants(double m0, double m2, const KernelConfig& cfg, const CoerciveTables& t);

// C with nu2 + 3 nu3 <= C (1 + <v>^{g2} + <v>^{g3}).
double collision_frequency_constant(double m0, double m2, const KernelConfig& cfg, const KernelNorms& norms);
double collision_frequency_majorant(const Vec& v, double m0, double m2, const KernelConfig& cfg,
                                    const KernelNorms& norms);

}  // namespace triboltz
