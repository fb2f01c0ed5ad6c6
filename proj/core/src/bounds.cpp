#include "triboltz/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triboltz/errors.hpp"
#include "triboltz/moments.hpp"

namespace triboltz {

namespace {

std::string num(double x) { return std::to_string(x); }

void require_gap(const CoerciveInputs& in, double q) {
  if (!(in.alpha < in.norms.b2))
    fail(ErrorKind::Numerical, "alpha table entry at k = " + num(q) + " is not below ||b2||: no coercive gap");
  if (!(in.lambda < in.norms.b3))
    fail(ErrorKind::Numerical, "lambda table entry at k = " + num(q) + " is not below ||b3||: no coercive gap");
}

}  // namespace

CoerciveInputs coercive_inputs(const CoerciveTables& t, double q) {
  return {t.binary.at(q), t.ternary.at(q), t.norms};
}

double interpolation_exponent(double q, double g) { return (q - 2.0) / (q + g) + g / (q + g - 2.0); }

OdiConstants odi_constants(double q, double m0, double m2, const KernelConfig& cfg, const CoerciveInputs& in) {
  if (!(q > 2.0)) fail(ErrorKind::InvalidInput, "odi_constants: q must exceed 2");
  if (!(m0 > 0.0 && m2 > 0.0)) fail(ErrorKind::InvalidInput, "odi_constants: m0 and m2 must be positive");
  require_gap(in, q);
  OdiConstants o;
  o.q = q;
  o.m0 = m0;
  o.m2 = m2;
  o.in = in;
  o.gamma2 = cfg.gamma2;
  o.gamma3 = cfg.gamma3;
  o.theta3 = cfg.theta3;
  const double g2 = cfg.gamma2, g3 = cfg.gamma3, th = cfg.theta3;
  const double a = in.alpha, l = in.lambda, nb2 = in.norms.b2, nb3 = in.norms.b3;
  const double cg2 = c_gamma2(g2), cg3 = c_gamma3(g3);

  o.C2q = binomial_constant(0.5 * q);
  o.C3q = trinomial_constant(0.5 * q);
  o.thetaQ2 = interpolation_exponent(q, g2);
  o.thetaQ3 = interpolation_exponent(q, g3);
  auto Bpow = [&](double g) {
    return std::pow(m2, ((g + 2.0) * (q + g - 2.0) + (q - 2.0) * (q + g)) / (2.0 * (q - 2.0)));
  };
  o.B2 = Bpow(g2);
  o.B3 = Bpow(g3);

  o.eps2 = (nb2 - a) * std::pow(2.0, -0.5 * g2) * m0 / (2.0 * a * o.C2q * cg2 * o.thetaQ2);
  o.eps3 = 0.5 * (nb3 - l) * std::pow(3.0, -0.5 * th) * std::pow(2.0 / 3.0, 0.5 * g3) * m0 * m0 /
           (2.0 * l * o.C3q * cg3 * o.thetaQ3);

  const double e2 = std::pow(o.eps2, -o.thetaQ2 / (1.0 - o.thetaQ2));
  const double e3 = std::pow(o.eps3, -o.thetaQ3 / (1.0 - o.thetaQ3));
  o.Eq = a * o.C2q * cg2 * e2 * o.B2 + l * o.C3q * cg3 * e3 * o.B3;
  o.Dq = a * o.C2q * cg2 * m2 + (nb2 - a) * m2 + 2.0 * l * o.C3q * cg3 * m2 * m2 +
         (nb3 - l) * std::pow(3.0, -0.5 * th) * m2 * m2;
  o.Cq = o.Eq / m0 + o.Dq;
  o.CqPrime = std::min((nb2 - a) * std::pow(2.0, -1.0 - 0.5 * g2) * m0,
                       0.25 * (nb3 - l) * std::pow(3.0, -0.5 * th) * std::pow(2.0 / 3.0, 0.5 * g3) * m0 * m0);
  o.CqTilde = o.CqPrime * (std::pow(m2, -g2 / (q - 2.0)) + std::pow(m2, -g3 / (q - 2.0)));
  if (!std::isfinite(o.Cq) || !std::isfinite(o.CqTilde) || !(o.Cq > 0.0) || !(o.CqTilde > 0.0))
    fail(ErrorKind::Numerical, "odi_constants: non-finite or nonpositive constant at q = " + num(q));
  return o;
}

OdiConstants odi_constants(double q, double m0, double m2, const KernelConfig& cfg, const CoerciveTables& t) {
  return odi_constants(q, m0, m2, cfg, coercive_inputs(t, q));
}

double bernoulli_blowup(double t, double C, double Ct, double q, double g) {
  if (!(t > 0.0)) fail(ErrorKind::InvalidInput, "bernoulli_blowup: t must be positive on the blow-up branch");
  const double p = (2.0 - q) / g;
  return std::pow(Ct / C, p) * std::pow(-std::expm1(-t * C * g / (q - 2.0)), p);
}

double bernoulli_finite(double t, double y0, double C, double Ct, double q, double g) {
  if (!(y0 > 0.0)) fail(ErrorKind::InvalidInput, "bernoulli_finite: y0 must be positive");
  const double r = g / (q - 2.0);
  const double e = std::exp(-t * C * r);
  return std::pow(std::pow(y0, -r) * e + (Ct / C) * (-std::expm1(-t * C * r)), -1.0 / r);
}

double bernoulli_flow(double t, const OdiConstants& odi, double g, std::optional<double> y0) {
  if (!(g > 0.0)) fail(ErrorKind::InvalidInput, "bernoulli_flow: exponent gamma must be positive");
  if (y0) return bernoulli_finite(t, *y0, odi.Cq, odi.CqTilde, odi.q, g);
  return bernoulli_blowup(t, odi.Cq, odi.CqTilde, odi.q, g);
}

double log_generation_constant(double q, double C, double Ct, double g) {
  const double p = (2.0 - q) / g;
  const double a = C * g / (q - 2.0);
  return p * std::log(Ct / C) + std::max(p * std::log(-std::expm1(-a)), C + p * std::log(a));
}

double generation_constant(double q, double C, double Ct, double g) {
  const double p = (2.0 - q) / g;
  const double a = C * g / (q - 2.0);
  return std::pow(Ct / C, p) * std::max(std::pow(-std::expm1(-a), p), std::exp(C) * std::pow(a, p));
}

EnvelopeSet generation_envelope(const OdiConstants& odi, std::optional<double> mq0) {
  EnvelopeSet e;
  e.q = odi.q;
  e.gamma2 = odi.gamma2;
  e.gamma3 = odi.gamma3;
  e.Cq = odi.Cq;
  e.CqTilde = odi.CqTilde;
  e.has2 = odi.gamma2 > 0.0;
  e.has3 = odi.gamma3 > 0.0;
  if (!e.has2 && !e.has3) fail(ErrorKind::InvalidInput, "generation_envelope: requires gamma2 > 0 or gamma3 > 0");
  if (e.has2) e.Kq2 = generation_constant(odi.q, odi.Cq, odi.CqTilde, odi.gamma2);
  if (e.has3) e.Kq3 = generation_constant(odi.q, odi.Cq, odi.CqTilde, odi.gamma3);
  e.Kq = std::max(e.Kq2, e.Kq3);
  e.Mq = mq0 ? std::max(*mq0 * std::exp(odi.Cq), e.Kq) : e.Kq;
  if (e.has2) e.logKq2 = log_generation_constant(odi.q, odi.Cq, odi.CqTilde, odi.gamma2);
  if (e.has3) e.logKq3 = log_generation_constant(odi.q, odi.Cq, odi.CqTilde, odi.gamma3);
  e.logKq = std::max(e.logKq2, e.logKq3);
  e.logMq = mq0 ? std::max(std::log(*mq0) + odi.Cq, e.logKq) : e.logKq;
  return e;
}

double EnvelopeSet::single(double t, int i) const {
  const double g = i == 2 ? gamma2 : gamma3;
  const double K = i == 2 ? Kq2 : Kq3;
  if (!(g > 0.0)) fail(ErrorKind::InvalidInput, "EnvelopeSet::single: branch has gamma = 0");
  return K * std::max(1.0, std::pow(t, (2.0 - q) / g));
}

double EnvelopeSet::combined(double t) const {
  double m = HUGE_VAL;
  if (has2) m = std::min(m, std::pow(t, (2.0 - q) / gamma2));
  if (has3) m = std::min(m, std::pow(t, (2.0 - q) / gamma3));
  return Kq * std::max(1.0, m);
}

double EnvelopeSet::log_single(double t, int i) const {
  const double g = i == 2 ? gamma2 : gamma3;
  const double K = i == 2 ? logKq2 : logKq3;
  if (!(g > 0.0)) fail(ErrorKind::InvalidInput, "EnvelopeSet::log_single: branch has gamma = 0");
  return K + std::max(0.0, (2.0 - q) / g * std::log(t));
}

double EnvelopeSet::log_combined(double t) const {
  double m = HUGE_VAL;
  if (has2) m = std::min(m, (2.0 - q) / gamma2 * std::log(t));
  if (has3) m = std::min(m, (2.0 - q) / gamma3 * std::log(t));
  return logKq + std::max(0.0, m);
}

std::vector<double> EnvelopeSet::branch_switches() const {
  if (has2 && has3 && gamma2 != gamma3) return {1.0};
  return {};
}

ExpLemmaConstants exp_lemma_constants(double sp, double m0, double m2, const KernelConfig& cfg,
                                      const CoerciveInputs& in) {
  if (!(sp > 2.0)) fail(ErrorKind::InvalidInput, "exp_lemma_constants: sp must exceed 2");
  require_gap(in, sp);
  ExpLemmaConstants k;
  k.sp = sp;
  const double g2 = in.norms.b2 - in.alpha, g3 = in.norms.b3 - in.lambda;
  k.K1 = std::pow(2.0, 1.0 - 0.5 * cfg.gamma2) * m0 * g2;
  k.K2 = 3.0 * std::pow(2.0 / 3.0, 0.5 * cfg.gamma3) * m0 * m0 * g3;
  k.K3 = 2.0 * m2 * g2 + 6.0 * m0 * m2 * g3;
  return k;
}

ExpLemmaConstants exp_lemma_constants(double sp, double m0, double m2, const KernelConfig& cfg,
                                      const CoerciveTables& t) {
  return exp_lemma_constants(sp, m0, m2, cfg, coercive_inputs(t, sp));
}

ExpThreshold exp_threshold(double s, double C0, int pMax, double m0, double m2, const KernelConfig& cfg,
                           const CoerciveTables& t) {
  ExpThreshold r;
  for (int p = 1; p <= pMax; ++p) {
    const double sp = s * p;
    if (!(sp > 2.0) || !t.binary.orders.size()) continue;
    CoerciveInputs in;
    try {
      in = coercive_inputs(t, sp);
    } catch (const Error&) {
      continue;
    }
    const ExpLemmaConstants k = exp_lemma_constants(sp, m0, m2, cfg, in);
    const double l2 = 12.0 * c_gamma2(cfg.gamma2) * in.alpha * C0;
    const double l3 = 108.0 * c_gamma3(cfg.gamma3) * in.lambda * C0 * C0;
    if (l2 <= 0.5 * k.K1 && l3 <= 0.5 * k.K2) {
      r.p0 = p;
      r.lhs2 = l2;
      r.rhs2 = 0.5 * k.K1;
      r.lhs3 = l3;
      r.rhs3 = 0.5 * k.K2;
      return r;
    }
  }
  return r;
}

WellPosedConstants wellposed_constants(const OdiConstants& odi) {
  WellPosedConstants w;
  w.C = odi.Cq;
  w.Ct = odi.CqTilde;
  const double r = 4.0 * w.C / w.Ct;
  w.xStar = r * r;
  w.LStar = 8.0 / 27.0 * r * r * w.C;
  w.A = w.xStar + w.LStar;
  return w;
}

WellPosedConstants wellposed_constants(double m0, double m2, const KernelConfig& cfg, const CoerciveTables& t) {
  return wellposed_constants(odi_constants(2.0 + 2.0 * cfg.gamma(), m0, m2, cfg, t));
}

double collision_frequency_constant(double m0, double m2, const KernelConfig& cfg, const KernelNorms& n) {
  const double a = c_gamma2(cfg.gamma2) * n.b2, b = c_gamma3(cfg.gamma3) * n.b3;
  return std::max({a * m2 + 6.0 * b * m0 * m2, a * m0, 3.0 * b * m0 * m0});
}

double collision_frequency_majorant(const Vec& v, double m0, double m2, const KernelConfig& cfg,
                                    const KernelNorms& n) {
  const double bv = bracket(v);
  return collision_frequency_constant(m0, m2, cfg, n) *
         (1.0 + std::pow(bv, cfg.gamma2) + std::pow(bv, cfg.gamma3));
}

}  // namespace triboltz
