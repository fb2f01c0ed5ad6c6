#include "triboltz/weakform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "triboltz/errors.hpp"
#include "triboltz/kinematics.hpp"
#include "triboltz/quadrature.hpp"
#include "triboltz/random.hpp"

namespace triboltz {

namespace {

double ipow(double x, double p) { return p == 0.0 ? 1.0 : std::pow(x, p); }

struct BatchStats {
  double mean = 0.0;
  double stderr_ = 0.0;
};

BatchStats batch_stats(const std::vector<double>& xs) {
  BatchStats s;
  const double n = static_cast<double>(xs.size());
  if (xs.empty()) return s;
  for (double x : xs) s.mean += x;
  s.mean /= n;
  if (xs.size() < 2) return s;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.stderr_ = std::sqrt(ss / (n - 1.0) / n);
  return s;
}

double margin(double rhs, double lhs, double se) {
  if (se > 0.0) return (rhs - lhs) / se;
  return rhs >= lhs ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
}

}  // namespace

TestFunction TestFunction::poly(double q) {
  TestFunction t;
  t.kind = Kind::Poly;
  t.q = q;
  return t;
}

TestFunction TestFunction::exp_weight(double s, double z) {
  TestFunction t;
  t.kind = Kind::Exp;
  t.s = s;
  t.z = z;
  return t;
}

TestFunction TestFunction::mass() {
  TestFunction t;
  t.kind = Kind::Mass;
  return t;
}

TestFunction TestFunction::momentum(int component) {
  TestFunction t;
  t.kind = Kind::Momentum;
  t.component = component;
  return t;
}

TestFunction TestFunction::energy() {
  TestFunction t;
  t.kind = Kind::Energy;
  return t;
}

double TestFunction::operator()(const Vec& v) const {
  switch (kind) {
    case Kind::Poly: {
      const double b2 = bracket2(v);
      if (q == 2.0) return b2;
      if (q == 4.0) return b2 * b2;
      return std::pow(b2, 0.5 * q);
    }
    case Kind::Exp:
      return std::exp(z * std::pow(bracket2(v), 0.5 * s));
    case Kind::Mass:
      return 1.0;
    case Kind::Momentum:
      return v[component];
    case Kind::Energy:
      return norm2(v);
    case Kind::Custom:
      return custom(v);
  }
  return 0.0;
}

std::string TestFunction::name() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Poly:
      os << "poly(" << q << ")";
      break;
    case Kind::Exp:
      os << "exp(" << s << "," << z << ")";
      break;
    case Kind::Mass:
      os << "mass";
      break;
    case Kind::Momentum:
      os << "momentum(" << component << ")";
      break;
    case Kind::Energy:
      os << "energy";
      break;
    case Kind::Custom:
      os << "custom";
      break;
  }
  return os.str();
}

WeakFormEstimate weakform_estimate(const Ensemble& e, const TestFunction& phi, const KernelConfig& cfg,
                                   const Budget& budget, std::uint64_t seed) {
  cfg.validate();
  const int d = e.dim();
  if (d != cfg.d) fail(ErrorKind::InvalidInput, "weakform_estimate: ensemble dimension differs from kernel dimension");
  if (budget.batches < 2) fail(ErrorKind::InvalidInput, "weakform_estimate: at least two batches are required");
  if (phi.kind == TestFunction::Kind::Custom && !phi.custom)
    fail(ErrorKind::InvalidInput, "weakform_estimate: custom test function is empty");
  if (phi.kind == TestFunction::Kind::Momentum && (phi.component < 0 || phi.component >= d))
    fail(ErrorKind::InvalidInput, "weakform_estimate: momentum component out of range");

  const int N = e.size();
  const double w = e.weight();
  const bool doBinary = budget.binary && N >= 2 && budget.pairs > 0;
  const bool doTernary = budget.ternary && N >= 3 && budget.triples > 0;
  const int nb = budget.batches;
  const long perPair = doBinary ? std::max<long>(1, (budget.pairs + nb - 1) / nb) : 0;
  const long perTriple = doTernary ? std::max<long>(1, (budget.triples + nb - 1) / nb) : 0;
  const double n = static_cast<double>(N);
  const double scale2 = 0.5 * w * w * n * (n - 1.0);
  const double scale3 = w * w * w * n * (n - 1.0) * (n - 2.0) / 6.0;

  const SphereRule rule = sphere_rule(d, budget.binaryNodes);
  const int M = std::max(1, budget.ternaryDirections);
  const double dirWeight = sphere_area(2 * d) / M;

  std::vector<double> bin(nb, 0.0), ter(nb, 0.0), tot(nb, 0.0);
  for (int b = 0; b < nb; ++b) {
    if (doBinary) {
      Rng rng = substream(seed, 2, static_cast<std::uint64_t>(b));
      double acc = 0.0;
      for (long s = 0; s < perPair; ++s) {
        int i, j;
        distinct_pair(rng, N, i, j);
        const Vec v = e.velocity(i), v1 = e.velocity(j);
        const Vec u = v1 - v;
        const double un = norm(u);
        if (!(un > 0.0)) continue;
        const double pre = phi(v) + phi(v1);
        const double mag = ipow(un, cfg.gamma2);
        double inner = 0.0;
        for (int k = 0; k < rule.count(); ++k) {
          Vec om(d);
          for (int c = 0; c < d; ++c) om[c] = rule.nodes[k * d + c];
          const double bw = cfg.b2(dot(u, om) / un);
          if (bw == 0.0) continue;
          const BinaryPost post = binary_collide(v, v1, om);
          inner += rule.w[k] * bw * (phi(post.v) + phi(post.v1) - pre);
        }
        acc += mag * inner;
      }
      bin[b] = scale2 * acc / static_cast<double>(perPair);
    }
    if (doTernary) {
      Rng rng = substream(seed, 3, static_cast<std::uint64_t>(b));
      double acc = 0.0;
      for (long s = 0; s < perTriple; ++s) {
        int i, j, k;
        distinct_triple(rng, N, i, j, k);
        const Vec v = e.velocity(i), v1 = e.velocity(j), v2 = e.velocity(k);
        const RelativeState rs = relative_state(v, v1, v2);
        if (!rs.uBarDefined || !(norm(rs.U) > 0.0)) {
          for (int m = 0; m < M; ++m) uniform_sphere<kMaxStack>(rng, 2 * d);
          continue;
        }
        const double pre = phi(v) + phi(v1) + phi(v2);
        double inner = 0.0;
        for (int m = 0; m < M; ++m) {
          const Vec2 om = uniform_sphere<kMaxStack>(rng, 2 * d);
          const double bw = ternary_cross_section(cfg, rs, om);
          if (bw == 0.0) continue;
          const TernaryPost post = ternary_collide(v, v1, v2, om, TernaryMode::Central);
          inner += bw * (phi(post.v) + phi(post.v1) + phi(post.v2) - pre);
        }
        acc += dirWeight * inner;
      }
      ter[b] = scale3 * acc / static_cast<double>(perTriple);
    }
    tot[b] = bin[b] + ter[b];
  }

  WeakFormEstimate out;
  const BatchStats sb = batch_stats(bin), st = batch_stats(ter), sa = batch_stats(tot);
  out.binary = sb.mean;
  out.binaryStderr = sb.stderr_;
  out.ternary = st.mean;
  out.ternaryStderr = st.stderr_;
  out.value = out.binary + out.ternary;
  out.stderr_ = sa.stderr_;
  out.samplePairs = perPair * nb;
  out.sampleTriples = perTriple * nb;
  out.angularNodes = rule.count() + M;
  out.seed = seed;
  out.lowConfidence = budget.targetStderr > 0.0 && out.stderr_ > budget.targetStderr;
  if (!std::isfinite(out.value) || !std::isfinite(out.stderr_))
    fail(ErrorKind::Numerical, "weakform_estimate: non-finite estimate for " + phi.name());
  return out;
}

CollisionFrequencies collision_frequencies(const Ensemble& e, const Vec& v, const KernelConfig& cfg,
                                           const KernelNorms& norms, long maxPairs, std::uint64_t seed) {
  const int N = e.size();
  const double w = e.weight();
  CollisionFrequencies f;
  double s2 = 0.0;
  for (int j = 0; j < N; ++j) s2 += ipow(norm(v - e.velocity(j)), cfg.gamma2);
  f.nu2 = norms.b2 * w * s2;
  if (N < 2) return f;
  auto term = [&](int j, int k) {
    const Vec a = e.velocity(j), b = e.velocity(k);
    const double ut = std::sqrt(u_tilde_norm2(v, a, b));
    const double un = norm(stack(a - v, b - v));
    return ipow(ut, cfg.gamma3 - cfg.theta3) * ipow(un, cfg.theta3);
  };
  const double pairs = static_cast<double>(N) * (N - 1);
  double s3 = 0.0;
  if (pairs <= static_cast<double>(maxPairs)) {
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        if (j != k) s3 += term(j, k);
  } else {
    f.sampled = true;
    Rng rng = substream(seed, 5, 0);
    double acc = 0.0;
    for (long s = 0; s < maxPairs; ++s) {
      int j, k;
      distinct_pair(rng, N, j, k);
      acc += term(j, k);
    }
    s3 = pairs * acc / static_cast<double>(maxPairs);
  }
  f.nu3 = norms.b3 * w * w * s3;
  return f;
}

OdiReport odi_verify(const Ensemble& e, double q, const KernelConfig& cfg, const CoerciveTables& tables,
                     const Budget& budget, std::uint64_t seed, double sigmas) {
  if (!(q > 2.0)) fail(ErrorKind::InvalidInput, "odi_verify: q must exceed 2");
  return odi_verify(e, odi_constants(q, moment(e, 0.0), moment(e, 2.0), cfg, tables), cfg, budget, seed, sigmas);
}

OdiReport odi_verify(const Ensemble& e, const OdiConstants& constants, const KernelConfig& cfg,
                     const Budget& budget, std::uint64_t seed, double sigmas) {
  const double q = constants.q;
  if (!(q > 2.0)) fail(ErrorKind::InvalidInput, "odi_verify: q must exceed 2");
  OdiReport r;
  r.q = q;
  r.constants = constants;
  r.lhs = weakform_estimate(e, TestFunction::poly(q), cfg, budget, seed);
  r.mq = moment(e, q);
  const double mg2 = moment(e, q + cfg.gamma2), mg3 = moment(e, q + cfg.gamma3);
  const OdiConstants& c = r.constants;
  r.rhsShifted = c.Cq * r.mq - c.CqPrime * (mg2 + mg3);
  r.rhsPower = c.Cq * r.mq - c.CqTilde * (std::pow(r.mq, 1.0 + cfg.gamma2 / (q - 2.0)) +
                                          std::pow(r.mq, 1.0 + cfg.gamma3 / (q - 2.0)));
  r.marginShifted = margin(r.rhsShifted, r.lhs.value, r.lhs.stderr_);
  r.marginPower = margin(r.rhsPower, r.lhs.value, r.lhs.stderr_);
  r.passShifted = r.lhs.value - sigmas * r.lhs.stderr_ <= r.rhsShifted;
  r.passPower = r.lhs.value - sigmas * r.lhs.stderr_ <= r.rhsPower;
  return r;
}

ExpOdiReport odi_verify_exp(const Ensemble& e, double s, int p, const KernelConfig& cfg,
                            const CoerciveTables& tables, const Budget& budget, std::uint64_t seed,
                            double sigmas) {
  if (!(s > 0.0 && s <= 2.0)) fail(ErrorKind::InvalidInput, "odi_verify_exp: s must lie in (0, 2]");
  if (p < 1 || !(s * p > 2.0)) fail(ErrorKind::InvalidInput, "odi_verify_exp: sp must exceed 2");
  ExpOdiReport r;
  r.s = s;
  r.p = p;
  const double sp = s * p;
  const double m0 = moment(e, 0.0), m2 = moment(e, 2.0);
  const CoerciveInputs in = coercive_inputs(tables, sp);
  r.constants = exp_lemma_constants(sp, m0, m2, cfg, in);

  std::vector<double> o2 = series_orders(s, cfg.gamma2, p), o3 = series_orders(s, cfg.gamma3, p);
  const MomentVector mv2 = moments(e, o2), mv3 = moments(e, o3);
  r.sums2 = povzner_sums(mv2, p, s, cfg.gamma2);
  r.sums3 = povzner_sums(mv3, p, s, cfg.gamma3);

  r.lhs = weakform_estimate(e, TestFunction::poly(sp), cfg, budget, seed);
  const ExpLemmaConstants& k = r.constants;
  r.rhs = -k.K1 * moment(e, sp + cfg.gamma2) - k.K2 * moment(e, sp + cfg.gamma3) + k.K3 * moment(e, sp) +
          2.0 * c_gamma2(cfg.gamma2) * in.alpha * r.sums2.S2 + 3.0 * c_gamma3(cfg.gamma3) * in.lambda * r.sums3.S3;
  r.margin = margin(r.rhs, r.lhs.value, r.lhs.stderr_);
  r.pass = r.lhs.value - sigmas * r.lhs.stderr_ <= r.rhs;
  return r;
}

}  // namespace triboltz
