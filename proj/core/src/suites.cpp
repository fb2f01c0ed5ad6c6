#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "triboltz/errors.hpp"
#include "triboltz/harness.hpp"
#include "triboltz/quadrature.hpp"
#include "triboltz/random.hpp"

namespace triboltz {

void SuiteResult::check(bool ok, double residual, const std::function<json()>& witness) {
  ++cases;
  if (std::isfinite(residual)) worst = std::max(worst, residual);
  if (!ok) {
    ++violations;
    if (counterexample.is_null()) counterexample = witness();
  }
}

void SuiteResult::merge(const SuiteResult& o) {
  cases += o.cases;
  violations += o.violations;
  worst = std::max(worst, o.worst);
  if (counterexample.is_null() && !o.counterexample.is_null()) counterexample = o.counterexample;
  details[o.name] = to_json(o);
}

json to_json(const SuiteResult& r) {
  json j{{"name", r.name}, {"pass", r.pass()}, {"cases", r.cases}, {"violations", r.violations},
         {"worst", r.worst}, {"details", r.details}};
  if (!r.counterexample.is_null()) j["counterexample"] = r.counterexample;
  return j;
}

namespace {

constexpr double kPi = std::numbers::pi;

json with(json base, const json& extra) {
  base.update(extra);
  return base;
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json vec_json(const Vec2& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Vec gaussian_vec(Rng& r, int d, double scale) {
  std::normal_distribution<double> g;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = scale * g(r);
  return v;
}

double log_uniform(Rng& r, double lo, double hi) { return std::exp(lo + (hi - lo) * uniform01(r)); }

double rel_gap(double lhs, double rhs) {
  return (lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

// Largest componentwise deviation relative to scale.
double max_dev(std::initializer_list<std::pair<Vec, Vec>> ps, double scale) {
  double m = 0.0;
  for (const auto& [a, b] : ps) m = std::max(m, norm(a - b));
  return m / scale;
}

Ensemble random_ensemble(Rng& r, int d, int N) {
  std::vector<double> flat(static_cast<size_t>(N) * d);
  const double scale = log_uniform(r, std::log(0.1), std::log(10.0));
  std::normal_distribution<double> g;
  for (auto& x : flat) x = scale * g(r) + (uniform01(r) < 0.1 ? 5.0 * scale * g(r) : 0.0);
  return Ensemble(d, std::move(flat), log_uniform(r, std::log(0.01), std::log(10.0)) / N);
}

}  // namespace

Ensemble gaussian_ensemble(int d, int N, double T, std::uint64_t seed) {
  SimConfig sc;
  sc.kernel.d = d;
  sc.N = N;
  sc.seed = seed;
  sc.init.law = InitialData::Law::Maxwellian;
  sc.init.T = T;
  return init_ensemble(sc);
}

Ensemble bimodal_ensemble(int d, int N, double offset, double T, std::uint64_t seed) {
  SimConfig sc;
  sc.kernel.d = d;
  sc.N = N;
  sc.seed = seed;
  sc.init.law = InitialData::Law::GaussianMixture;
  Vec a(d), b(d);
  a[0] = offset;
  b[0] = -offset;
  sc.init.mixture = {{0.5, a, T}, {0.5, b, T}};
  return init_ensemble(sc);
}

SuiteResult kinematics_suite(long collisions, std::uint64_t seed, double tol) {
  SuiteResult res{"kinematics"};
  SuiteResult laws[3] = {SuiteResult("binary"), SuiteResult("ternary_central"), SuiteResult("ternary_adjacent")};
  Rng r = substream(seed, 21, 0);
  for (long n = 0; n < collisions; ++n) {
    const int d = 2 + static_cast<int>(n & 1);
    const int kind = static_cast<int>((n / 2) % 3);
    const double scale = log_uniform(r, std::log(1e-2), std::log(1e2));
    const Vec v = gaussian_vec(r, d, scale), v1 = gaussian_vec(r, d, scale), v2 = gaussian_vec(r, d, scale);
    SuiteResult& s = laws[kind];
    if (kind == 0) {
      const Vec w = uniform_sphere<kMaxDim>(r, d);
      const BinaryPost p = binary_collide(v, v1, w);
      const BinaryPost back = binary_collide(p.v, p.v1, w);
      const double e0 = norm2(v) + norm2(v1);
      const double sc = std::sqrt(e0);
      const double mom = norm((p.v + p.v1) - (v + v1)) / sc;
      const double en = std::abs(norm2(p.v) + norm2(p.v1) - e0) / e0;
      const double inv = max_dev({{back.v, v}, {back.v1, v1}}, sc);
      const double mr = std::abs(dot(p.v1 - p.v, w) + dot(v1 - v, w)) / std::max(norm(v1 - v), 1e-300);
      const double worst = std::max({mom, en, inv, mr});
      s.check(worst <= tol, worst, [&] {
        return json{{"law", "binary"}, {"v", vec_json(v)}, {"v1", vec_json(v1)}, {"omega", vec_json(w)},
                    {"momentum", mom}, {"energy", en}, {"involution", inv}, {"microreversibility", mr}};
      });
    } else {
      const TernaryMode mode = kind == 1 ? TernaryMode::Central : TernaryMode::Adjacent;
      const Vec2 w = uniform_sphere<kMaxStack>(r, 2 * d);
      const TernaryPost p = ternary_collide(v, v1, v2, w, mode);
      const TernaryPost back = ternary_collide(p.v, p.v1, p.v2, w, mode);
      const double e0 = norm2(v) + norm2(v1) + norm2(v2);
      const double sc = std::sqrt(e0);
      const double mom = norm((p.v + p.v1 + p.v2) - (v + v1 + v2)) / sc;
      const double en = std::abs(norm2(p.v) + norm2(p.v1) + norm2(p.v2) - e0) / e0;
      const double inv = max_dev({{back.v, v}, {back.v1, v1}, {back.v2, v2}}, sc);
      const RelativeState a = relative_state(v, v1, v2), b = relative_state(p.v, p.v1, p.v2);
      const Vec2& ua = kind == 1 ? a.U : a.U1;
      const Vec2& ub = kind == 1 ? b.U : b.U1;
      const double mr = std::abs(dot(ub, w) + dot(ua, w)) / std::max(norm(ua), 1e-300);
      const double worst = std::max({mom, en, inv, mr});
      s.check(worst <= tol, worst, [&] {
        return json{{"law", kind == 1 ? "ternary_central" : "ternary_adjacent"},
                    {"v", vec_json(v)}, {"v1", vec_json(v1)}, {"v2", vec_json(v2)}, {"omega", vec_json(w)},
                    {"momentum", mom}, {"energy", en}, {"involution", inv}, {"microreversibility", mr}};
      });
    }
  }
  for (const auto& s : laws) res.merge(s);
  res.details["tolerance"] = tol;
  return res;
}

SuiteResult energy_fraction_suite(long configs, std::uint64_t seed) {
  SuiteResult res{"energy_fractions"};
  SuiteResult tern{"ternary"}, bin{"binary"};
  Rng r = substream(seed, 22, 0);
  for (long n = 0; n < configs; ++n) {
    const int d = 2 + static_cast<int>(n & 1);
    const double scale = log_uniform(r, std::log(1e-2), std::log(1e2));
    const Vec v = gaussian_vec(r, d, scale), v1 = gaussian_vec(r, d, scale), v2 = gaussian_vec(r, d, scale);

    const Vec2 w = uniform_sphere<kMaxStack>(r, 2 * d);
    const ScatteringFrame f = scattering_frame(v, v1, v2, w);
    const auto mu = energy_fractions(f.xi1, f.alpha, f.sigma, f.vHat);
    const TernaryPost p = ternary_collide(v, v1, v2, w);
    const double post[3] = {bracket2(p.v), bracket2(p.v1), bracket2(p.v2)};
    const double sumErr = std::abs(mu[0] + mu[1] + mu[2] - 1.0);
    double kinErr = 0.0;
    for (int i = 0; i < 3; ++i) kinErr = std::max(kinErr, std::abs(mu[i] * f.E3 - post[i]) / f.E3);
    tern.check(sumErr <= 1e-12 && kinErr <= 1e-10, std::max(sumErr, kinErr), [&] {
      return json{{"v", vec_json(v)}, {"v1", vec_json(v1)}, {"v2", vec_json(v2)}, {"omega", vec_json(w)},
                  {"mu", {mu[0], mu[1], mu[2]}}, {"post", {post[0], post[1], post[2]}}, {"E3", f.E3}};
    });

    const Vec wb = uniform_sphere<kMaxDim>(r, d);
    const Vec u = v1 - v;
    const double un = norm(u);
    if (!(un > 0.0)) continue;
    const Vec uh = u * (1.0 / un);
    const Vec sigma = uh - 2.0 * dot(uh, wb) * wb;
    const Vec V = (v + v1) * 0.5;
    Vec vh(d);
    if (norm(V) > 0.0) {
      vh = V * (1.0 / norm(V));
    } else {
      vh[0] = 1.0;
    }
    const double E2 = bracket2(v) + bracket2(v1);
    const auto nu = binary_energy_fractions(un * un / (2.0 * E2), 1.0 - 2.0 / E2, sigma, vh);
    const BinaryPost bp = binary_collide(v, v1, wb);
    const double bpost[2] = {bracket2(bp.v), bracket2(bp.v1)};
    const double bSum = std::abs(nu[0] + nu[1] - 1.0);
    const double bKin = std::max(std::abs(nu[0] * E2 - bpost[0]), std::abs(nu[1] * E2 - bpost[1])) / E2;
    bin.check(bSum <= 1e-12 && bKin <= 1e-10, std::max(bSum, bKin), [&] {
      return json{{"v", vec_json(v)}, {"v1", vec_json(v1)}, {"omega", vec_json(wb)}, {"nu", {nu[0], nu[1]}},
                  {"post", {bpost[0], bpost[1]}}, {"E2", E2}};
    });
  }
  res.merge(tern);
  res.merge(bin);
  return res;
}

SuiteResult cutoff_suite(const KernelConfig& cfg, const CoerciveSearch& search, const std::string& cacheDir) {
  SuiteResult res{"cutoff"};
  SuiteResult closed{"closed_forms"};
  struct Case {
    const char* name;
    int d;
    Arity arity;
    double expected;
  };
  const Case cases[] = {{"binary d=2 b2=1", 2, Arity::Binary, 2.0 * kPi},
                        {"binary d=3 b2=1", 3, Arity::Binary, 4.0 * kPi},
                        {"ternary d=2 theta3=0 phi=1", 2, Arity::Ternary, 2.0 * kPi * kPi}};
  for (const Case& c : cases) {
    KernelConfig k;
    k.d = c.d;
    const double got = cutoff_norm(k, c.arity).value;
    const double err = std::abs(got - c.expected);
    closed.check(err <= 1e-8, err, [&] { return json{{"case", c.name}, {"value", got}, {"expected", c.expected}}; });
    closed.details[c.name] = got;
  }
  res.merge(closed);

  SuiteResult table{"coercive_tables"};
  std::vector<double> orders;
  for (int k = 2; k <= 20; ++k) orders.push_back(k);
  orders.push_back(40.0);
  const CoerciveTables t = coercive_tables(cfg, orders, search, cacheDir);
  const double a1 = t.binary.at(2.0), l1 = t.ternary.at(2.0);
  table.check(std::abs(a1 - t.norms.b2) <= 1e-4, std::abs(a1 - t.norms.b2),
              [&] { return json{{"check", "alpha_1 = ||b2||"}, {"alpha_1", a1}, {"norm", t.norms.b2}}; });
  table.check(std::abs(l1 - t.norms.b3) <= 1e-4, std::abs(l1 - t.norms.b3),
              [&] { return json{{"check", "lambda_1 = ||b3||"}, {"lambda_1", l1}, {"norm", t.norms.b3}}; });
  for (const CoerciveTable* tb : {&t.binary, &t.ternary}) {
    const char* nm = tb->arity == Arity::Binary ? "alpha" : "lambda";
    for (int k = 3; k <= 20; ++k) {
      const double prev = tb->at(k - 1), cur = tb->at(k);
      table.check(cur < prev, (cur - prev) / prev, [&] {
        return json{{"check", std::string(nm) + " strictly decreasing"}, {"k", k}, {"previous", prev}, {"value", cur}};
      });
    }
    const double v2 = tb->at(2.0), v40 = tb->at(40.0);
    table.check(v40 < 0.5 * v2, v40 / (0.5 * v2), [&] {
      return json{{"check", std::string(nm) + "_20 < " + nm + "_1 / 2"}, {"k2", v2}, {"k40", v40}};
    });
    json vals = json::object();
    for (size_t i = 0; i < tb->orders.size(); ++i) vals[std::to_string(static_cast<int>(tb->orders[i]))] = tb->values[i];
    table.details[nm] = vals;
  }
  table.details["norm_b2"] = t.norms.b2;
  table.details["norm_b3"] = t.norms.b3;
  res.merge(table);
  return res;
}

SuiteResult lemma_suite(long n, std::uint64_t seed) {
  SuiteResult res{"lemmas"};
  Rng r = substream(seed, 23, 0);
  const double tol = 1e-12;

  SuiteResult interp{"interpolation"};
  for (long i = 0; i < n; ++i) {
    const Ensemble e = random_ensemble(r, 2 + static_cast<int>(i & 1), 16);
    double s1 = 12.0 * uniform01(r), s2 = 12.0 * uniform01(r);
    if (s1 > s2) std::swap(s1, s2);
    const double s = s1 + (s2 - s1) * uniform01(r);
    const double lhs = moment(e, s), rhs = interpolation_bound(s1, moment(e, s1), s2, moment(e, s2), s);
    const double g = rel_gap(lhs, rhs);
    interp.check(g <= tol, g, [&] { return json{{"s1", s1}, {"s", s}, {"s2", s2}, {"lhs", lhs}, {"rhs", rhs}}; });
  }
  res.merge(interp);

  SuiteResult prod{"product_of_moments"};
  for (long i = 0; i < n; ++i) {
    const Ensemble e = random_ensemble(r, 2 + static_cast<int>(i & 1), 16);
    const double p = 12.0 * uniform01(r);
    const double k = 0.5 * p * uniform01(r);
    const double ii = k + (0.5 * p - k) * uniform01(r);
    const double j = p - ii, l = p - k;
    const ProductWitness w = product_order_bound(e, ii, j, k, l);
    const double g = rel_gap(w.lhs, w.rhs);
    prod.check(g <= tol, g, [&] { return json{{"i", ii}, {"j", j}, {"k", k}, {"l", l}, {"lhs", w.lhs}, {"rhs", w.rhs}}; });
  }
  res.merge(prod);

  SuiteResult gap{"polynomial_gap"};
  long printedViolations = 0;
  double printedWorst = 0.0;
  for (long i = 0; i < n; ++i) {
    const double p = 2.0 + 8.0 * uniform01(r);
    const double x = log_uniform(r, -5.0, 5.0), y = log_uniform(r, -5.0, 5.0), z = log_uniform(r, -5.0, 5.0);
    const GapBound b2 = polynomial_gap_bound(p, x, y), b3 = polynomial_gap_bound(p, x, y, z);
    const GapBound c2 = power_sum_bound(p, x, y), c3 = power_sum_bound(p, x, y, z);
    const GapBound pr = polynomial_gap_bound(p, x, y, z, TrinomialConstant::Printed);
    if (pr.gap > pr.bound) ++printedViolations;
    printedWorst = std::max(printedWorst, pr.gap / pr.bound);
    const double g = std::max({rel_gap(b2.gap, b2.bound), rel_gap(b3.gap, b3.bound), rel_gap(c2.gap, c2.bound),
                               rel_gap(c3.gap, c3.bound)});
    gap.check(g <= tol, g, [&] {
      return json{{"p", p}, {"x", x}, {"y", y}, {"z", z}, {"binary", {b2.gap, b2.bound}}, {"ternary", {b3.gap, b3.bound}},
                  {"sum2", {c2.gap, c2.bound}}, {"sum3", {c3.gap, c3.bound}}};
    });
  }
  gap.details["printed_trinomial_violations"] = printedViolations;
  gap.details["printed_trinomial_worst_ratio"] = printedWorst;
  res.merge(gap);

  SuiteResult dil{"convexity_dilation"};
  for (long i = 0; i < n; ++i) {
    const double k = 2.0 + 10.0 * uniform01(r);
    const int m = 1 + uniform_index(r, 50);
    const double x = log_uniform(r, -3.0, 5.0), y = log_uniform(r, -3.0, 5.0);
    const double mu = uniform01(r);
    const double a = uniform01(r), lam = 1.0 + log_uniform(r, -3.0, 3.0);
    // Convex with zero at the origin: dilation below the chord and superadditivity.
    const double d1 = rel_gap(psi_approx(mu * x, m, k), mu * psi_approx(x, m, k));
    const double d2 = rel_gap(psi_approx(x, m, k) + psi_approx(y, m, k), psi_approx(x + y, m, k));
    // Concave power: (lam x)^a <= lam x^a for lam >= 1.
    const double d3 = rel_gap(std::pow(lam * x, a), lam * std::pow(x, a));
    const double g = std::max({d1, d2, d3});
    dil.check(g <= tol, g, [&] { return json{{"k", k}, {"n", m}, {"x", x}, {"y", y}, {"mu", mu}, {"a", a}, {"lambda", lam}}; });
  }
  res.merge(dil);

  SuiteResult psi{"psi_approximation"};
  for (long i = 0; i < n; ++i) {
    const double k = 2.0 + 10.0 * uniform01(r);
    const int m = 1 + uniform_index(r, 30);
    const double x = 60.0 * uniform01(r);
    const double h = 0.05 + 0.5 * uniform01(r);
    const double pn = psi_approx(x, m, k), pn1 = psi_approx(x, m + 1, k), full = psi_power(x, k);
    double worst = std::max(rel_gap(pn, pn1), rel_gap(pn1, full));
    if (x <= m) worst = std::max(worst, std::abs(pn - full) / std::max(full, 1e-300));
    // Increasing in x and psi_{n+1} - psi_n convex.
    worst = std::max(worst, rel_gap(pn, psi_approx(x + h, m, k)));
    auto diff = [&](double t) { return psi_approx(t, m + 1, k) - psi_approx(t, m, k); };
    const double xl = std::max(x, h);
    const double second = diff(xl - h) + diff(xl + h) - 2.0 * diff(xl);
    const double scale = std::max(psi_power(xl + h, k), 1.0);
    worst = std::max(worst, -second / scale);
    psi.check(worst <= 1e-11, worst, [&] { return json{{"k", k}, {"n", m}, {"x", x}, {"h", h}, {"psi_n", pn}, {"psi_n1", pn1}, {"psi", full}}; });
  }
  res.merge(psi);

  SuiteResult pot{"potential_envelopes"};
  for (long i = 0; i < n; ++i) {
    KernelConfig cfg;
    cfg.d = 2 + static_cast<int>(i & 1);
    cfg.gamma2 = 2.0 * uniform01(r);
    cfg.gamma3 = 2.0 * uniform01(r);
    cfg.theta3 = cfg.gamma3 * uniform01(r);
    const double scale = log_uniform(r, std::log(1e-2), std::log(1e2));
    const Vec v = gaussian_vec(r, cfg.d, scale), v1 = gaussian_vec(r, cfg.d, scale), v2 = gaussian_vec(r, cfg.d, scale);
    const int a = uniform_index(r, 2);
    const Envelope e2 = potential_envelope(cfg, v, v1, {a, 1 - a});
    std::array<int, 3> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), r);
    const Envelope e3 = potential_envelope(cfg, v, v1, v2, perm);
    const double g = std::max({rel_gap(e2.lower, e2.value), rel_gap(e2.value, e2.upper), rel_gap(e3.lower, e3.value),
                               rel_gap(e3.value, e3.upper)});
    pot.check(g <= tol, g, [&] {
      return json{{"gamma2", cfg.gamma2}, {"gamma3", cfg.gamma3}, {"theta3", cfg.theta3}, {"v", vec_json(v)},
                  {"v1", vec_json(v1)}, {"v2", vec_json(v2)}, {"binary", {e2.lower, e2.value, e2.upper}},
                  {"ternary", {e3.lower, e3.value, e3.upper}}};
    });
  }
  res.merge(pot);
  return res;
}

SuiteResult decomposition_suite(const KernelConfig& cfg, long configs, const std::vector<double>& orders,
                                const CoerciveSearch& search, const std::string& cacheDir, std::uint64_t seed) {
  SuiteResult res{"decompositions"};
  const CoerciveTables t = coercive_tables(cfg, orders, search, cacheDir);
  const SphereRule trule = stacked_sphere_rule(cfg.d, 6, 8);
  const SphereRule brule = sphere_rule(cfg.d, cfg.d == 2 ? 32 : 8);
  // Relative slack for the coarse evaluation rule against the fine-rule coercive constants.
  const double tol = 1e-3;
  Rng r = substream(seed, 24, 0);
  for (double k : orders) {
    SuiteResult bin{"binary k=" + std::to_string(static_cast<int>(k))};
    SuiteResult ter{"ternary k=" + std::to_string(static_cast<int>(k))};
    const double alpha = t.binary.at(k), lambda = t.ternary.at(k);
    const Psi psi{k, 0};
    for (long n = 0; n < configs; ++n) {
      const double scale = log_uniform(r, std::log(0.1), std::log(30.0));
      const Vec v = gaussian_vec(r, cfg.d, scale), v1 = gaussian_vec(r, cfg.d, scale * log_uniform(r, -2.0, 2.0));
      const Vec v2 = gaussian_vec(r, cfg.d, scale * log_uniform(r, -2.0, 2.0));
      const Decomposition b = modified_decomposition_binary(v, v1, k, cfg, psi, alpha, t.norms.b2, brule);
      const Decomposition c = modified_decomposition_ternary(v, v1, v2, k, cfg, psi, lambda, t.norms.b3, trule);
      auto eval = [&](SuiteResult& s, const Decomposition& dd, bool tern) {
        const double g = rel_gap(dd.Gtilde, dd.gainBound), l = rel_gap(dd.lossBound, dd.Ltilde);
        const double id = std::abs((dd.Gtilde - dd.Ltilde) - (dd.G - dd.L)) / std::max({dd.G, dd.L, 1e-300});
        const double worst = std::max({g, l, id / tol});
        s.check(g <= tol && l <= tol && id <= 1e-10, worst, [&] {
          json j{{"k", k}, {"v", vec_json(v)}, {"v1", vec_json(v1)}, {"G", dd.G}, {"L", dd.L}, {"Gtilde", dd.Gtilde},
                 {"Ltilde", dd.Ltilde}, {"gainBound", dd.gainBound}, {"lossBound", dd.lossBound}, {"region", dd.region}};
          if (tern) j["v2"] = vec_json(v2);
          return j;
        });
      };
      eval(bin, b, false);
      eval(ter, c, true);
      if (n % 100 == 0) {
        // psi_n mode: gain bound with the cutoff norm, Ltilde nondecreasing in n towards the power value.
        const Psi p1{k, 4}, p2{k, 16};
        const Decomposition a1 = modified_decomposition_ternary(v, v1, v2, k, cfg, p1, lambda, t.norms.b3, trule);
        const Decomposition a2 = modified_decomposition_ternary(v, v1, v2, k, cfg, p2, lambda, t.norms.b3, trule);
        const double g = std::max(rel_gap(a1.Gtilde, a1.gainBound), rel_gap(a2.Gtilde, a2.gainBound));
        ter.check(g <= tol, g, [&] {
          return json{{"mode", "psi_n"}, {"k", k}, {"v", vec_json(v)}, {"v1", vec_json(v1)}, {"v2", vec_json(v2)},
                      {"Gtilde", {a1.Gtilde, a2.Gtilde}}, {"gainBound", {a1.gainBound, a2.gainBound}}};
        });
      }
    }
    bin.details["alpha"] = alpha;
    ter.details["lambda"] = lambda;
    res.merge(bin);
    res.merge(ter);
  }
  res.details["tolerance"] = tol;
  res.details["ternary_rule_nodes"] = trule.count();
  return res;
}

SuiteResult odi_suite(const KernelConfig& cfg, const OdiSuiteOptions& opt, const CoerciveSearch& search,
                      const std::string& cacheDir, std::uint64_t seed) {
  SuiteResult res{"odi"};
  std::vector<double> orders = opt.q;
  orders.insert(orders.end(), opt.sp.begin(), opt.sp.end());
  const CoerciveTables t = coercive_tables(cfg, orders, search, cacheDir);
  struct Named {
    const char* name;
    Ensemble e;
  };
  const Named ens[] = {{"gaussian", gaussian_ensemble(cfg.d, opt.N, 1.0, seed)},
                       {"bimodal", bimodal_ensemble(cfg.d, opt.N, 2.0, 0.25, seed + 1)}};
  std::uint64_t sub = 0;
  for (const Named& nm : ens) {
    SuiteResult s{nm.name};
    const double m0 = moment(nm.e, 0.0), m2 = moment(nm.e, 2.0);
    for (double q : opt.q) {
      OdiConstants c = odi_constants(q, m0, m2, cfg, t);
      if (opt.corruptCq) c.Cq = 0.0;
      const OdiReport rep = odi_verify(nm.e, c, cfg, opt.budget, seed + 100 + sub++, opt.sigmas);
      json j{{"form", "prop"}, {"q", q}, {"lhs", rep.lhs.value}, {"stderr", rep.lhs.stderr_}, {"mq", rep.mq},
             {"rhsShifted", rep.rhsShifted}, {"rhsPower", rep.rhsPower}, {"Cq", c.Cq}, {"CqPrime", c.CqPrime},
             {"CqTilde", c.CqTilde}};
      s.details["q=" + std::to_string(static_cast<int>(q))] = j;
      s.check(rep.passShifted, -rep.marginShifted, [&] { return with(j, {{"ensemble", nm.name}, {"rhs", "shifted"}}); });
      s.check(rep.passPower, -rep.marginPower, [&] { return with(j, {{"ensemble", nm.name}, {"rhs", "power"}}); });
    }
    for (double sp : opt.sp) {
      const int p = static_cast<int>(std::lround(sp / opt.expS));
      if (std::abs(p * opt.expS - sp) > 1e-12)
        fail(ErrorKind::Config, "verify_sp entries must be integer multiples of verify_exp_s");
      const ExpOdiReport rep = odi_verify_exp(nm.e, opt.expS, p, cfg, t, opt.budget, seed + 100 + sub++, opt.sigmas);
      json j{{"form", "exp"}, {"s", opt.expS}, {"p", p}, {"lhs", rep.lhs.value}, {"stderr", rep.lhs.stderr_},
             {"rhs", rep.rhs}, {"K1", rep.constants.K1}, {"K2", rep.constants.K2}, {"K3", rep.constants.K3}};
      s.details["sp=" + std::to_string(static_cast<int>(sp))] = j;
      s.check(rep.pass, -rep.margin, [&] { return with(j, {{"ensemble", nm.name}}); });
    }
    s.details["m0"] = m0;
    s.details["m2"] = m2;
    res.merge(s);
  }
  res.details["corrupt_cq"] = opt.corruptCq;
  return res;
}

SuiteResult stationarity_suite(const KernelConfig& cfg, const StationarityOptions& opt, std::uint64_t seed) {
  SuiteResult res{"stationarity"};
  SuiteResult wf{"weak_form"};
  const Ensemble g = gaussian_ensemble(cfg.d, opt.wfN, 1.0, seed);
  const WeakFormEstimate est = weakform_estimate(g, TestFunction::poly(4.0), cfg, opt.budget, seed + 1);
  const double z = std::abs(est.value) / std::max(est.stderr_, 1e-300);
  wf.check(std::abs(est.value) <= opt.sigmas * est.stderr_, z,
           [&] { return json{{"value", est.value}, {"stderr", est.stderr_}}; });
  wf.details = {{"value", est.value}, {"stderr", est.stderr_}, {"binary", est.binary}, {"ternary", est.ternary}};
  res.merge(wf);

  SuiteResult ds{"dsmc"};
  SimConfig sc;
  sc.kernel = cfg;
  sc.N = opt.N;
  sc.dt = opt.dt;
  sc.tEnd = opt.tEnd;
  sc.seed = seed + 2;
  sc.outputEvery = 1;
  sc.outputOrders = {4.0};
  const MomentTrajectory tr = run(sc);
  const double m40 = tr.rows.front().moments[0];
  double worst = 0.0, tWorst = 0.0;
  for (const auto& row : tr.rows) {
    const double dev = std::abs(row.moments[0] / m40 - 1.0);
    if (dev > worst) {
      worst = dev;
      tWorst = row.t;
    }
  }
  ds.check(worst <= opt.tolerance, worst / opt.tolerance,
           [&] { return json{{"max_relative_deviation", worst}, {"t", tWorst}, {"m4_0", m40}}; });
  ds.details = {{"m4_0", m40}, {"m4_end", tr.rows.back().moments[0]}, {"max_relative_deviation", worst},
                {"t_worst", tWorst}, {"energy_drift", tr.energyDrift}, {"momentum_drift", tr.momentumDrift},
                {"events_binary", tr.rows.back().eventsBinary}, {"events_ternary", tr.rows.back().eventsTernary}};
  res.merge(ds);
  return res;
}

SuiteResult generator_suite(const KernelConfig& cfg, const GeneratorOptions& opt, std::uint64_t seed) {
  SuiteResult res{"generator"};
  SimConfig sc;
  sc.kernel = cfg;
  sc.N = opt.N;
  sc.dt = opt.h / 4.0;
  sc.seed = seed;
  sc.trackOrder = 4.0;
  sc.init.law = InitialData::Law::GaussianMixture;
  Vec a(cfg.d), b(cfg.d);
  a[0] = 2.0;
  b[0] = -2.0;
  sc.init.mixture = {{0.5, a, 0.25}, {0.5, b, 0.25}};
  Simulator sim(sc);
  json rows = json::array();
  std::uint64_t sub = 0;
  for (double tc : opt.checkpoints) {
    if (tc - opt.h < sim.time() - 1e-9 * opt.h) fail(ErrorKind::InvalidInput, "generator_suite: checkpoints closer than 2h");
    sim.advance_to(tc - opt.h);
    const StepStats s1 = sim.advance_to(tc);
    const WeakFormEstimate wf = weakform_estimate(sim.ensemble(), TestFunction::poly(4.0), cfg, opt.budget, seed + 50 + sub++);
    const StepStats s2 = sim.advance_to(tc + opt.h);
    const double fd = (s1.tracked + s2.tracked) / (2.0 * opt.h);
    const double sfd = std::sqrt(s1.trackedSquares + s2.trackedSquares) / (2.0 * opt.h);
    const double sig = std::hypot(sfd, wf.stderr_);
    const double z = (fd - wf.value) / sig;
    json j{{"t", tc}, {"fd", fd}, {"fd_sigma", sfd}, {"weakform", wf.value}, {"weakform_stderr", wf.stderr_}, {"z", z}};
    rows.push_back(j);
    res.check(std::abs(z) <= opt.sigmas, std::abs(z), [&] { return j; });
  }
  res.details["checkpoints"] = rows;
  res.details["h"] = opt.h;
  res.details["N"] = opt.N;
  return res;
}

namespace {

size_t order_index(const MomentTrajectory& tr, double k) {
  for (size_t i = 0; i < tr.orders.size(); ++i)
    if (std::abs(tr.orders[i] - k) <= 1e-12 * std::max(1.0, k)) return i;
  fail(ErrorKind::InvalidInput, "trajectory does not record order " + std::to_string(k));
}

}  // namespace

EnvelopeRun envelope_run(SimConfig sc, double q, double sigmas, const std::vector<double>& smallTimes,
                         const CoerciveSearch& search, const std::string& cacheDir) {
  for (double k : {q, 2.0 * q})
    if (std::find(sc.outputOrders.begin(), sc.outputOrders.end(), k) == sc.outputOrders.end()) sc.outputOrders.push_back(k);
  EnvelopeRun out;
  out.traj = run(sc);
  const MomentTrajectory& tr = out.traj;
  const size_t iq = order_index(tr, q), i2q = order_index(tr, 2.0 * q);
  const double m0 = tr.rows.front().m0, m2 = tr.rows.front().m2;
  const double mq0 = tr.rows.front().moments[iq];
  const CoerciveTables t = coercive_tables(sc.kernel, {q}, search, cacheDir);
  out.tableKeys = {t.binary.key, t.ternary.key};
  out.odi = odi_constants(q, m0, m2, sc.kernel, t);
  out.env = generation_envelope(out.odi, mq0);
  const EnvelopeSet& env = out.env;

  SuiteResult res{"envelopes"};
  SuiteResult gen{"generation"}, prop{"propagation"}, tight{"combined_vs_single"};
  double supLower = 0.0, supT = 0.0;
  for (const auto& row : tr.rows) {
    const double mq = row.moments[iq], m2q = row.moments[i2q];
    const double sd = std::sqrt(std::max(0.0, row.m0 * m2q - mq * mq) / sc.N);
    const double lower = std::max(mq - sigmas * sd, 1e-300);
    EnvelopeRow er{row.t, mq, sd, -HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
    if (lower > supLower) {
      supLower = lower;
      supT = row.t;
    }
    if (row.t > 0.0) {
      auto one = [&](const char* which, double logEnv) {
        const double g = std::log(lower) - logEnv;
        gen.check(g <= 0.0, g, [&] {
          return json{{"envelope", which}, {"t", row.t}, {"mq", mq}, {"sd", sd}, {"log_envelope", logEnv}};
        });
      };
      er.logCombined = env.log_combined(row.t);
      one("combined", er.logCombined);
      if (env.has2) one("gamma2", er.logSingle2 = env.log_single(row.t, 2));
      if (env.has3) one("gamma3", er.logSingle3 = env.log_single(row.t, 3));
    }
    out.rows.push_back(er);
  }
  const double gp = std::log(supLower) - env.logMq;
  prop.check(gp <= 0.0, gp, [&] { return json{{"sup_mq_lower", supLower}, {"t", supT}, {"log_Mq", env.logMq}}; });
  prop.details = {{"sup_mq_lower", supLower}, {"log_Mq", env.logMq}, {"mq0", mq0}};

  if (env.has2 && env.has3 && sc.kernel.gamma2 != sc.kernel.gamma3) {
    json rows = json::array();
    for (double ts : smallTimes) {
      const double c = env.log_combined(ts), s2 = env.log_single(ts, 2), s3 = env.log_single(ts, 3);
      const double slack = 1e-12 * std::abs(c);
      rows.push_back({{"t", ts}, {"log_combined", c}, {"log_single2", s2}, {"log_single3", s3},
                      {"combined_minus_single2", c - s2}, {"combined_minus_single3", c - s3}});
      for (int i : {2, 3}) {
        const double s = i == 2 ? s2 : s3;
        tight.check(c <= s + slack, c - s, [&] {
          return json{{"t", ts}, {"single", i}, {"log_combined", c}, {"log_single", s}, {"log_Kq2", env.logKq2},
                      {"log_Kq3", env.logKq3}};
        });
      }
    }
    tight.details["comparisons"] = rows;
    tight.details["branch_switches"] = env.branch_switches();
  }
  gen.details = {{"rows", tr.rows.size()}};
  res.merge(gen);
  res.merge(prop);
  if (tight.cases) res.merge(tight);
  res.details["constants"] = {{"q", q},
                              {"Cq", out.odi.Cq},
                              {"CqPrime", out.odi.CqPrime},
                              {"CqTilde", out.odi.CqTilde},
                              {"log_Kq2", env.logKq2},
                              {"log_Kq3", env.logKq3},
                              {"log_Kq", env.logKq},
                              {"log_Mq", env.logMq},
                              {"Kq", env.Kq},
                              {"Mq", env.Mq}};
  res.details["m0"] = m0;
  res.details["m2"] = m2;
  out.result = res;
  return out;
}

SuiteResult envelope_suite(const KernelConfig& cfg, const EnvelopeOptions& opt, const CoerciveSearch& search,
                           const std::string& cacheDir, std::uint64_t seed, MomentTrajectory* trajectory) {
  SimConfig sc;
  sc.kernel = cfg;
  sc.N = opt.N;
  sc.dt = opt.dt;
  sc.tEnd = opt.tEnd;
  sc.seed = seed;
  sc.outputEvery = 1;
  sc.outputOrders = {opt.q, 2.0 * opt.q};
  sc.init.law = InitialData::Law::Ball;
  sc.init.R = opt.R;
  EnvelopeRun er = envelope_run(sc, opt.q, opt.sigmas, opt.smallTimes, search, cacheDir);
  if (trajectory) *trajectory = std::move(er.traj);
  return er.result;
}

ExpGenerationResult exp_generation_search(const MomentTrajectory& traj, double gamma, int terms, double threshold,
                                          double tolerance) {
  std::vector<MomentVector> mv;
  for (const auto& row : traj.rows) mv.push_back({traj.orders, row.moments});
  const double m0 = traj.rows.front().m0;
  auto worst = [&](double a) {
    double w = 0.0;
    for (size_t i = 0; i < mv.size(); ++i) {
      const double t = traj.rows[i].t;
      w = std::max(w, exp_partial_sum(mv[i], gamma, a * std::min(1.0, t), terms) / m0);
    }
    return w;
  };
  ExpGenerationResult r;
  double lo = 0.0, hi = 1.0;
  if (worst(hi) <= threshold) {
    lo = hi;
  } else {
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (worst(mid) <= threshold ? lo : hi) = mid;
    }
  }
  r.a = lo;
  r.tightestThreshold = worst(lo);
  for (size_t i = 0; i < mv.size(); ++i) {
    const double t = traj.rows[i].t;
    r.times.push_back(t);
    r.bound.push_back(exp_partial_sum(mv[i], gamma, r.a * std::min(1.0, t), terms));
  }
  return r;
}

SuiteResult exp_generation_suite(const std::vector<KernelConfig>& kernels, const ExpGenerationOptions& opt,
                                 std::uint64_t seed) {
  SuiteResult res{"exp_generation"};
  for (const KernelConfig& cfg : kernels) {
    const double g = cfg.gamma();
    SimConfig sc;
    sc.kernel = cfg;
    sc.N = opt.N;
    sc.dt = opt.dt;
    sc.tEnd = opt.tEnd;
    sc.seed = seed;
    sc.outputEvery = 1;
    sc.init.law = InitialData::Law::Ball;
    sc.init.R = opt.R;
    sc.outputOrders.clear();
    for (int p = 0; p <= opt.terms; ++p) sc.outputOrders.push_back(g * p);
    std::sort(sc.outputOrders.begin(), sc.outputOrders.end());
    sc.outputOrders.erase(std::unique(sc.outputOrders.begin(), sc.outputOrders.end()), sc.outputOrders.end());
    const MomentTrajectory tr = run(sc);
    const ExpGenerationResult er = exp_generation_search(tr, g, opt.terms, opt.threshold, opt.tolerance);
    char name[64];
    std::snprintf(name, sizeof name, "gamma2=%g gamma3=%g", cfg.gamma2, cfg.gamma3);
    SuiteResult s{name};
    s.check(er.a >= opt.tolerance, opt.tolerance / std::max(er.a, 1e-300), [&] {
      return json{{"gamma2", cfg.gamma2}, {"gamma3", cfg.gamma3}, {"a", er.a}};
    });
    s.details = {{"a", er.a}, {"tightest_threshold", er.tightestThreshold}, {"threshold", opt.threshold},
                 {"terms", opt.terms}, {"rows", tr.rows.size()}};
    res.merge(s);
  }
  return res;
}

SuiteResult series_suite(long sequences, int maxTerms, std::uint64_t seed) {
  SuiteResult res{"series"};
  Rng r = substream(seed, 25, 0);
  for (long n = 0; n < sequences; ++n) {
    const double s = 0.1 + 1.9 * uniform01(r);
    const double shift = 2.0 * uniform01(r);
    const int terms = 1 + uniform_index(r, maxTerms);
    const int p0 = uniform_index(r, terms + 1);
    const double z = log_uniform(r, -4.0, 2.0);
    MomentVector m;
    m.orders = series_orders(s, shift, terms);
    // Only nonnegativity is assumed; values span many decades and include zeros.
    for (size_t i = 0; i < m.orders.size(); ++i) m.values.push_back(uniform01(r) < 0.05 ? 0.0 : log_uniform(r, -8.0, 8.0));
    const SeriesWitness w = series_bound_check(m, s, shift, z, terms, p0);
    const double g = std::max(rel_gap(w.lhs2, w.rhs2), rel_gap(w.lhs3, w.rhs3));
    res.check(w.holds, g, [&] {
      return json{{"s", s}, {"shift", shift}, {"n", terms}, {"p0", p0}, {"z", z}, {"orders", m.orders},
                  {"values", m.values}, {"lhs2", w.lhs2}, {"rhs2", w.rhs2}, {"lhs3", w.lhs3}, {"rhs3", w.rhs3}};
    });
  }
  res.details["max_terms"] = maxTerms;
  return res;
}

SuiteResult convolution_suite(const KernelConfig& cfg, int N, double radius, int gridPerAxis, std::uint64_t seed) {
  SuiteResult res{"convolution"};
  const Ensemble e = gaussian_ensemble(cfg.d, N, 1.0, seed);
  const double g = cfg.gamma();
  const int d = cfg.d;
  const double* x = e.data();
  double best = std::numeric_limits<double>::infinity();
  Vec arg(d);
  std::vector<int> idx(d, 0);
  const double step = 2.0 * radius / (gridPerAxis - 1);
  long points = 0;
  for (;;) {
    Vec v(d);
    for (int k = 0; k < d; ++k) v[k] = -radius + step * idx[k];
    if (norm(v) <= radius) {
      double s = 0.0;
      for (int j = 0; j < N; ++j) {
        double r2 = 0.0;
        for (int k = 0; k < d; ++k) {
          const double dv = v[k] - x[static_cast<size_t>(j) * d + k];
          r2 += dv * dv;
        }
        s += std::pow(r2, 0.5 * g);
      }
      const double ratio = e.weight() * s / std::pow(bracket(v), g);
      ++points;
      if (ratio < best) {
        best = ratio;
        arg = v;
      }
    }
    int k = 0;
    while (k < d && ++idx[k] == gridPerAxis) idx[k++] = 0;
    if (k == d) break;
  }
  res.check(best > 0.0 && std::isfinite(best), best, [&] { return json{{"min_ratio", best}, {"argmin", vec_json(arg)}}; });
  res.details = {{"min_ratio", best}, {"argmin", vec_json(arg)}, {"gamma", g}, {"grid_points", points},
                 {"radius", radius}, {"N", N}};
  return res;
}

namespace {

double neg_L(double x, void* p) { return -static_cast<const WellPosedConstants*>(p)->L(x); }

double brent_max(const WellPosedConstants& w) {
  gsl_set_error_handler_off();
  gsl_function F{&neg_L, const_cast<WellPosedConstants*>(&w)};
  gsl_min_fminimizer* m = gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent);
  // Start inside the bracket at the golden point of [0, x*].
  const double lo = 0.0, hi = w.xStar, x0 = 0.382 * w.xStar;
  if (gsl_min_fminimizer_set(m, &F, x0, lo, hi) != GSL_SUCCESS) {
    gsl_min_fminimizer_free(m);
    fail(ErrorKind::Numerical, "wellposed: Brent bracket rejected");
  }
  for (int it = 0; it < 200; ++it) {
    gsl_min_fminimizer_iterate(m);
    const double a = gsl_min_fminimizer_x_lower(m), b = gsl_min_fminimizer_x_upper(m);
    if (gsl_min_test_interval(a, b, 0.0, 1e-12) == GSL_SUCCESS) break;
  }
  const double best = -gsl_min_fminimizer_f_minimum(m);
  gsl_min_fminimizer_free(m);
  return best;
}

}  // namespace

SuiteResult wellposed_suite(const KernelConfig& cfg, const CoerciveSearch& search, const std::string& cacheDir) {
  SuiteResult res{"wellposed"};
  const double q = 2.0 + 2.0 * cfg.gamma();
  const CoerciveTables t = coercive_tables(cfg, {q}, search, cacheDir);
  const double m0 = 1.0, m2 = 1.0 + cfg.d;
  const WellPosedConstants w = wellposed_constants(m0, m2, cfg, t);
  // Each term of L is of size 2 C x*; the root is checked relative to it.
  const double scale = 2.0 * w.C * w.xStar;
  const double root = std::abs(w.L(w.xStar)) / scale;
  res.check(root <= 1e-10, root, [&] { return json{{"check", "L(x*) = 0"}, {"L", w.L(w.xStar)}, {"scale", scale}}; });
  res.check(w.L(0.0) == 0.0, std::abs(w.L(0.0)), [&] { return json{{"check", "L(0) = 0"}, {"L0", w.L(0.0)}}; });

  const double brent = brent_max(w);
  const double rb = std::abs(brent - w.LStar) / w.LStar;
  res.check(rb <= 1e-6, rb, [&] { return json{{"check", "Brent max L = L*"}, {"max", brent}, {"LStar", w.LStar}}; });
  double grid = 0.0;
  const int G = 200000;
  for (int i = 0; i <= G; ++i) grid = std::max(grid, w.L(w.xStar * i / G));
  const double rg = std::abs(grid - w.LStar) / w.LStar;
  res.check(rg <= 1e-6, rg, [&] { return json{{"check", "grid max L = L*"}, {"max", grid}, {"LStar", w.LStar}}; });

  // Substitution oracle: C = C~ gives x* = 16 and A = 16 (1 + 8 C / 27).
  for (double c : {0.5, 1.0, 3.7, 1e3, 1e7}) {
    OdiConstants o;
    o.Cq = c;
    o.CqTilde = c;
    const WellPosedConstants s = wellposed_constants(o);
    const double ea = std::abs(s.A - 16.0 * (1.0 + 8.0 * c / 27.0)) / s.A;
    const double ex = std::abs(s.xStar - 16.0) / 16.0;
    res.check(ea <= 1e-12 && ex <= 1e-12, std::max(ea, ex),
              [&] { return json{{"check", "C = C~ substitution"}, {"C", c}, {"xStar", s.xStar}, {"A", s.A}}; });
  }
  const double rA = std::abs(w.A - (w.xStar + brent)) / w.A;
  res.check(rA <= 1e-6, rA, [&] { return json{{"check", "A = x* + max L"}, {"A", w.A}, {"oracle", w.xStar + brent}}; });
  res.details = {{"q", q}, {"m0", m0}, {"m2", m2}, {"C", w.C}, {"CTilde", w.Ct}, {"xStar", w.xStar},
                 {"LStar", w.LStar}, {"A", w.A}, {"brent_max", brent}, {"grid_max", grid}, {"root_residual", root}};
  return res;
}

}  // namespace triboltz
