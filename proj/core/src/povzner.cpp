#include "triboltz/povzner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "json.hpp"
#include "triboltz/errors.hpp"
#include "triboltz/kinematics.hpp"
#include "triboltz/moments.hpp"

namespace triboltz {

namespace {

// x^h for x >= 0 with fast paths for integer and half-integer h.
struct PowerFn {
  double h;
  int whole = -1;
  bool half = false;
  explicit PowerFn(double h_) : h(h_) {
    const double r = std::round(2.0 * h);
    if (std::abs(2.0 * h - r) < 1e-14 && r <= 128.0) {
      whole = static_cast<int>(r) / 2;
      half = static_cast<int>(r) % 2 == 1;
    }
  }
  double operator()(double x) const {
    if (x <= 0.0) return 0.0;
    if (whole < 0) return std::pow(x, h);
    double r = 1.0, b = x;
    for (int e = whole; e > 0; e >>= 1) {
      if (e & 1) r *= b;
      b *= b;
    }
    return half ? r * std::sqrt(x) : r;
  }
};

double abs_pow(double x, double p) { return p == 0.0 ? 1.0 : std::pow(std::abs(x), p); }

// Hyperspherical angles to a unit vector of length n = size(angles) + 1.
void unit_from_angles(const double* ang, int n, double* out) {
  double s = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    out[i] = s * std::cos(ang[i]);
    s *= std::sin(ang[i]);
  }
  out[n - 1] = s;
}

double unit_interval(double x) { return 0.5 * (1.0 - std::cos(x)); }

struct Objective {
  virtual ~Objective() = default;
  virtual int dims() const = 0;
  virtual double eval(const double* x) const = 0;
  // Grid range for coordinate i: [0, upper(i)].
  virtual double upper(int i) const = 0;
  virtual bool includes_endpoint(int i) const = 0;
};

struct TernaryObjective final : Objective {
  double k;
  const KernelConfig* cfg;
  const TernaryGainRule* rule;
  int dims() const override { return 2 + 2 * cfg->d - 1; }
  double upper(int i) const override {
    if (i < 2) return std::numbers::pi;
    return i == dims() - 1 ? 2.0 * std::numbers::pi : std::numbers::pi;
  }
  bool includes_endpoint(int i) const override { return i < 2; }
  double eval(const double* x) const override {
    const int d = cfg->d;
    const double alpha = unit_interval(x[0]);
    const double xi = alpha * unit_interval(x[1]);
    Vec2 p(2 * d);
    unit_from_angles(x + 2, 2 * d, p.data());
    Vec e(d);
    e[0] = 1.0;
    return gain_average_ternary(k, xi, alpha, ellipsoid_chart(p), e, *cfg, *rule);
  }
};

struct BinaryObjective final : Objective {
  double k;
  const KernelConfig* cfg;
  const BinaryGainRule* rule;
  int dims() const override { return 2 + cfg->d - 1; }
  double upper(int i) const override {
    if (i < 2) return std::numbers::pi;
    return i == dims() - 1 ? 2.0 * std::numbers::pi : std::numbers::pi;
  }
  bool includes_endpoint(int i) const override { return i < 2; }
  double eval(const double* x) const override {
    const int d = cfg->d;
    const double beta = unit_interval(x[0]);
    const double xi = beta * unit_interval(x[1]);
    Vec uh(d);
    unit_from_angles(x + 2, d, uh.data());
    Vec e(d);
    e[0] = 1.0;
    return gain_average_binary(k, xi, beta, uh, e, *cfg, *rule);
  }
};

double gsl_negated(const gsl_vector* x, void* params) {
  const auto* obj = static_cast<const Objective*>(params);
  return -obj->eval(gsl_vector_const_ptr(x, 0));
}

struct LocalResult {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

LocalResult nelder_mead(const Objective& obj, const std::vector<double>& start, double step, int maxIter, double tol) {
  const int n = obj.dims();
  gsl_multimin_function fn{&gsl_negated, static_cast<size_t>(n), const_cast<Objective*>(&obj)};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* ss = gsl_vector_alloc(n);
  for (int i = 0; i < n; ++i) gsl_vector_set(x, i, start[i]);
  gsl_vector_set_all(ss, step);
  gsl_multimin_fminimizer* m = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);
  gsl_multimin_fminimizer_set(m, &fn, x, ss);
  LocalResult r;
  int it = 0;
  for (; it < maxIter; ++it) {
    if (gsl_multimin_fminimizer_iterate(m) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(m), tol) == GSL_SUCCESS) {
      r.converged = true;
      break;
    }
  }
  const gsl_vector* best = gsl_multimin_fminimizer_x(m);
  r.x.assign(gsl_vector_const_ptr(best, 0), gsl_vector_const_ptr(best, 0) + n);
  r.value = -gsl_multimin_fminimizer_minimum(m);
  r.evaluations = it * (n + 1);
  gsl_multimin_fminimizer_free(m);
  gsl_vector_free(ss);
  gsl_vector_free(x);
  return r;
}

struct SearchOutcome {
  std::vector<double> x;
  double value = 0.0;
  bool converged = false;
  int evaluations = 0;
};

SearchOutcome grid_then_refine(const Objective& obj, const CoerciveSearch& s) {
  const int n = obj.dims();
  const int g = std::max(2, s.gridPerAxis);
  std::vector<int> idx(n, 0);
  std::vector<double> x(n);
  std::vector<std::pair<double, std::vector<double>>> pts;
  int evals = 0;
  while (true) {
    for (int i = 0; i < n; ++i)
      x[i] = obj.includes_endpoint(i) ? obj.upper(i) * (idx[i] + 1.0) / g : obj.upper(i) * (idx[i] + 0.5) / g;
    pts.emplace_back(obj.eval(x.data()), x);
    ++evals;
    int c = 0;
    while (c < n && ++idx[c] == g) idx[c++] = 0;
    if (c == n) break;
  }
  const int starts = std::min<int>(s.starts, static_cast<int>(pts.size()));
  std::partial_sort(pts.begin(), pts.begin() + starts, pts.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  SearchOutcome out;
  out.value = -1.0;
  for (int i = 0; i < starts; ++i) {
    const double step = 0.5 * std::numbers::pi / g;
    LocalResult r = nelder_mead(obj, pts[i].second, step, s.maxIterations, s.tolerance);
    evals += r.evaluations;
    if (pts[i].first > r.value) {
      r.value = pts[i].first;
      r.x = pts[i].second;
    }
    if (r.value > out.value) {
      out.value = r.value;
      out.x = r.x;
      out.converged = r.converged;
    }
  }
  out.evaluations = evals;
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

TernaryGainRule make_ternary_gain_rule(const KernelConfig& cfg, int nTheta, int nSphere) {
  const int d = cfg.d;
  const SphereRule s = stacked_sphere_rule(d, nTheta, nSphere);
  TernaryGainRule r;
  r.d = d;
  const int m = s.count(), n = 2 * d;
  r.omega = s.nodes;
  r.a1.resize(static_cast<size_t>(m) * d);
  r.a2.resize(static_cast<size_t>(m) * d);
  r.weight.resize(m);
  r.inv.resize(m);
  for (int i = 0; i < m; ++i) {
    const double* w = &s.nodes[static_cast<size_t>(i) * n];
    double c = 0.0;
    for (int j = 0; j < d; ++j) {
      c += w[j] * w[d + j];
      r.a1[i * d + j] = 2.0 * w[j] + w[d + j];
      r.a2[i * d + j] = w[j] + 2.0 * w[d + j];
    }
    r.weight[i] = s.w[i] * cfg.phi(c);
    r.inv[i] = 1.0 / (1.0 + c);
  }
  return r;
}

BinaryGainRule make_binary_gain_rule(const KernelConfig& cfg, int n) {
  const SphereRule s = sphere_rule(cfg.d, n);
  return {cfg.d, s.nodes, s.w};
}

double gain_average_ternary(double k, double xi, double alpha, const Vec2& uBar, const Vec& vHat,
                            const KernelConfig& cfg, const TernaryGainRule& rule) {
  if (!(k >= 2.0)) fail(ErrorKind::InvalidInput, "gain_average_ternary: k must be >= 2");
  if (!(xi >= 0.0 && xi <= 1.0 && alpha >= 0.0 && alpha <= 1.0))
    fail(ErrorKind::InvalidInput, "gain_average_ternary: xi and alpha must lie in [0,1]");
  const int d = rule.d, n = 2 * d;
  const PowerFn pw(0.5 * k);
  const double r = 2.0 * std::sqrt(std::max(0.0, alpha * xi - xi * xi));
  const double th = cfg.theta3;
  double sum = 0.0;
  const int m = rule.count();
  for (int i = 0; i < m; ++i) {
    const double* w = &rule.omega[static_cast<size_t>(i) * n];
    double x = 0.0;
    for (int j = 0; j < n; ++j) x += uBar[j] * w[j];
    const double c = x * rule.inv[i];
    const double* a1 = &rule.a1[i * d];
    const double* a2 = &rule.a2[i * d];
    double vs = 0.0, vt1 = 0.0, vt2 = 0.0, ns = 0.0, nt1 = 0.0, nt2 = 0.0;
    for (int j = 0; j < d; ++j) {
      const double s1 = uBar[j] - c * a1[j];
      const double s2 = uBar[d + j] - c * a2[j];
      const double sp = s1 + s2, t1 = 2.0 * s1 - s2, t2 = 2.0 * s2 - s1;
      vs += vHat[j] * sp;
      vt1 += vHat[j] * t1;
      vt2 += vHat[j] * t2;
      ns += sp * sp;
      nt1 += t1 * t1;
      nt2 += t2 * t2;
    }
    const double mu = (1.0 - r * vs + xi * (ns - 1.0)) / 3.0;
    const double mu1 = (1.0 + r * vt1 + xi * (nt1 - 1.0)) / 3.0;
    const double mu2 = (1.0 + r * vt2 + xi * (nt2 - 1.0)) / 3.0;
    double wt = rule.weight[i];
    if (th != 0.0) wt *= abs_pow(x, th);
    sum += wt * (pw(mu) + pw(mu1) + pw(mu2));
  }
  if (!std::isfinite(sum)) fail(ErrorKind::Numerical, "gain_average_ternary: non-finite quadrature sum");
  return sum;
}

double gain_average_binary(double k, double xi, double beta, const Vec& uHat, const Vec& vHat,
                           const KernelConfig& cfg, const BinaryGainRule& rule) {
  if (!(k >= 2.0)) fail(ErrorKind::InvalidInput, "gain_average_binary: k must be >= 2");
  if (!(xi >= 0.0 && xi <= 1.0 && beta >= 0.0 && beta <= 1.0))
    fail(ErrorKind::InvalidInput, "gain_average_binary: xi and beta must lie in [0,1]");
  const int d = rule.d;
  const PowerFn pw(0.5 * k);
  const double r = std::sqrt(std::max(0.0, xi * (beta - xi)));
  double sum = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    const double* w = &rule.omega[static_cast<size_t>(i) * d];
    double c = 0.0;
    for (int j = 0; j < d; ++j) c += uHat[j] * w[j];
    double vs = 0.0;
    for (int j = 0; j < d; ++j) vs += vHat[j] * (uHat[j] - 2.0 * c * w[j]);
    sum += rule.weight[i] * cfg.b2(c) * (pw(0.5 - r * vs) + pw(0.5 + r * vs));
  }
  return sum;
}

namespace {

CoerciveResult finish(const Objective& coarse, const Objective& fine, const CoerciveSearch& s) {
  SearchOutcome o = grid_then_refine(coarse, s);
  CoerciveResult res;
  res.coarseValue = o.value;
  res.evaluations = o.evaluations;
  // Polish on the fine rule from the coarse maximizer.
  LocalResult p = nelder_mead(fine, o.x, 0.05, std::max(50, s.maxIterations / 3), s.tolerance);
  const double atCoarse = fine.eval(o.x.data());
  res.evaluations += p.evaluations + 1;
  if (atCoarse >= p.value) {
    res.value = atCoarse;
    p.x = o.x;
  } else {
    res.value = p.value;
  }
  res.argmax = p.x;
  res.converged = o.converged;
  res.quadratureError = std::abs(res.value - coarse.eval(p.x.data()));
  if (!std::isfinite(res.value)) fail(ErrorKind::Numerical, "coercive search produced a non-finite value");
  return res;
}

}  // namespace

CoerciveSearch CoerciveSearch::resolved(int d) const {
  CoerciveSearch r = *this;
  const bool three = d == 3;
  if (r.ternaryTheta <= 0) r.ternaryTheta = three ? 3 : 12;
  if (r.ternarySphere <= 0) r.ternarySphere = three ? 3 : 16;
  if (r.ternaryThetaFine <= 0) r.ternaryThetaFine = three ? 8 : 32;
  if (r.ternarySphereFine <= 0) r.ternarySphereFine = three ? 8 : 48;
  return r;
}

CoerciveResult lambda_coeff(double k, const KernelConfig& cfg, const CoerciveSearch& search) {
  if (!(k >= 2.0)) fail(ErrorKind::InvalidInput, "lambda_coeff: k must be >= 2");
  const CoerciveSearch rs = search.resolved(cfg.d);
  const TernaryGainRule rc = make_ternary_gain_rule(cfg, rs.ternaryTheta, rs.ternarySphere);
  const TernaryGainRule rf = make_ternary_gain_rule(cfg, rs.ternaryThetaFine, rs.ternarySphereFine);
  TernaryObjective c, f;
  c.k = f.k = k;
  c.cfg = f.cfg = &cfg;
  c.rule = &rc;
  f.rule = &rf;
  return finish(c, f, search);
}

CoerciveResult alpha_coeff(double k, const KernelConfig& cfg, const CoerciveSearch& search) {
  if (!(k >= 2.0)) fail(ErrorKind::InvalidInput, "alpha_coeff: k must be >= 2");
  const BinaryGainRule rc = make_binary_gain_rule(cfg, search.binaryNodes);
  const BinaryGainRule rf = make_binary_gain_rule(cfg, search.binaryNodesFine);
  BinaryObjective c, f;
  c.k = f.k = k;
  c.cfg = f.cfg = &cfg;
  c.rule = &rc;
  f.rule = &rf;
  return finish(c, f, search);
}

double CoerciveTable::at(double k) const {
  for (size_t i = 0; i < orders.size(); ++i)
    if (std::abs(orders[i] - k) <= 1e-12 * std::max(1.0, k)) return values[i];
  fail(ErrorKind::InvalidInput, std::string(arity == Arity::Binary ? "alpha" : "lambda") +
                                    " table has no entry for k = " + fmt(k));
}

bool CoerciveTable::strictly_decreasing() const {
  for (size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

std::string coercive_key(const KernelConfig& cfg, Arity arity, const std::vector<double>& orders,
                         const CoerciveSearch& s) {
  std::ostringstream os;
  os << (arity == Arity::Binary ? "binary" : "ternary") << '|' << cfg.d << '|' << fmt(cfg.gamma2) << '|'
     << fmt(cfg.gamma3) << '|' << fmt(cfg.theta3) << '|';
  if (arity == Arity::Binary)
    os << fmt(cfg.b2.c0) << ',' << fmt(cfg.b2.c1) << ',' << fmt(cfg.b2.c2) << '|' << s.binaryNodes << ','
       << s.binaryNodesFine;
  else {
    const CoerciveSearch r = s.resolved(cfg.d);
    os << fmt(cfg.phi.c0) << ',' << fmt(cfg.phi.c1) << ',' << fmt(cfg.phi.c2) << '|' << r.ternaryTheta << ','
       << r.ternarySphere << ',' << r.ternaryThetaFine << ',' << r.ternarySphereFine;
  }
  os << '|' << s.gridPerAxis << ',' << s.starts << ',' << s.maxIterations << ',' << fmt(s.tolerance) << '|';
  for (double k : orders) os << fmt(k) << ',';
  std::ostringstream h;
  h << std::hex << std::setw(16) << std::setfill('0') << fnv1a(os.str());
  return h.str();
}

std::string cache_directory() {
  const char* e = std::getenv("TRIBOLTZ_CACHE_DIR");
  return e ? std::string(e) : std::string();
}

namespace {

bool load_cached(const std::filesystem::path& p, CoerciveTable& t) {
  std::ifstream in(p);
  if (!in) return false;
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    if (j.at("key").get<std::string>() != t.key) return false;
    t.orders = j.at("orders").get<std::vector<double>>();
    t.values = j.at("values").get<std::vector<double>>();
    t.converged = j.at("converged").get<std::vector<int>>();
    t.fromCache = true;
    return t.orders.size() == t.values.size();
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

void store_cached(const std::filesystem::path& p, const CoerciveTable& t) {
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) return;
  nlohmann::json j;
  j["key"] = t.key;
  j["arity"] = t.arity == Arity::Binary ? "binary" : "ternary";
  j["orders"] = t.orders;
  j["values"] = t.values;
  j["converged"] = t.converged;
  const auto tmp = p.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << std::setprecision(17) << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, p, ec);
}

}  // namespace

CoerciveTable coercive_table(const KernelConfig& cfg, Arity arity, const std::vector<double>& orders,
                             const CoerciveSearch& search, const std::string& cacheDir) {
  CoerciveTable t;
  t.arity = arity;
  t.search = search;
  t.key = coercive_key(cfg, arity, orders, search);
  std::filesystem::path file;
  if (!cacheDir.empty()) {
    file = std::filesystem::path(cacheDir) / ("coercive-" + t.key + ".json");
    if (load_cached(file, t)) return t;
  }
  t.orders = orders;
  for (double k : orders) {
    const CoerciveResult r = arity == Arity::Binary ? alpha_coeff(k, cfg, search) : lambda_coeff(k, cfg, search);
    t.values.push_back(r.value);
    t.converged.push_back(r.converged ? 1 : 0);
  }
  if (!cacheDir.empty()) store_cached(file, t);
  return t;
}

CoerciveTables coercive_tables(const KernelConfig& cfg, std::vector<double> orders, const CoerciveSearch& search,
                               const std::string& cacheDir) {
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());
  CoerciveTables t;
  t.norms = kernel_norms(cfg);
  t.binary = coercive_table(cfg, Arity::Binary, orders, search, cacheDir);
  t.ternary = coercive_table(cfg, Arity::Ternary, orders, search, cacheDir);
  return t;
}

double Psi::operator()(double x) const { return n > 0 ? psi_approx(x, n, k) : psi_power(x, k); }

double binary_decomposition_constant(double k) { return 2.5 + 3.0 * binomial_constant(k); }

double ternary_decomposition_constant(double k, GainConstant variant) {
  return 3.5 + 4.0 * (variant == GainConstant::Printed ? binomial_constant(k) : trinomial_constant(k));
}

std::array<bool, 3> binary_regions(double bv, double bv1) {
  const bool c0 = bv > 2.0 * bv1;
  const bool c1 = bv1 > 2.0 * bv;
  return {!c0 && !c1, c0, c1};
}

std::array<bool, 4> ternary_regions(double bv, double bv1, double bv2) {
  const bool c0 = bv > 2.0 * bv1 && bv > 2.0 * bv2;
  const bool c1 = bv1 > 2.0 * bv && bv1 > 2.0 * bv2;
  const bool c2 = bv2 > 2.0 * bv && bv2 > 2.0 * bv1;
  return {!c0 && !c1 && !c2, c0, c1, c2};
}

Decomposition modified_decomposition_binary(const Vec& v, const Vec& v1, double k, const KernelConfig& cfg,
                                            const Psi& psi, double alphaK, double normB2, const SphereRule& rule) {
  if (!(k > 2.0)) fail(ErrorKind::InvalidInput, "modified_decomposition_binary: k must exceed 2");
  const Vec u = v1 - v;
  const double un = norm(u);
  if (!(un > 0.0)) fail(ErrorKind::Degenerate, "modified_decomposition_binary: u = 0");
  const int d = v.size();
  const Vec uh = u * (1.0 / un);
  const double e0 = bracket2(v), e1 = bracket2(v1), E = e0 + e1;
  double G = 0.0, wsum = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    Vec w(d);
    for (int j = 0; j < d; ++j) w[j] = rule.nodes[static_cast<size_t>(i) * d + j];
    const double b = rule.w[i] * cfg.b2(dot(uh, w));
    const BinaryPost post = binary_collide(v, v1, w);
    G += b * (psi(bracket2(post.v)) + psi(bracket2(post.v1)));
    wsum += b;
  }
  Decomposition out;
  out.G = G;
  out.L = wsum * (psi(e0) + psi(e1));
  const auto reg = binary_regions(std::sqrt(e0), std::sqrt(e1));
  const double pE = psi(E);
  const double f0 = reg[1] ? psi(e0) / pE : 0.0;
  const double f1 = reg[2] ? psi(e1) / pE : 0.0;
  out.region = reg[0] ? 0 : (reg[1] ? 1 : 2);
  out.Gtilde = (reg[0] ? 1.0 : 0.0) * G + (reg[1] ? (1.0 - f0) * G : 0.0) + (reg[2] ? (1.0 - f1) * G : 0.0);
  out.Ltilde = out.L - (f0 + f1) * G;
  const double bv = std::sqrt(e0), bv1 = std::sqrt(e1);
  const double mixed = bv * bv1 * (std::pow(bv, k - 2.0) + std::pow(bv1, k - 2.0));
  const double Ck = binary_decomposition_constant(k);
  if (psi.n > 0) {
    out.gainBound = normB2 * Ck * mixed;
    out.lossBound = 0.0;
  } else {
    out.gainBound = alphaK * Ck * mixed;
    out.lossBound = (normB2 - alphaK) * (std::pow(bv, k) + std::pow(bv1, k));
  }
  return out;
}

Decomposition modified_decomposition_ternary(const Vec& v, const Vec& v1, const Vec& v2, double k,
                                             const KernelConfig& cfg, const Psi& psi, double lambdaK, double normB3,
                                             const SphereRule& rule, GainConstant variant) {
  if (!(k > 2.0)) fail(ErrorKind::InvalidInput, "modified_decomposition_ternary: k must exceed 2");
  const Vec2 U = stack(v1 - v, v2 - v);
  const double un = norm(U);
  if (!(un > 0.0)) fail(ErrorKind::Degenerate, "modified_decomposition_ternary: u = 0");
  const int d = v.size(), n = 2 * d;
  const Vec2 uh = U * (1.0 / un);
  const double e[3] = {bracket2(v), bracket2(v1), bracket2(v2)};
  const double E = e[0] + e[1] + e[2];
  double G = 0.0, wsum = 0.0;
  for (int i = 0; i < rule.count(); ++i) {
    Vec2 w(n);
    for (int j = 0; j < n; ++j) w[j] = rule.nodes[static_cast<size_t>(i) * n + j];
    const double b = rule.w[i] * cfg.b3(dot(uh, w), dot(head(w, d), tail(w, d)));
    const TernaryPost post = ternary_collide(v, v1, v2, w);
    G += b * (psi(bracket2(post.v)) + psi(bracket2(post.v1)) + psi(bracket2(post.v2)));
    wsum += b;
  }
  Decomposition out;
  out.G = G;
  out.L = wsum * (psi(e[0]) + psi(e[1]) + psi(e[2]));
  const double bv[3] = {std::sqrt(e[0]), std::sqrt(e[1]), std::sqrt(e[2])};
  const auto reg = ternary_regions(bv[0], bv[1], bv[2]);
  const double pE = psi(E);
  double frac = 0.0;
  out.region = 0;
  for (int i = 0; i < 3; ++i)
    if (reg[i + 1]) {
      frac = psi(e[i]) / pE;
      out.region = i + 1;
    }
  out.Gtilde = (1.0 - frac) * G;
  out.Ltilde = out.L - frac * G;
  const double pairs = bv[0] * bv[1] + bv[0] * bv[2] + bv[1] * bv[2];
  const double tops = std::pow(bv[0], k - 2.0) + std::pow(bv[1], k - 2.0) + std::pow(bv[2], k - 2.0);
  const double Ck = ternary_decomposition_constant(k, variant);
  if (psi.n > 0) {
    out.gainBound = normB3 * Ck * pairs * tops;
    out.lossBound = 0.0;
  } else {
    out.gainBound = lambdaK * Ck * pairs * tops;
    out.lossBound = (normB3 - lambdaK) * (std::pow(bv[0], k) + std::pow(bv[1], k) + std::pow(bv[2], k));
  }
  return out;
}

}  // namespace triboltz
