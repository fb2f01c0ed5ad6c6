#include "triboltz/moments.hpp"

#include <algorithm>
#include <cmath>

#include "triboltz/errors.hpp"

namespace triboltz {

namespace {

constexpr double kOrderTol = 1e-12;

double log_factorial(int n) { return std::lgamma(n + 1.0); }

// exp(log c + p log z - log p!) with c > 0; zero when c or z^p vanishes.
double series_term(double c, double z, int p) {
  if (c == 0.0) return 0.0;
  if (p == 0) return c;
  if (z == 0.0) return 0.0;
  return std::exp(std::log(c) + p * std::log(z) - log_factorial(p));
}

double log_multinomial(int p, int a, int b, int c = 0) {
  return log_factorial(p) - log_factorial(a) - log_factorial(b) - log_factorial(c);
}

}  // namespace

Ensemble::Ensemble(int d, std::vector<double> flat, double weight) : d_(d), v_(std::move(flat)), w_(weight) {
  if (d < 1 || d > kMaxDim) fail(ErrorKind::InvalidInput, "Ensemble: unsupported dimension");
  if (v_.size() % static_cast<size_t>(d) != 0) fail(ErrorKind::InvalidInput, "Ensemble: buffer length not a multiple of d");
  if (!(weight > 0.0)) fail(ErrorKind::InvalidInput, "Ensemble: weight must be positive");
  for (double x : v_)
    if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "Ensemble: non-finite velocity");
}

Vec Ensemble::velocity(int i) const {
  Vec r(d_);
  for (int k = 0; k < d_; ++k) r[k] = v_[static_cast<size_t>(i) * d_ + k];
  return r;
}

void Ensemble::set_velocity(int i, const Vec& v) {
  for (int k = 0; k < d_; ++k) v_[static_cast<size_t>(i) * d_ + k] = v[k];
}

Vec Ensemble::momentum() const {
  Vec p(d_);
  const int n = size();
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < d_; ++k) p[k] += v_[static_cast<size_t>(i) * d_ + k];
  return p * w_;
}

double Ensemble::kinetic_energy() const {
  double s = 0.0;
  for (double x : v_) s += x * x;
  return w_ * s;
}

void Ensemble::scale(double factor) {
  for (double& x : v_) x *= factor;
}

double moment(const Ensemble& e, double k) {
  if (!std::isfinite(k)) fail(ErrorKind::InvalidInput, "moment: order must be finite");
  const int n = e.size(), d = e.dim();
  const double* p = e.data();
  double s = 0.0;
  if (k == 0.0) return e.mass();
  const double h = 0.5 * k;
  for (int i = 0; i < n; ++i) {
    double b2 = 1.0;
    for (int c = 0; c < d; ++c) b2 += p[i * d + c] * p[i * d + c];
    s += (h == 1.0) ? b2 : (h == 2.0 ? b2 * b2 : std::pow(b2, h));
  }
  return e.weight() * s;
}

bool MomentVector::has(double k) const {
  for (double o : orders)
    if (std::abs(o - k) <= kOrderTol * std::max(1.0, std::abs(k))) return true;
  return false;
}

double MomentVector::at(double k) const {
  for (size_t i = 0; i < orders.size(); ++i)
    if (std::abs(orders[i] - k) <= kOrderTol * std::max(1.0, std::abs(k))) return values[i];
  fail(ErrorKind::InvalidInput, "MomentVector: missing order " + std::to_string(k));
}

MomentVector moments(const Ensemble& e, const std::vector<double>& orders) {
  MomentVector m;
  m.orders = orders;
  m.values.reserve(orders.size());
  for (double k : orders) m.values.push_back(moment(e, k));
  return m;
}

double interpolation_bound(double s1, double ms1, double s2, double ms2, double s) {
  if (!(s1 <= s && s <= s2)) fail(ErrorKind::InvalidInput, "interpolation_bound: requires s1 <= s <= s2");
  if (!(ms1 > 0.0 && ms2 > 0.0)) fail(ErrorKind::InvalidInput, "interpolation_bound: moments must be positive");
  if (s2 == s1) return ms1;
  const double tau = (s2 - s) / (s2 - s1);
  return std::exp(tau * std::log(ms1) + (1.0 - tau) * std::log(ms2));
}

ProductWitness product_order_bound(const Ensemble& e, double i, double j, double k, double l) {
  if (std::abs((i + j) - (k + l)) > 1e-12 * std::max(1.0, i + j))
    fail(ErrorKind::InvalidInput, "product_order_bound: requires i + j = k + l");
  if (std::min(k, l) > std::min(i, j)) fail(ErrorKind::InvalidInput, "product_order_bound: requires min{k,l} <= min{i,j}");
  if (std::min({i, j, k, l}) < 0.0) fail(ErrorKind::InvalidInput, "product_order_bound: orders must be nonnegative");
  ProductWitness w;
  w.lhs = moment(e, i) * moment(e, j);
  w.rhs = moment(e, k) * moment(e, l);
  w.holds = w.lhs <= w.rhs * (1.0 + 1e-12);
  return w;
}

double psi_power(double x, double k) { return std::pow(x, 0.5 * k); }

double psi_approx(double x, int n, double k) {
  if (x <= n) return psi_power(x, k);
  const double h = 0.5 * k;
  const double psin = std::pow(static_cast<double>(n), h);
  const double dpsin = h * std::pow(static_cast<double>(n), h - 1.0);
  return dpsin * x + psin - n * dpsin;
}

double binomial_constant(double p) { return p * std::max(1.0, std::pow(2.0, p - 3.0)); }

double trinomial_constant(double p, TrinomialConstant variant) {
  const double base = variant == TrinomialConstant::Printed ? 2.0 : 3.0;
  return binomial_constant(p) + 0.5 * p * (p - 1.0) * std::max(1.0, std::pow(base, p - 4.0));
}

GapBound polynomial_gap_bound(double p, double x, double y) {
  if (!(p > 1.0)) fail(ErrorKind::InvalidInput, "polynomial_gap_bound: binary form requires p > 1");
  GapBound g;
  g.gap = std::pow(x + y, p) - std::pow(x, p) - std::pow(y, p);
  g.bound = binomial_constant(p) * (std::pow(x, p - 1.0) * y + x * std::pow(y, p - 1.0));
  return g;
}

GapBound polynomial_gap_bound(double p, double x, double y, double z, TrinomialConstant variant) {
  if (!(p > 2.0)) fail(ErrorKind::InvalidInput, "polynomial_gap_bound: ternary form requires p > 2");
  auto m = [p](double a, double b) { return std::pow(a, p - 1.0) * b; };
  GapBound g;
  g.gap = std::pow(x + y + z, p) - std::pow(x, p) - std::pow(y, p) - std::pow(z, p);
  g.bound = trinomial_constant(p, variant) * (m(x, y) + m(y, x) + m(x, z) + m(z, x) + m(y, z) + m(z, y));
  return g;
}

GapBound power_sum_bound(double p, double x, double y) {
  GapBound g;
  g.gap = std::pow(x + y, p);
  g.bound = std::max(1.0, std::pow(2.0, p - 1.0)) * (std::pow(x, p) + std::pow(y, p));
  return g;
}

GapBound power_sum_bound(double p, double x, double y, double z) {
  GapBound g;
  g.gap = std::pow(x + y + z, p);
  g.bound = std::max(1.0, std::pow(3.0, p - 1.0)) * (std::pow(x, p) + std::pow(y, p) + std::pow(z, p));
  return g;
}

double exp_partial_sum(const Ensemble& e, double s, double z, int n, double shift) {
  if (n < 0) fail(ErrorKind::InvalidInput, "exp_partial_sum: n must be nonnegative");
  double sum = 0.0;
  for (int p = 0; p <= n; ++p) sum += series_term(moment(e, s * p + shift), z, p);
  return sum;
}

double exp_partial_sum(const MomentVector& m, double s, double z, int n, double shift) {
  if (n < 0) fail(ErrorKind::InvalidInput, "exp_partial_sum: n must be nonnegative");
  double sum = 0.0;
  for (int p = 0; p <= n; ++p) sum += series_term(m.at(s * p + shift), z, p);
  return sum;
}

PovznerSums povzner_sums(const MomentVector& m, int p, double s, double shift) {
  PovznerSums out;
  for (int k = 1; k < p; ++k) {
    const int k1 = p - k;
    const double a = m.at(s * k + shift) * m.at(s * k1);
    if (a > 0.0) out.S2 += std::exp(log_multinomial(p, k, k1) + std::log(a));
  }
  for (int k = 0; k < p; ++k) {
    for (int k1 = 0; k1 < p; ++k1) {
      const int k2 = p - k - k1;
      if (k2 < 0 || k2 >= p) continue;
      const double a = m.at(s * k + shift) * m.at(s * k1) * m.at(s * k2);
      if (a > 0.0) out.S3 += std::exp(log_multinomial(p, k, k1, k2) + std::log(a));
    }
  }
  return out;
}

SeriesWitness series_bound_check(const MomentVector& m, double s, double shift, double z, int n, int p0) {
  SeriesWitness w;
  for (int p = std::max(p0, 0); p <= n; ++p) {
    const PovznerSums ps = povzner_sums(m, p, s, shift);
    w.lhs2 += series_term(ps.S2, z, p);
    w.lhs3 += series_term(ps.S3, z, p);
  }
  const double I = exp_partial_sum(m, s, z, n, shift);
  const double E = exp_partial_sum(m, s, z, n, 0.0);
  w.rhs2 = I * E;
  w.rhs3 = I * E * E;
  const double tol = 1e-12;
  w.holds = w.lhs2 <= w.rhs2 * (1.0 + tol) && w.lhs3 <= w.rhs3 * (1.0 + tol);
  return w;
}

std::vector<double> series_orders(double s, double shift, int n) {
  std::vector<double> o;
  for (int p = 0; p <= n; ++p) {
    o.push_back(s * p);
    o.push_back(s * p + shift);
  }
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end(), [](double a, double b) { return std::abs(a - b) <= kOrderTol * std::max(1.0, a); }),
          o.end());
  return o;
}

}  // namespace triboltz
