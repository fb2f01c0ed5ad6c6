#pragma once

#include <vector>

#include "triboltz/vector.hpp"

namespace triboltz {

// N equal-weight particles; velocity i occupies [i*d, (i+1)*d) of the flat buffer.
class Ensemble {
 public:
  Ensemble() = default;
  Ensemble(int d, std::vector<double> flat, double weight);

  int dim() const { return d_; }
  int size() const { return static_cast<int>(v_.size()) / (d_ > 0 ? d_ : 1); }
  double weight() const { return w_; }
  double mass() const { return w_ * size(); }

  Vec velocity(int i) const;
  void set_velocity(int i, const Vec& v);
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  const std::vector<double>& flat() const { return v_; }

  Vec momentum() const;
  // w * sum |v|^2.
  double kinetic_energy() const;
  // Scale all velocities about the origin.
  void scale(double factor);

 private:
  int d_ = 0;
  std::vector<double> v_;
  double w_ = 0.0;
};

// m_k = w sum <v_i>^k.
double moment(const Ensemble& e, double k);

struct MomentVector {
  std::vector<double> orders;
  std::vector<double> values;
  // Exact order lookup; throws InvalidInput if absent.
  double at(double k) const;
  bool has(double k) const;
};

MomentVector moments(const Ensemble& e, const std::vector<double>& orders);

// m_{s1}^tau m_{s2}^{1-tau} with s = tau s1 + (1 - tau) s2.
double interpolation_bound(double s1, double ms1, double s2, double ms2, double s);

struct ProductWitness {
  double lhs = 0.0;  // m_i m_j
  double rhs = 0.0;  // m_k m_l
  bool holds = false;
};

ProductWitness product_order_bound(const Ensemble& e, double i, double j, double k, double l);

// psi(x) = x^{k/2}; psi_n agrees with psi up to n and continues by its tangent line.
double psi_power(double x, double k);
double psi_approx(double x, int n, double k);

// C_{2,p} = p max{1, 2^{p-3}}.
double binomial_constant(double p);
enum class TrinomialConstant { Printed, ThreeTerm };

// C_{3,p} = C_{2,p} + p(p-1)/2 B_p with B_p = max{1, 2^{p-4}} (Printed) or max{1, 3^{p-4}} (ThreeTerm).
// The two agree for p <= 4; the Printed form fails for larger p, e.g. at x = y = z.
double trinomial_constant(double p, TrinomialConstant variant = TrinomialConstant::ThreeTerm);

struct GapBound {
  double gap = 0.0;
  double bound = 0.0;
};

// (x+y)^p - x^p - y^p against C_{2,p}(x^{p-1}y + xy^{p-1}).
GapBound polynomial_gap_bound(double p, double x, double y);
// Trinomial gap against C_{3,p} times the six mixed monomials.
GapBound polynomial_gap_bound(double p, double x, double y, double z,
                              TrinomialConstant variant = TrinomialConstant::ThreeTerm);
// (x+y)^p against max{1, 2^{p-1}}(x^p + y^p) and the trinomial analog.
GapBound power_sum_bound(double p, double x, double y);
GapBound power_sum_bound(double p, double x, double y, double z);

// Sum_{p=0}^n m_{sp+shift} z^p / p!.
double exp_partial_sum(const Ensemble& e, double s, double z, int n, double shift = 0.0);
double exp_partial_sum(const MomentVector& m, double s, double z, int n, double shift = 0.0);

struct PovznerSums {
  double S2 = 0.0;
  double S3 = 0.0;
};

PovznerSums povzner_sums(const MomentVector& m, int p, double s, double shift);

struct SeriesWitness {
  double lhs2 = 0.0, rhs2 = 0.0;
  double lhs3 = 0.0, rhs3 = 0.0;
  bool holds = false;
};

SeriesWitness series_bound_check(const MomentVector& m, double s, double shift, double z, int n, int p0);

// Orders s*p and s*p + shift for p = 0..n, merged and sorted.
std::vector<double> series_orders(double s, double shift, int n);

}  // namespace triboltz
