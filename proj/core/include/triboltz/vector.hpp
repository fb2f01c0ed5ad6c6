#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>

namespace triboltz {

inline constexpr int kMaxDim = 3;
inline constexpr int kMaxStack = 2 * kMaxDim;

// Fixed-capacity real vector with a runtime length; no heap traffic in hot loops.
template <int Cap>
class SmallVec {
 public:
  SmallVec() = default;
  explicit SmallVec(int n) : n_(n) {}
  SmallVec(std::initializer_list<double> xs) {
    for (double x : xs) c_[n_++] = x;
  }

  int size() const { return n_; }
  double& operator[](int i) { return c_[i]; }
  double operator[](int i) const { return c_[i]; }
  double* data() { return c_.data(); }
  const double* data() const { return c_.data(); }

  SmallVec& operator+=(const SmallVec& o) {
    for (int i = 0; i < n_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  SmallVec& operator-=(const SmallVec& o) {
    for (int i = 0; i < n_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  SmallVec& operator*=(double s) {
    for (int i = 0; i < n_; ++i) c_[i] *= s;
    return *this;
  }
  friend SmallVec operator+(SmallVec a, const SmallVec& b) { return a += b; }
  friend SmallVec operator-(SmallVec a, const SmallVec& b) { return a -= b; }
  friend SmallVec operator*(SmallVec a, double s) { return a *= s; }
  friend SmallVec operator*(double s, SmallVec a) { return a *= s; }
  friend SmallVec operator-(SmallVec a) { return a *= -1.0; }

 private:
  std::array<double, Cap> c_{};
  int n_ = 0;
};

using Vec = SmallVec<kMaxDim>;
using Vec2 = SmallVec<kMaxStack>;

template <int Cap>
double dot(const SmallVec<Cap>& a, const SmallVec<Cap>& b) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <int Cap>
double norm2(const SmallVec<Cap>& a) {
  return dot(a, a);
}

template <int Cap>
double norm(const SmallVec<Cap>& a) {
  return std::sqrt(norm2(a));
}

template <int Cap>
bool all_finite(const SmallVec<Cap>& a) {
  for (int i = 0; i < a.size(); ++i)
    if (!std::isfinite(a[i])) return false;
  return true;
}

// Japanese bracket squared, 1 + |v|^2.
inline double bracket2(const Vec& v) { return 1.0 + norm2(v); }
inline double bracket(const Vec& v) { return std::sqrt(bracket2(v)); }

inline Vec2 stack(const Vec& a, const Vec& b) {
  const int d = a.size();
  Vec2 r(2 * d);
  for (int i = 0; i < d; ++i) {
    r[i] = a[i];
    r[d + i] = b[i];
  }
  return r;
}

inline Vec head(const Vec2& s, int d) {
  Vec r(d);
  for (int i = 0; i < d; ++i) r[i] = s[i];
  return r;
}

inline Vec tail(const Vec2& s, int d) {
  Vec r(d);
  for (int i = 0; i < d; ++i) r[i] = s[d + i];
  return r;
}

}  // namespace triboltz
