#pragma once

#include <cstdint>
#include <random>

#include "triboltz/vector.hpp"

namespace triboltz {

using Rng = std::mt19937_64;

// Independent substream for (seed, stream, index).
inline Rng substream(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

inline double uniform01(Rng& r) { return std::uniform_real_distribution<double>(0.0, 1.0)(r); }

inline int uniform_index(Rng& r, int n) { return std::uniform_int_distribution<int>(0, n - 1)(r); }

// Uniform point on S^{n-1}.
template <int Cap>
SmallVec<Cap> uniform_sphere(Rng& r, int n) {
  std::normal_distribution<double> g;
  SmallVec<Cap> v(n);
  double s = 0.0;
  do {
    for (int i = 0; i < n; ++i) v[i] = g(r);
    s = norm2(v);
  } while (s < 1e-24);
  return v * (1.0 / std::sqrt(s));
}

// Distinct ordered pair and triple of indices in [0, n).
inline void distinct_pair(Rng& r, int n, int& i, int& j) {
  i = uniform_index(r, n);
  j = uniform_index(r, n - 1);
  if (j >= i) ++j;
}

inline void distinct_triple(Rng& r, int n, int& i, int& j, int& k) {
  distinct_pair(r, n, i, j);
  k = uniform_index(r, n - 2);
  const int lo = i < j ? i : j, hi = i < j ? j : i;
  if (k >= lo) ++k;
  if (k >= hi) ++k;
}

}  // namespace triboltz
