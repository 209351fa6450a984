#pragma once
// Test-only oracles. Deliberately independent of the library's code paths.

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// Neumaier summation carried in long double.
inline long double compensated_sum(std::span<const double> terms) {
  long double sum = 0.0L, comp = 0.0L;
  for (double d : terms) {
    const long double v = d;
    const long double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  std::vector<double> terms(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) terms[i] = x[i] * y[i];
  return static_cast<double>(compensated_sum(terms));
}

inline double rel_err(double got, double want) {
  if (want == 0.0) return std::abs(got);
  return std::abs(got - want) / std::abs(want);
}

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline bool bitwise_equal(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::bit_cast<std::uint64_t>(a[i]) != std::bit_cast<std::uint64_t>(b[i])) return false;
  return true;
}

/// Nodal multiplicity on the (Kp+1)^3 lattice straight from geometry: a lattice
/// coordinate on an interior element boundary (multiple of p, strictly inside)
/// is shared by two elements along that axis.
inline std::vector<double> lattice_multiplicity(int K, int p) {
  const int side = K * p + 1;
  auto per_axis = [&](int a) { return (a % p == 0 && a > 0 && a < K * p) ? 2 : 1; };
  std::vector<double> m(static_cast<std::size_t>(side) * side * side);
  for (int c = 0; c < side; ++c)
    for (int b = 0; b < side; ++b)
      for (int a = 0; a < side; ++a)
        m[(static_cast<std::size_t>(c) * side + b) * side + a] = per_axis(a) * per_axis(b) * per_axis(c);
  return m;
}

/// Occurrence count of each id by brute-force scan.
inline std::map<std::int32_t, int> occurrences(std::span<const std::int32_t> ids) {
  std::map<std::int32_t, int> count;
  for (auto id : ids) ++count[id];
  return count;
}

}  // namespace oracle
