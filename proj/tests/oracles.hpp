// Test-only oracles, independent of the library's production paths:
// brute-force subset enumeration for symmetric polynomials, a scalar
// bisection/Newton root finder for the one-edge secular equation, and a
// multiprecision Newton iteration for reference roots of the full secular
// function. Multiprecision stays strictly on the test side.
#pragma once

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "starspec/complex_tuple.hpp"
#include "starspec/secular.hpp"

namespace oracles {

using starspec::Complex;
using BigFloat = boost::multiprecision::cpp_bin_float_50;
using BigComplex = boost::multiprecision::cpp_complex_50;

inline BigFloat big_pi() { return boost::math::constants::pi<BigFloat>(); }

// Sum over all m-subsets of products, by explicit enumeration (N <= ~20).
template <typename C>
C elem_sym_enumerated(const std::vector<C>& c, int m) {
  const int n = static_cast<int>(c.size());
  if (m == 0) return C(1);
  if (m > n) return C(0);
  C total(0);
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    C prod(1);
    for (int i = 0; i < m; ++i) prod *= c[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
    total += prod;
    int pos = m - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - m + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < m; ++i)
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return total;
}

// Real root of -z sin z + h cos z = 0 (i.e. z tan z = h) near n*pi for real
// h: bisection on the sign of the function in double precision.
inline double scalar_secular_root(double h, int n) {
  auto f = [&](double z) { return -z * std::sin(z) + h * std::cos(z); };
  const double pi = 3.14159265358979323846;
  double lo = n * pi - 0.49 * pi, hi = n * pi + 0.49 * pi;
  // The root lies within (n pi - pi/2, n pi + pi/2); bracket by scanning.
  const int kScan = 64;
  double prev_x = lo, prev_f = f(lo);
  double a = 0.0, b = 0.0;
  bool found = false;
  for (int i = 1; i <= kScan; ++i) {
    const double x = lo + (hi - lo) * i / kScan;
    const double fx = f(x);
    if ((prev_f <= 0.0 && fx >= 0.0) || (prev_f >= 0.0 && fx <= 0.0)) {
      a = prev_x;
      b = x;
      found = true;
      break;
    }
    prev_x = x;
    prev_f = fx;
  }
  if (!found) return std::nan("");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    if ((f(a) <= 0.0) == (f(mid) <= 0.0))
      a = mid;
    else
      b = mid;
  }
  return 0.5 * (a + b);
}

// Reference root of the full secular function near n*pi, by Newton in
// 50-digit arithmetic on the sum form (derivative by central difference at
// a step far above the target accuracy's square root).
inline BigComplex big_root_near_npi(const std::vector<BigComplex>& h, int n,
                                    const BigComplex& start_offset = BigComplex(0)) {
  const BigFloat pi = big_pi();
  BigComplex z = BigComplex(n) * pi + start_offset;
  const BigComplex dstep(BigFloat("1e-25"));
  for (int it = 0; it < 60; ++it) {
    const BigComplex f = starspec::d_sum_values(h, z);
    const BigComplex fp =
        (starspec::d_sum_values(h, z + dstep) - starspec::d_sum_values(h, z - dstep)) /
        (BigComplex(2) * dstep);
    const BigComplex step = f / fp;
    z -= step;
    if (abs(step) < BigFloat("1e-42")) break;
  }
  return z;
}

inline Complex to_double(const BigComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline std::vector<BigComplex> to_big(const std::vector<Complex>& h) {
  std::vector<BigComplex> out;
  out.reserve(h.size());
  for (const Complex& v : h) out.emplace_back(v.real(), v.imag());
  return out;
}

// Random complex tuples for property tests.
struct TestRng {
  std::mt19937_64 gen;
  explicit TestRng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen);
  }
  Complex complex_in_disk(double r) {
    for (;;) {
      const Complex z{uniform(-r, r), uniform(-r, r)};
      if (std::abs(z) <= r) return z;
    }
  }
  std::vector<Complex> tuple_in_disk(int n, double r) {
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (auto& v : out) v = complex_in_disk(r);
    return out;
  }
};

}  // namespace oracles
