#pragma once

#include <complex>
#include <vector>

#include "starspec/complex_tuple.hpp"

namespace starspec::linalg {

/// Dense complex matrix in row-major order; just enough for the small
/// secular systems (N is the edge count, so sizes stay tiny).
struct Matrix {
  int n = 0;
  std::vector<Complex> a;  // n*n, row-major

  explicit Matrix(int size) : n(size), a(static_cast<std::size_t>(size) * size) {}
  Complex& at(int r, int c) { return a[static_cast<std::size_t>(r) * n + c]; }
  const Complex& at(int r, int c) const { return a[static_cast<std::size_t>(r) * n + c]; }
};

/// Determinant by LU with partial pivoting (destroys a copy).
Complex determinant(Matrix m);

struct NullSpace {
  int rank = 0;
  // One unit of the null space when rank < n (unpermuted coordinates);
  // empty when the matrix is numerically nonsingular.
  std::vector<Complex> vec;
};

/// Gaussian elimination with full pivoting; pivots below
/// rel_tol * max(max|entry|, scale_hint) end the elimination. scale_hint lets
/// callers supply the natural magnitude of the system when the matrix itself
/// may be near zero (the 1x1 secular system at a root). Deterministic pivot
/// choice (largest modulus, lowest index on ties).
NullSpace null_space_full_pivot(Matrix m, double rel_tol = 1e-8, double scale_hint = 0.0);

}  // namespace starspec::linalg
