#include "starspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace starspec::linalg {

Complex determinant(Matrix m) {
  const int n = m.n;
  if (n == 0) return Complex{1.0, 0.0};
  double sign = 1.0;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m.at(r, col)) > std::abs(m.at(pivot, col))) pivot = r;
    if (m.at(pivot, col) == Complex{0.0, 0.0}) return Complex{0.0, 0.0};
    if (pivot != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(pivot, c), m.at(col, c));
      sign = -sign;
    }
    for (int r = col + 1; r < n; ++r) {
      const Complex factor = m.at(r, col) / m.at(col, col);
      m.at(r, col) = Complex{0.0, 0.0};
      for (int c = col + 1; c < n; ++c) m.at(r, c) -= factor * m.at(col, c);
    }
  }
  Complex det{sign, 0.0};
  for (int i = 0; i < n; ++i) det *= m.at(i, i);
  return det;
}

NullSpace null_space_full_pivot(Matrix m, double rel_tol, double scale_hint) {
  const int n = m.n;
  NullSpace out;
  std::vector<int> col_of(n);  // col_of[k] = original column now in slot k
  std::iota(col_of.begin(), col_of.end(), 0);

  double max_abs = 0.0;
  for (const Complex& v : m.a) max_abs = std::max(max_abs, std::abs(v));
  const double threshold = rel_tol * std::max(max_abs, scale_hint);
  if (max_abs <= threshold) {
    out.rank = 0;
    out.vec.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
    out.vec[0] = Complex{1.0, 0.0};
    return out;
  }

  int rank = 0;
  for (int step = 0; step < n; ++step) {
    int pr = step, pc = step;
    double best = 0.0;
    for (int r = step; r < n; ++r)
      for (int c = step; c < n; ++c)
        if (std::abs(m.at(r, c)) > best) {
          best = std::abs(m.at(r, c));
          pr = r;
          pc = c;
        }
    if (best <= threshold) break;
    if (pr != step)
      for (int c = 0; c < n; ++c) std::swap(m.at(pr, c), m.at(step, c));
    if (pc != step) {
      for (int r = 0; r < n; ++r) std::swap(m.at(r, pc), m.at(r, step));
      std::swap(col_of[pc], col_of[step]);
    }
    ++rank;
    for (int r = step + 1; r < n; ++r) {
      const Complex factor = m.at(r, step) / m.at(step, step);
      m.at(r, step) = Complex{0.0, 0.0};
      for (int c = step + 1; c < n; ++c) m.at(r, c) -= factor * m.at(step, c);
    }
  }
  out.rank = rank;
  if (rank == n) return out;

  // First free (permuted) variable set to 1, remaining free ones to 0.
  std::vector<Complex> x(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  x[static_cast<std::size_t>(rank)] = Complex{1.0, 0.0};
  for (int i = rank - 1; i >= 0; --i) {
    Complex acc{0.0, 0.0};
    for (int j = i + 1; j < n; ++j) acc += m.at(i, j) * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = -acc / m.at(i, i);
  }
  out.vec.assign(static_cast<std::size_t>(n), Complex{0.0, 0.0});
  for (int k = 0; k < n; ++k)
    out.vec[static_cast<std::size_t>(col_of[k])] = x[static_cast<std::size_t>(k)];
  return out;
}

}  // namespace starspec::linalg
