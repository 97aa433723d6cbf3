#include "starspec/secular.hpp"

#include <cmath>

#include "starspec/linalg.hpp"

namespace starspec {

Complex alpha(Complex h, Complex z) { return alpha<Complex>(h, z); }
Complex beta(Complex h, Complex z) { return beta<Complex>(h, z); }
Complex f_k(int k, int n_edges, Complex z) { return f_k_values<Complex>(k, n_edges, z); }

Complex d_det(const RobinTuple& h, Complex z) {
  const int n = h.edge_count();
  linalg::Matrix m(n);
  // Rows 0..n-2: alpha_i at column i, -alpha_{i+1} at column i+1 (continuity
  // chain); row n-1: the beta row (derivative sum).
  for (int i = 0; i + 1 < n; ++i) {
    m.at(i, i) = alpha(h[i], z);
    m.at(i, i + 1) = -alpha(h[i + 1], z);
  }
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = beta(h[j], z);
  return linalg::determinant(std::move(m));
}

Complex d_sum(const RobinTuple& h, Complex z) {
  return d_sum_values(h.h().values(), z);
}

Complex d_compact(const RobinTuple& h, Complex z) {
  const std::vector<Complex> s = elementary_symmetric(h.h().values());
  return d_compact_values(h.h().values(), s, z);
}

Complex k_eps(const RobinTuple& h, double eps, Complex z) {
  return k_eps_values(h.h().values(), Complex{eps, 0.0}, z);
}

SecularEvaluator::SecularEvaluator(RobinTuple h)
    : h_(std::move(h)), s_(elem_sym_all(h_.h())) {}

Complex SecularEvaluator::d_det(Complex z) const { return starspec::d_det(h_, z); }

SecularEvaluator::ValueDerivative SecularEvaluator::value_and_derivative(
    Complex z) const {
  struct Dual {
    Complex v{0.0, 0.0};
    Complex d{0.0, 0.0};
    Dual operator*(const Dual& o) const { return {v * o.v, v * o.d + d * o.v}; }
  };
  const std::vector<Complex>& h = h_.h().values();
  const std::size_t n = h.size();
  const Complex cz = std::cos(z), sz = std::sin(z);
  std::vector<Dual> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = {z * cz + h[i] * sz, (Complex{1.0, 0.0} + h[i]) * cz - z * sz};
  std::vector<Dual> pre(n + 1), suf(n + 1);
  pre[0] = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  suf[n] = pre[0];
  for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * a[i];
  for (std::size_t i = n; i-- > 0;) suf[i] = a[i] * suf[i + 1];
  Dual total{};
  for (std::size_t i = 0; i < n; ++i) {
    const Dual b{-z * sz + h[i] * cz,
                 -(Complex{1.0, 0.0} + h[i]) * sz - z * cz};
    const Dual term = b * pre[i] * suf[i + 1];
    total.v += term.v;
    total.d += term.d;
  }
  return {total.v, total.d};
}

}  // namespace starspec
