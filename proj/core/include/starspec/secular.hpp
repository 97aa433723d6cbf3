#pragma once

#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starspec/complex_tuple.hpp"
#include "starspec/symmetric_poly.hpp"

namespace starspec {

/// Robin parameters of an equilateral N-edge star graph (edge length 1,
/// units of inverse length). h_i enters the boundary condition
/// u_i'(0) = h_i u_i(0) at the degree-one vertex of edge i.
class RobinTuple {
 public:
  explicit RobinTuple(ComplexTuple h) : h_(std::move(h)) {}
  RobinTuple(std::initializer_list<Complex> values) : h_(values) {}

  int edge_count() const { return h_.size(); }
  const ComplexTuple& h() const { return h_; }
  const Complex& operator[](int i) const { return h_[i]; }
  RobinTuple conjugated() const { return RobinTuple(h_.conjugated()); }

 private:
  ComplexTuple h_;
};

/// Integer power by binary exponentiation; keeps complex conjugation exact
/// (std::pow of complex arguments goes through log/exp).
template <typename C>
C pow_int(C base, int k) {
  if (k < 0) throw std::invalid_argument("pow_int: negative exponent");
  C result(1);
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

// alpha_h(z) = z cos z + h sin z. Vanishes where the edge solution cannot
// meet the central continuity condition with nonzero amplitude.
template <typename C>
C alpha(const C& h, const C& z) {
  using std::cos;
  using std::sin;
  return z * cos(z) + h * sin(z);
}

// beta_h(z) = -z sin z + h cos z. The Kirchhoff (derivative-sum) row.
template <typename C>
C beta(const C& h, const C& z) {
  using std::cos;
  using std::sin;
  return -z * sin(z) + h * cos(z);
}

/// Sum form of the secular function:
///   D_h(z) = sum_i beta_{h_i}(z) prod_{j != i} alpha_{h_j}(z),
/// evaluated with prefix/suffix products so no division appears and zero
/// alpha factors are harmless.
template <typename C>
C d_sum_values(const std::vector<C>& h, const C& z) {
  using std::cos;
  using std::sin;
  const std::size_t n = h.size();
  if (n == 0) throw std::invalid_argument("d_sum: empty tuple");
  const C cz = cos(z), sz = sin(z);
  std::vector<C> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = z * cz + h[i] * sz;
  std::vector<C> pre(n + 1, C(1)), suf(n + 1, C(1));
  for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * a[i];
  for (std::size_t i = n; i-- > 0;) suf[i] = a[i] * suf[i + 1];
  C total(0);
  for (std::size_t i = 0; i < n; ++i)
    total += (-z * sz + h[i] * cz) * pre[i] * suf[i + 1];
  return total;
}

/// f_k(z) = (k - N sin^2 z)(sin z)^{k-1}(cos z)^{N-k-1} for 1 <= k <= N-1.
/// The k = N case is returned in the algebraically equivalent entire form
/// N cos z (sin z)^{N-1}, so no negative cosine power is ever formed; the
/// k = N-1 case has cosine exponent 0 and needs no special handling.
template <typename C>
C f_k_values(int k, int n_edges, const C& z) {
  using std::cos;
  using std::sin;
  if (k < 1 || k > n_edges) throw std::out_of_range("f_k: need 1 <= k <= N");
  const C sz = sin(z), cz = cos(z);
  if (k == n_edges) return C(n_edges) * cz * pow_int(sz, n_edges - 1);
  return (C(k) - C(n_edges) * sz * sz) * pow_int(sz, k - 1) *
         pow_int(cz, n_edges - k - 1);
}

/// Compact (symmetric-polynomial) form of the secular function:
///   D_h(z) = -N z^N sin z (cos z)^{N-1} + z^N sum_k (s_k(h)/z^k) f_k(z).
/// The sum is evaluated as s_k z^{N-k} f_k, which is the same expression
/// and stays finite for small |z|; z = 0 itself is rejected (the secular
/// parametrization degenerates there and z = 0 is never an eigenvalue datum).
template <typename C>
C d_compact_values(const std::vector<C>& h, const std::vector<C>& s, const C& z) {
  using std::cos;
  using std::sin;
  const int n = static_cast<int>(h.size());
  if (n == 0) throw std::invalid_argument("d_compact: empty tuple");
  if (z == C(0)) throw std::domain_error("d_compact: z = 0 is degenerate; use d_sum");
  const C sz = sin(z), cz = cos(z);
  C total = -C(n) * pow_int(z, n) * sz * pow_int(cz, n - 1);
  for (int k = 1; k <= n; ++k)
    total += s[static_cast<std::size_t>(k)] * pow_int(z, n - k) * f_k_values(k, n, z);
  return total;
}

/// Rescaled secular function near n*pi:
///   K_eps(z) = sum_i [-(1+eps z) sin z + eps h_i cos z]
///                prod_{j != i} [(1+eps z) cos z + eps h_j sin z],
/// satisfying D_h(n pi + z) = (-1)^{nN} (n pi)^N K_{1/(n pi)}(z). The formula
/// is entire in eps; negative eps is accepted so the odd symmetry
/// K_{-eps}(-z) = -K_eps(z) can be evaluated directly.
template <typename C>
C k_eps_values(const std::vector<C>& h, const C& eps, const C& z) {
  using std::cos;
  using std::sin;
  const std::size_t n = h.size();
  if (n == 0) throw std::invalid_argument("k_eps: empty tuple");
  const C cz = cos(z), sz = sin(z);
  const C common = C(1) + eps * z;
  std::vector<C> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = common * cz + eps * h[i] * sz;
  std::vector<C> pre(n + 1, C(1)), suf(n + 1, C(1));
  for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] * a[i];
  for (std::size_t i = n; i-- > 0;) suf[i] = a[i] * suf[i + 1];
  C total(0);
  for (std::size_t i = 0; i < n; ++i)
    total += (-common * sz + eps * h[i] * cz) * pre[i] * suf[i + 1];
  return total;
}

Complex alpha(Complex h, Complex z);
Complex beta(Complex h, Complex z);
Complex f_k(int k, int n_edges, Complex z);

/// Determinant form: the N x N secular matrix (bidiagonal alpha rows, beta
/// bottom row) evaluated by LU elimination with partial pivoting. Serves as
/// the oracle form against the sum and compact forms.
Complex d_det(const RobinTuple& h, Complex z);
Complex d_sum(const RobinTuple& h, Complex z);
Complex d_compact(const RobinTuple& h, Complex z);
Complex k_eps(const RobinTuple& h, double eps, Complex z);

/// Immutable bound evaluator for D_h; caches s_k(h) on construction.
/// Safe for concurrent use from any number of threads.
class SecularEvaluator {
 public:
  explicit SecularEvaluator(RobinTuple h);

  const RobinTuple& robin() const { return h_; }
  const SymmetricPolyVector& sym() const { return s_; }
  int edge_count() const { return h_.edge_count(); }

  Complex d_det(Complex z) const;
  Complex d_sum(Complex z) const { return d_sum_values(h_.h().values(), z); }
  Complex d_compact(Complex z) const {
    return d_compact_values(h_.h().values(), s_.coefficients(), z);
  }
  Complex k_eps(double eps, Complex z) const {
    return k_eps_values(h_.h().values(), Complex{eps, 0.0}, z);
  }

  struct ValueDerivative {
    Complex value;
    Complex derivative;
  };
  /// D and D' from termwise differentiation of the sum form (no finite
  /// differences): alpha' = (1+h) cos z - z sin z, beta' = -(1+h) sin z - z cos z.
  ValueDerivative value_and_derivative(Complex z) const;

 private:
  RobinTuple h_;
  SymmetricPolyVector s_;
};

}  // namespace starspec
