#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "starspec/complex_tuple.hpp"

namespace starspec {

/// Elementary symmetric polynomials s_0..s_n of the input values.
///
/// Built by incremental coefficient convolution over prod_j (x + c_j):
/// absorbing one value at a time updates the coefficient list in place,
/// O(n^2) total and numerically stable (no subset enumeration, no division).
/// Works for any complex-like type, including multiprecision ones.
template <typename C>
std::vector<C> elementary_symmetric(const std::vector<C>& values) {
  const std::size_t n = values.size();
  std::vector<C> s(n + 1, C(0));
  s[0] = C(1);
  std::size_t used = 0;
  for (const C& c : values) {
    ++used;
    for (std::size_t m = used; m >= 1; --m) s[m] += c * s[m - 1];
  }
  return s;
}

/// Values s_m(c) for m = 0..degree. s_0 is exactly 1 and s_m vanishes for
/// m > degree by convention, so at() is total for every m >= 0.
class SymmetricPolyVector {
 public:
  explicit SymmetricPolyVector(std::vector<Complex> s) : s_(std::move(s)) {
    if (s_.empty()) throw std::invalid_argument("SymmetricPolyVector: empty");
  }

  int degree() const { return static_cast<int>(s_.size()) - 1; }

  Complex at(int m) const {
    if (m < 0) throw std::out_of_range("SymmetricPolyVector: m must be >= 0");
    if (m > degree()) return Complex{0.0, 0.0};
    return s_[static_cast<std::size_t>(m)];
  }

  const std::vector<Complex>& coefficients() const { return s_; }

 private:
  std::vector<Complex> s_;
};

/// s_0..s_N of the full tuple.
inline SymmetricPolyVector elem_sym_all(const ComplexTuple& c) {
  return SymmetricPolyVector(elementary_symmetric(c.values()));
}

/// s_0..s_{N-1} of the tuple with entry `index` removed, recomputed from the
/// reduced tuple (deflating s(c) would divide by c_i and is unstable when
/// |c_i| is tiny). For N = 1 the reduced tuple is empty and the result is (1).
inline SymmetricPolyVector elem_sym_suppressed(const ComplexTuple& c, int index) {
  c.check_index(index);
  if (c.size() == 1) return SymmetricPolyVector({Complex{1.0, 0.0}});
  return elem_sym_all(c.suppressed(index));
}

inline constexpr double kRealityTol = 1e-9;

/// True iff |Im s_m(c)| <= tol * max(1, |s_m(c)|) for all 1 <= m <= N,
/// i.e. the whole symmetric-polynomial vector is real up to tolerance.
inline bool all_sm_real(const ComplexTuple& c, double tol = kRealityTol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("all_sm_real: tol must be >= 0");
  const SymmetricPolyVector s = elem_sym_all(c);
  for (int m = 1; m <= s.degree(); ++m) {
    const Complex sm = s.at(m);
    if (std::abs(sm.imag()) > tol * std::max(1.0, std::abs(sm))) return false;
  }
  return true;
}

}  // namespace starspec
