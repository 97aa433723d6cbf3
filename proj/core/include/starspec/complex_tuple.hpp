#pragma once

#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace starspec {

using Complex = std::complex<double>;

inline bool is_finite(Complex v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Ordered tuple of N >= 1 finite complex numbers. Indices are 0-based.
class ComplexTuple {
 public:
  explicit ComplexTuple(std::vector<Complex> values) : values_(std::move(values)) {
    if (values_.empty())
      throw std::invalid_argument("ComplexTuple: at least one entry required");
    for (const Complex& v : values_)
      if (!is_finite(v))
        throw std::invalid_argument("ComplexTuple: entries must be finite");
  }
  ComplexTuple(std::initializer_list<Complex> values)
      : ComplexTuple(std::vector<Complex>(values)) {}

  static ComplexTuple zeros(int n) {
    if (n < 1) throw std::invalid_argument("ComplexTuple::zeros: n must be >= 1");
    return ComplexTuple(std::vector<Complex>(static_cast<std::size_t>(n)));
  }

  int size() const { return static_cast<int>(values_.size()); }
  const Complex& operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }
  const std::vector<Complex>& values() const { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  ComplexTuple conjugated() const {
    std::vector<Complex> out(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::conj(values_[i]);
    return ComplexTuple(std::move(out));
  }

  /// Tuple with entry `index` removed. Requires N >= 2 (tuples are never empty).
  ComplexTuple suppressed(int index) const {
    check_index(index);
    if (size() == 1)
      throw std::out_of_range("ComplexTuple::suppressed: would empty the tuple");
    std::vector<Complex> out;
    out.reserve(values_.size() - 1);
    for (int j = 0; j < size(); ++j)
      if (j != index) out.push_back(values_[static_cast<std::size_t>(j)]);
    return ComplexTuple(std::move(out));
  }

  void check_index(int index) const {
    if (index < 0 || index >= size())
      throw std::out_of_range("ComplexTuple: index out of range");
  }

 private:
  std::vector<Complex> values_;
};

}  // namespace starspec
