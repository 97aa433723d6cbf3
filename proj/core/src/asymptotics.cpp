#include "starspec/asymptotics.hpp"

#include <cmath>
#include <numbers>

namespace starspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex ExpansionCoefficients::b(int j) const {
  switch (j) {
    case 1: return kPi * a1;
    case 3: return kPi * kPi * kPi * a3;
    case 5: return kPi * kPi * kPi * kPi * kPi * a5;
    default: throw std::out_of_range("ExpansionCoefficients::b: j must be 1, 3 or 5");
  }
}

ExpansionCoefficients expansion_coefficients(const RobinTuple& h) {
  const auto s = elementary_symmetric(h.h().values());
  const auto c = expansion_coefficients_t(s, h.edge_count(), Complex{kPi, 0.0});
  return {c.a1, c.a3, c.a5};
}

Complex coeff_a1(const RobinTuple& h) { return expansion_coefficients(h).a1; }
Complex coeff_a3(const RobinTuple& h) { return expansion_coefficients(h).a3; }
Complex coeff_a5(const RobinTuple& h) { return expansion_coefficients(h).a5; }

Complex F1(Complex x1, int n_edges) { return F1_t(x1, n_edges, Complex{kPi, 0.0}); }
Complex F2(Complex x1, Complex x2, int n_edges) {
  return F2_t(x1, x2, n_edges, Complex{kPi, 0.0});
}

Complex predict_root(int n, const RobinTuple& h) {
  const ExpansionCoefficients c = expansion_coefficients(h);
  return predict_root_t(n, ExpansionCoefficientsT<Complex>{c.a1, c.a3, c.a5},
                        Complex{kPi, 0.0});
}

bool in_validated_regime(int n, const RobinTuple& h) {
  double h_max = 0.0;
  for (int i = 0; i < h.edge_count(); ++i) h_max = std::max(h_max, std::abs(h[i]));
  return n >= 10.0 * (1.0 + h_max);
}

FitResult fit_coefficients(const std::vector<RootSample>& roots, const RobinTuple& h) {
  std::vector<std::pair<int, Complex>> samples;
  samples.reserve(roots.size());
  for (const RootSample& r : roots) samples.emplace_back(r.n, r.z);
  const ExpansionCoefficients c = expansion_coefficients(h);
  return fit_coefficients_t<Complex, double>(
      std::move(samples), ExpansionCoefficientsT<Complex>{c.a1, c.a3, c.a5}, kPi);
}

}  // namespace starspec
