#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "starspec/secular.hpp"

namespace starspec {

/// Large-n expansion of the root series near n*pi:
///   z_n = n pi + a1/n + a3/n^3 + a5/n^5 + O(n^-7).
/// Even-index coefficients vanish identically (the rescaled secular function
/// is odd under (eps, z) -> (-eps, -z)); only a1, a3, a5 have closed forms
/// here, higher ones are estimated empirically by fit_coefficients.

template <typename C>
C F1_t(const C& x1, int n_edges, const C& pi) {
  const C N(n_edges);
  const C pi3 = pi * pi * pi;
  return -(C(3 * n_edges - 2) / (C(3) * pi3 * N * N * N)) * x1 * x1 -
         x1 / (pi3 * N * N);
}

template <typename C>
C F2_t(const C& x1, const C& x2, int n_edges, const C& pi) {
  const C N(n_edges);
  const C pi5 = pi * pi * pi * pi * pi;
  const C x1sq = x1 * x1;
  return (C(10 * n_edges * n_edges - 15 * n_edges + 6) / (C(5) * pi5 * N * N * N * N * N)) * x1sq * x1sq +
         (C(12 * n_edges - 8) / (C(3) * pi5 * N * N * N * N)) * x1sq * x1 -
         (C(7 * n_edges - 6) / (pi5 * N * N * N * N)) * x1sq * x2 +
         (C(2) / (pi5 * N * N * N)) * x1sq -
         (C(8) / (pi5 * N * N * N)) * x1 * x2 +
         (C(4) / (pi5 * N * N * N)) * x2 * x2;
}

template <typename C>
struct ExpansionCoefficientsT {
  C a1{};
  C a3{};
  C a5{};
};

/// Closed-form a1, a3, a5 from the symmetric polynomials s (s[0] = 1):
///   a1 = s1/(pi N),
///   a3 = s1 F1(s1) + (2/(pi^3 N^2)) s1 s2,
///   a5 = s1 F2(s1, s2) + (3/(pi^5 N^3)) s1^2 s3.
template <typename C>
ExpansionCoefficientsT<C> expansion_coefficients_t(const std::vector<C>& s,
                                                   int n_edges, const C& pi) {
  const C N(n_edges);
  const C s1 = s.size() > 1 ? s[1] : C(0);
  const C s2 = s.size() > 2 ? s[2] : C(0);
  const C s3 = s.size() > 3 ? s[3] : C(0);
  const C pi3 = pi * pi * pi;
  const C pi5 = pi3 * pi * pi;
  ExpansionCoefficientsT<C> out;
  out.a1 = s1 / (pi * N);
  out.a3 = s1 * F1_t(s1, n_edges, pi) + (C(2) / (pi3 * N * N)) * s1 * s2;
  out.a5 = s1 * F2_t(s1, s2, n_edges, pi) + (C(3) / (pi5 * N * N * N)) * s1 * s1 * s3;
  return out;
}

template <typename C>
C predict_root_t(int n, const ExpansionCoefficientsT<C>& coeffs, const C& pi) {
  if (n < 1) throw std::invalid_argument("predict_root: n must be >= 1");
  const C nn(n);
  return nn * pi + coeffs.a1 / nn + coeffs.a3 / (nn * nn * nn) +
         coeffs.a5 / (nn * nn * nn * nn * nn);
}

struct ExpansionCoefficients {
  Complex a1{};
  Complex a3{};
  Complex a5{};
  /// b_j = pi^j a_j for j in {1, 3, 5}.
  Complex b(int j) const;
};

ExpansionCoefficients expansion_coefficients(const RobinTuple& h);
Complex coeff_a1(const RobinTuple& h);
Complex coeff_a3(const RobinTuple& h);
Complex coeff_a5(const RobinTuple& h);
Complex F1(Complex x1, int n_edges);
Complex F2(Complex x1, Complex x2, int n_edges);

/// n pi + a1/n + a3/n^3 + a5/n^5.
Complex predict_root(int n, const RobinTuple& h);

/// The expansion is asymptotic; below n = 10 (1 + max|h_i|) predictions are
/// flagged as outside the validated regime.
bool in_validated_regime(int n, const RobinTuple& h);

struct RootSample {
  int n = 0;
  Complex z{};
};

template <typename C, typename Real>
struct FitResultT {
  C a1_hat{};
  C a3_hat{};
  Real decay_exponent{};
  bool residuals_monotone = true;
};

using FitResult = FitResultT<Complex, double>;

/// Richardson extrapolation of the root deviations on an (n, 2n) pair:
///   d_n = n (z_n - n pi)           -> a1_hat = (4 d_{2n} - d_n) / 3,
///   e_n = n^3 (z_n - n pi - a1/n)  -> a3_hat likewise,
/// plus the log-log slope of |z_n - predict(n)| over all samples whose
/// residual clears the precision floor of the scalar type (slope is -inf when
/// everything is below the floor, i.e. the prediction is exact to precision).
/// Requires >= 4 samples with distinct n and at least one doubling pair.
template <typename C, typename Real>
FitResultT<C, Real> fit_coefficients_t(std::vector<std::pair<int, C>> samples,
                                       const ExpansionCoefficientsT<C>& coeffs,
                                       const Real& pi) {
  using std::abs;
  using std::log;
  if (samples.size() < 4)
    throw std::invalid_argument("fit_coefficients: need at least 4 roots");
  std::sort(samples.begin(), samples.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first == samples[i - 1].first)
      throw std::invalid_argument("fit_coefficients: duplicate n");
  if (samples.front().first < 1)
    throw std::invalid_argument("fit_coefficients: n must be >= 1");

  // Largest doubling pair (n, 2n).
  int n_lo = -1;
  for (std::size_t i = samples.size(); i-- > 0;) {
    const int n2 = samples[i].first;
    if (n2 % 2 != 0) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (samples[j].first == n2 / 2) {
        n_lo = n2 / 2;
        break;
      }
    if (n_lo > 0) break;
  }
  if (n_lo < 0)
    throw std::invalid_argument("fit_coefficients: no (n, 2n) pair among samples");

  auto z_at = [&](int n) -> C {
    for (const auto& s : samples)
      if (s.first == n) return s.second;
    throw std::logic_error("fit_coefficients: missing sample");
  };

  FitResultT<C, Real> out;
  const C z1 = z_at(n_lo), z2 = z_at(2 * n_lo);
  const C d1 = C(n_lo) * (z1 - C(n_lo) * pi);
  const C d2 = C(2 * n_lo) * (z2 - C(2 * n_lo) * pi);
  out.a1_hat = (C(4) * d2 - d1) / C(3);
  const C e1 = C(n_lo) * C(n_lo) * C(n_lo) * (z1 - C(n_lo) * pi - out.a1_hat / C(n_lo));
  const C e2 = C(8 * n_lo) * C(n_lo) * C(n_lo) *
               (z2 - C(2 * n_lo) * pi - out.a1_hat / C(2 * n_lo));
  out.a3_hat = (C(4) * e2 - e1) / C(3);

  // Residual decay against the closed-form prediction.
  const Real floor = Real(1000) * std::numeric_limits<Real>::epsilon();
  std::vector<Real> log_n, log_r;
  Real prev_r(-1);
  for (const auto& [n, z] : samples) {
    const Real r = abs(z - predict_root_t(n, coeffs, C(pi)));
    const Real scale = Real(n) * pi;
    if (prev_r >= Real(0) && r > prev_r * Real(1.1) && r > floor * scale &&
        prev_r > floor * scale)
      out.residuals_monotone = false;
    prev_r = r;
    if (r > floor * scale) {
      log_n.push_back(log(Real(n)));
      log_r.push_back(log(r));
    }
  }
  if (log_n.size() >= 3) {
    Real mx(0), my(0);
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      mx += log_n[i];
      my += log_r[i];
    }
    mx /= Real(static_cast<int>(log_n.size()));
    my /= Real(static_cast<int>(log_n.size()));
    Real num(0), den(0);
    for (std::size_t i = 0; i < log_n.size(); ++i) {
      num += (log_n[i] - mx) * (log_r[i] - my);
      den += (log_n[i] - mx) * (log_n[i] - mx);
    }
    out.decay_exponent = num / den;
  } else {
    out.decay_exponent = -std::numeric_limits<Real>::infinity();
  }
  return out;
}

FitResult fit_coefficients(const std::vector<RootSample>& roots, const RobinTuple& h);

}  // namespace starspec
