#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace starspec {

struct QuadratureOutcome {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

namespace gk15 {
// Gauss-Kronrod 7/15 abscissae and weights (positive half; node 7 is 0).
inline constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double kGaussWeights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};
}  // namespace gk15

/// Globally adaptive Gauss-Kronrod 7/15 for complex-valued integrands of a
/// real variable. The panel with the largest error estimate is bisected
/// until the total estimate clears max(abs_tol, rel_tol * |integral|), panels
/// hit max_depth, or the panel budget runs out.
template <typename F>
QuadratureOutcome integrate_adaptive(F&& f, double a, double b, double abs_tol,
                                     double rel_tol, int max_depth = 44,
                                     std::size_t max_panels = 4096) {
  using Complex = std::complex<double>;
  struct Panel {
    double a, b;
    Complex value;
    double error;
    int depth;
  };

  std::size_t evals = 0;
  auto make_panel = [&](double pa, double pb, int depth) -> Panel {
    const double mid = 0.5 * (pa + pb);
    const double half = 0.5 * (pb - pa);
    const Complex fc = f(mid);
    Complex kron = gk15::kKronrodWeights[7] * fc;
    Complex gauss = gk15::kGaussWeights[3] * fc;
    for (int j = 0; j < 7; ++j) {
      const double dx = half * gk15::kNodes[j];
      const Complex f1 = f(mid - dx);
      const Complex f2 = f(mid + dx);
      kron += gk15::kKronrodWeights[j] * (f1 + f2);
      if (j % 2 == 1) gauss += gk15::kGaussWeights[(j - 1) / 2] * (f1 + f2);
    }
    evals += 15;
    return Panel{pa, pb, kron * half, std::abs(kron - gauss) * std::abs(half), depth};
  };

  std::vector<Panel> panels;
  panels.push_back(make_panel(a, b, 0));

  auto worst = [&]() {
    std::size_t idx = 0;
    for (std::size_t i = 1; i < panels.size(); ++i)
      if (panels[i].error > panels[idx].error) idx = i;
    return idx;
  };

  QuadratureOutcome out;
  for (;;) {
    Complex total{0.0, 0.0};
    double err = 0.0;
    for (const Panel& p : panels) {
      total += p.value;
      err += p.error;
    }
    out.value = total;
    out.error = err;
    out.evaluations = evals;
    if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
      out.converged = true;
      return out;
    }
    const std::size_t w = worst();
    if (panels[w].depth >= max_depth || panels.size() >= max_panels) {
      out.converged = false;
      return out;
    }
    const Panel split = panels[w];
    const double mid = 0.5 * (split.a + split.b);
    panels[w] = make_panel(split.a, mid, split.depth + 1);
    panels.push_back(make_panel(mid, split.b, split.depth + 1));
  }
}

}  // namespace starspec
