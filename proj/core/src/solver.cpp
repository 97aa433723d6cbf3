#include "starspec/solver.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <utility>

#include "starspec/linalg.hpp"
#include "starspec/quadrature.hpp"

namespace starspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double normalized_residual(const SecularEvaluator& eval, Complex z) {
  const double scale = std::max(1.0, std::pow(std::abs(z), eval.edge_count()));
  return std::abs(eval.d_sum(z)) / scale;
}

// ----- winding numbers -------------------------------------------------

// Integral of D'/D along the segment a -> b, divided out by 2*pi*i later.
std::optional<Complex> edge_log_derivative_integral(const SecularEvaluator& eval,
                                                    Complex a, Complex b) {
  const Complex dz = b - a;
  auto f = [&](double t) -> Complex {
    const Complex z = a + t * dz;
    const auto vd = eval.value_and_derivative(z);
    return vd.derivative / vd.value * dz;
  };
  const auto res = integrate_adaptive(f, 0.0, 1.0, 2e-3, 1e-8, 44, 6000);
  if (!res.converged || !is_finite(res.value)) return std::nullopt;
  return res.value;
}

// Winding number of D over the rectangle boundary (counterclockwise);
// nullopt when the quadrature fails to converge or the result refuses to
// snap to a non-negative integer within 0.25.
std::optional<int> winding_rectangle(const SecularEvaluator& eval,
                                     const SearchRegion& r) {
  const Complex c1{r.re_min, r.im_min}, c2{r.re_max, r.im_min};
  const Complex c3{r.re_max, r.im_max}, c4{r.re_min, r.im_max};
  Complex total{0.0, 0.0};
  for (const auto& [a, b] : {std::pair{c1, c2}, std::pair{c2, c3},
                             std::pair{c3, c4}, std::pair{c4, c1}}) {
    const auto part = edge_log_derivative_integral(eval, a, b);
    if (!part) return std::nullopt;
    total += *part;
  }
  const Complex w = total / Complex{0.0, kTwoPi};
  const double k = std::round(w.real());
  if (k < 0.0 || std::abs(w - Complex{k, 0.0}) > 0.25) return std::nullopt;
  return static_cast<int>(k);
}

// Retries with the boundary pushed outward by up to 1e-6, per the
// boundary-zero precondition.
int count_zeros_with_retries(const SecularEvaluator& eval, const SearchRegion& r) {
  for (const double pad : {0.0, 2.5e-7, 6.1e-7, 1e-6}) {
    const SearchRegion grown{r.re_min - pad, r.re_max + pad, r.im_min - pad,
                             r.im_max + pad};
    if (const auto count = winding_rectangle(eval, grown)) return *count;
  }
  throw SolverError("count_zeros: boundary-zero condition unresolvable after retries");
}

// Winding number on a circle by trapezoid doubling (exact for smooth
// periodic integrands up to exponentially small terms).
std::optional<int> winding_circle(const SecularEvaluator& eval, Complex center,
                                  double radius) {
  Complex prev{0.0, 0.0};
  bool have_prev = false;
  for (int m = 64; m <= 4096; m *= 2) {
    Complex sum{0.0, 0.0};
    const double dtheta = kTwoPi / m;
    for (int j = 0; j < m; ++j) {
      const double theta = j * dtheta;
      const Complex offset = radius * Complex{std::cos(theta), std::sin(theta)};
      const Complex z = center + offset;
      const auto vd = eval.value_and_derivative(z);
      const Complex dz_dtheta = Complex{0.0, 1.0} * offset;
      sum += vd.derivative / vd.value * dz_dtheta;
    }
    const Complex w = sum * dtheta / Complex{0.0, kTwoPi};
    if (!is_finite(w)) return std::nullopt;
    if (have_prev && std::abs(w - prev) < 0.05) {
      const double k = std::round(w.real());
      if (k >= 0.0 && std::abs(w - Complex{k, 0.0}) < 0.25)
        return static_cast<int>(k);
      return std::nullopt;
    }
    prev = w;
    have_prev = true;
  }
  return std::nullopt;
}

std::optional<int> winding_circle_retry(const SecularEvaluator& eval, Complex center,
                                        double radius, double* used_radius) {
  for (const double factor : {1.0, 1.37, 0.71}) {
    if (const auto m = winding_circle(eval, center, radius * factor)) {
      *used_radius = radius * factor;
      return m;
    }
  }
  return std::nullopt;
}

// ----- Newton refinement ------------------------------------------------

struct NewtonOutcome {
  Complex z{};
  bool converged = false;
};

// Plain Newton with a multiplicity-aware step scale: the ratio of
// consecutive steps approaches (m-1)/m at an m-fold root, so scaling the
// step by the estimated m restores fast convergence there.
NewtonOutcome newton_refine(const SecularEvaluator& eval, Complex z0,
                            const SearchRegion& bounds, double tol,
                            int max_iter = 400) {
  Complex z = z0;
  const double escape = 1.5 * bounds.diameter() + 1.0;
  double prev_step = -1.0;
  int mult_scale = 1;
  for (int it = 0; it < max_iter; ++it) {
    const auto vd = eval.value_and_derivative(z);
    if (vd.value == Complex{0.0, 0.0}) return {z, true};
    if (vd.derivative == Complex{0.0, 0.0}) {
      z += Complex{1e-9 * (1.0 + std::abs(z)), 0.0};
      continue;
    }
    const Complex step = vd.value / vd.derivative;
    if (!is_finite(step)) return {z, false};
    const double step_len = std::abs(step);
    if (prev_step > 0.0 && step_len < 0.1 * (1.0 + std::abs(z))) {
      const double ratio = step_len / prev_step;
      if (ratio >= 0.3 && ratio <= 0.97) {
        const int m = static_cast<int>(std::lround(1.0 / (1.0 - ratio)));
        if (m >= 1 && m <= 16) mult_scale = m;
      } else {
        mult_scale = 1;  // quadratic phase, or an overshoot from a bad estimate
      }
    }
    prev_step = step_len;
    z -= static_cast<double>(mult_scale) * step;
    if (std::abs(z - bounds.center()) > escape) return {z, false};
    if (mult_scale * step_len <= tol) return {z, true};
  }
  return {z, false};
}

// ----- subdivision ------------------------------------------------------

struct SubdivisionContext {
  const SecularEvaluator& eval;
  SolverOptions options;
  std::vector<SpectralPoint>* points;
  std::vector<RegionFailure>* failures;
};

SpectralPoint make_point(const SecularEvaluator& eval, Complex z, int multiplicity,
                         double enclosure) {
  return SpectralPoint{z, z * z, multiplicity, normalized_residual(eval, z), enclosure};
}

// One Newton run from a handful of starts; accepts only roots that stay in
// the region and whose small-circle winding equals the region's count.
bool try_resolve_cluster(const SubdivisionContext& ctx, const SearchRegion& r,
                         int count) {
  const double r_mult = std::max(10.0 * ctx.options.tol, 1e-8);
  const Complex c = r.center();
  const Complex starts[5] = {
      c,
      {r.re_min + 0.25 * r.width(), r.im_min + 0.25 * r.height()},
      {r.re_min + 0.75 * r.width(), r.im_min + 0.25 * r.height()},
      {r.re_min + 0.25 * r.width(), r.im_min + 0.75 * r.height()},
      {r.re_min + 0.75 * r.width(), r.im_min + 0.75 * r.height()},
  };
  for (const Complex& z0 : starts) {
    const auto nr = newton_refine(ctx.eval, z0, r, ctx.options.tol);
    if (!nr.converged || !r.contains(nr.z)) continue;
    double used_radius = r_mult;
    const auto m = winding_circle_retry(ctx.eval, nr.z, r_mult, &used_radius);
    if (!m) continue;
    if (*m == count) {
      ctx.points->push_back(make_point(ctx.eval, nr.z, count, used_radius));
      return true;
    }
    return false;  // other roots elsewhere in the region; subdivide
  }
  return false;
}

void process_region(const SubdivisionContext& ctx, const SearchRegion& r, int count,
                    int depth) {
  if (count == 0) return;
  if (try_resolve_cluster(ctx, r, count)) return;

  const double tiny = std::max(4.0 * std::max(10.0 * ctx.options.tol, 1e-8), 1e-7);
  if (depth >= ctx.options.max_depth || r.diameter() < tiny) {
    // Unresolvable cluster: report the Newton point with the region's full
    // count rather than dropping anything.
    const auto nr = newton_refine(ctx.eval, r.center(), r, ctx.options.tol);
    if (nr.converged && r.contains(nr.z)) {
      ctx.points->push_back(make_point(ctx.eval, nr.z, count, r.diameter()));
    } else {
      ctx.failures->push_back({r, "cluster unresolved at subdivision limit"});
    }
    return;
  }

  // Quadrisect with slightly asymmetric split fractions so lattice-aligned
  // roots do not land on child boundaries; retry with alternates until the
  // child counts reproduce the parent count.
  static constexpr double kSplits[3][2] = {
      {0.51371, 0.50913}, {0.47211, 0.53117}, {0.55713, 0.46271}};
  for (const auto& frac : kSplits) {
    const double xm = r.re_min + frac[0] * r.width();
    const double ym = r.im_min + frac[1] * r.height();
    const SearchRegion children[4] = {
        {r.re_min, xm, r.im_min, ym},
        {xm, r.re_max, r.im_min, ym},
        {r.re_min, xm, ym, r.im_max},
        {xm, r.re_max, ym, r.im_max},
    };
    int counts[4];
    int total = 0;
    bool ok = true;
    for (int i = 0; i < 4; ++i) {
      try {
        counts[i] = count_zeros_with_retries(ctx.eval, children[i]);
      } catch (const SolverError&) {
        ok = false;
        break;
      }
      total += counts[i];
    }
    if (!ok || total != count) continue;
    for (int i = 0; i < 4; ++i)
      process_region(ctx, children[i], counts[i], depth + 1);
    return;
  }
  ctx.failures->push_back({r, "child winding counts never matched parent"});
}

// Region minus the origin-exclusion square, as up to four rectangles.
std::vector<SearchRegion> clip_origin_square(const SearchRegion& r) {
  const double e = kOriginExclusionRadius;
  if (r.re_max <= -e || r.re_min >= e || r.im_max <= -e || r.im_min >= e)
    return {r};
  std::vector<SearchRegion> parts;
  if (r.re_min < -e) parts.push_back({r.re_min, -e, r.im_min, r.im_max});
  if (r.re_max > e) parts.push_back({e, r.re_max, r.im_min, r.im_max});
  const double mid_lo = std::max(r.re_min, -e), mid_hi = std::min(r.re_max, e);
  if (mid_lo < mid_hi) {
    if (r.im_max > e) parts.push_back({mid_lo, mid_hi, e, r.im_max});
    if (r.im_min < -e) parts.push_back({mid_lo, mid_hi, r.im_min, -e});
  }
  return parts;
}

struct StripResult {
  std::vector<SpectralPoint> points;
  std::vector<RegionFailure> failures;
};

StripResult search_strip(const SecularEvaluator& eval, const SearchRegion& strip,
                         const SolverOptions& options) {
  StripResult out;
  SubdivisionContext ctx{eval, options, &out.points, &out.failures};
  try {
    const int count = count_zeros_with_retries(eval, strip);
    process_region(ctx, strip, count, 0);
  } catch (const SolverError& e) {
    out.failures.push_back({strip, e.what()});
  }
  return out;
}

void sort_points(std::vector<SpectralPoint>& pts) {
  std::sort(pts.begin(), pts.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
}

}  // namespace

int count_zeros(const RobinTuple& h, const SearchRegion& region) {
  region.validate();
  const SecularEvaluator eval(h);
  return count_zeros_with_retries(eval, region);
}

RootSearchResult find_roots(const RobinTuple& h, const SearchRegion& region,
                            const SolverOptions& options) {
  region.validate();
  if (!(options.tol > 0.0)) throw std::invalid_argument("find_roots: tol must be > 0");
  const SecularEvaluator eval(h);

  // Strips of bounded width keep subdivision trees shallow and give the
  // parallel path balanced independent tasks.
  std::vector<SearchRegion> strips;
  for (const SearchRegion& part : clip_origin_square(region)) {
    const int pieces = std::max(1, static_cast<int>(std::ceil(part.width() / 2.5)));
    const double w = part.width() / pieces;
    for (int i = 0; i < pieces; ++i)
      strips.push_back({part.re_min + i * w, part.re_min + (i + 1) * w, part.im_min,
                        part.im_max});
  }

  std::vector<StripResult> results(strips.size());
  const unsigned hw = std::thread::hardware_concurrency();
  if (options.parallel && strips.size() > 1 && hw > 1) {
    std::vector<std::future<StripResult>> futures;
    futures.reserve(strips.size());
    for (const SearchRegion& s : strips)
      futures.push_back(std::async(std::launch::async, [&eval, s, &options] {
        return search_strip(eval, s, options);
      }));
    for (std::size_t i = 0; i < futures.size(); ++i) results[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < strips.size(); ++i)
      results[i] = search_strip(eval, strips[i], options);
  }

  RootSearchResult out;
  for (StripResult& r : results) {
    out.points.insert(out.points.end(), r.points.begin(), r.points.end());
    out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
  }
  sort_points(out.points);
  return out;
}

RootSearchResult find_roots(const RobinTuple& h, const SearchRegion& region, double tol) {
  SolverOptions options;
  options.tol = tol;
  return find_roots(h, region, options);
}

RootSearchResult spectrum(const RobinTuple& h, const SearchRegion& region,
                          const SolverOptions& options) {
  RootSearchResult res = find_roots(h, region, options);
  // Canonical representative: Re z >= 0 (and Im z >= 0 on the imaginary axis).
  for (SpectralPoint& p : res.points) {
    if (p.z.real() < 0.0 || (p.z.real() == 0.0 && p.z.imag() < 0.0)) p.z = -p.z;
    p.lambda = p.z * p.z;
  }
  sort_points(res.points);
  // Merge parity duplicates (same eigenvalue found twice, not a doubled one).
  std::vector<SpectralPoint> dedup;
  for (const SpectralPoint& p : res.points) {
    if (!dedup.empty()) {
      SpectralPoint& q = dedup.back();
      const double merge_tol =
          std::max({10.0 * options.tol, p.enclosure_radius, q.enclosure_radius});
      if (std::abs(p.z - q.z) <= merge_tol) {
        if (p.residual < q.residual) q = p;
        continue;
      }
    }
    dedup.push_back(p);
  }
  res.points = std::move(dedup);

  const ZeroModeResult zero = zero_eigenvalue_test(h);
  if (zero.exists) {
    // Analytic point: exact by construction, so the enclosure is degenerate.
    res.points.insert(res.points.begin(),
                      SpectralPoint{Complex{0.0, 0.0}, Complex{0.0, 0.0},
                                    zero.multiplicity, 0.0, 0.0});
  }
  return res;
}

RootSearchResult spectrum(const RobinTuple& h, const SearchRegion& region, double tol) {
  SolverOptions options;
  options.tol = tol;
  return spectrum(h, region, options);
}

ZeroModeResult zero_eigenvalue_test(const RobinTuple& h) {
  const int n = h.edge_count();
  int k = 0;  // entries equal to -1 (to tolerance)
  for (int i = 0; i < n; ++i)
    if (std::abs(h[i] + Complex{1.0, 0.0}) <= 1e-12 * (1.0 + std::abs(h[i]))) ++k;
  if (k > 0) return {k >= 2, std::max(0, k - 1)};
  Complex sum{0.0, 0.0};
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    const Complex term = h[i] / (Complex{1.0, 0.0} + h[i]);
    sum += term;
    scale += std::abs(term);
  }
  const bool exists = std::abs(sum) <= 1e-12 * std::max(1.0, scale);
  return {exists, exists ? 1 : 0};
}

Complex Eigenfunction::value(int edge, double x) const {
  return A[edge] * std::cos(z * x) + B[edge] * std::sin(z * x);
}

Complex Eigenfunction::derivative(int edge, double x) const {
  return z * (B[edge] * std::cos(z * x) - A[edge] * std::sin(z * x));
}

Eigenfunction reconstruct_eigenfunction(const RobinTuple& h, Complex z) {
  const int n = h.edge_count();
  if (std::abs(z) < 1e-12)
    throw std::invalid_argument("reconstruct_eigenfunction: z must be nonzero");
  const SecularEvaluator eval{h};
  if (normalized_residual(eval, z) > 1e-6)
    throw std::invalid_argument("reconstruct_eigenfunction: z is not a root");

  linalg::Matrix m(n);
  double scale = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    m.at(i, i) = alpha(h[i], z);
    m.at(i, i + 1) = -alpha(h[i + 1], z);
  }
  for (int j = 0; j < n; ++j) m.at(n - 1, j) = beta(h[j], z);
  for (int i = 0; i < n; ++i)
    scale = std::max({scale, std::abs(alpha(h[i], z)), std::abs(beta(h[i], z))});

  const auto ns = linalg::null_space_full_pivot(std::move(m), 1e-8, scale);
  if (ns.rank == n)
    throw std::invalid_argument(
        "reconstruct_eigenfunction: secular matrix numerically nonsingular");
  if (ns.rank == 0 && n > 1)
    throw SolverError("reconstruct_eigenfunction: rank deficiency beyond expected nullity");

  std::vector<Complex> a = ns.vec;
  int best = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(a[static_cast<std::size_t>(i)]) > std::abs(a[static_cast<std::size_t>(best)]))
      best = i;
  const Complex norm = a[static_cast<std::size_t>(best)];
  for (Complex& v : a) v /= norm;

  // When no alpha factor vanishes the null vector must follow A_i ~ 1/alpha_i.
  double alpha_min = std::numeric_limits<double>::infinity(), alpha_max = 0.0;
  for (int i = 0; i < n; ++i) {
    const double m_i = std::abs(alpha(h[i], z));
    alpha_min = std::min(alpha_min, m_i);
    alpha_max = std::max(alpha_max, m_i);
  }
  if (n > 1 && alpha_min > 1e-6 * alpha_max) {
    std::vector<Complex> prods(static_cast<std::size_t>(n));
    double prod_max = 0.0;
    for (int i = 0; i < n; ++i) {
      prods[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] * alpha(h[i], z);
      prod_max = std::max(prod_max, std::abs(prods[static_cast<std::size_t>(i)]));
    }
    double worst = 0.0;
    for (int i = 1; i < n; ++i)
      worst = std::max(worst, std::abs(prods[static_cast<std::size_t>(i)] - prods[0]));
    if (worst > 1e-6 * prod_max)
      throw SolverError("reconstruct_eigenfunction: inconsistent null vector");
  }

  std::vector<Complex> b(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) b[static_cast<std::size_t>(i)] = h[i] * a[static_cast<std::size_t>(i)] / z;
  return Eigenfunction{ComplexTuple(std::move(a)), ComplexTuple(std::move(b)), z};
}

VertexResiduals vertex_residuals(const Eigenfunction& u, const RobinTuple& h) {
  const int n = u.edge_count();
  VertexResiduals out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      out.continuity =
          std::max(out.continuity, std::abs(u.value(i, 1.0) - u.value(j, 1.0)));
  Complex deriv_sum{0.0, 0.0};
  for (int i = 0; i < n; ++i) deriv_sum += u.derivative(i, 1.0);
  out.derivative_sum = std::abs(deriv_sum);
  for (int i = 0; i < n; ++i)
    out.robin = std::max(out.robin,
                         std::abs(u.derivative(i, 0.0) - h[i] * u.value(i, 0.0)));
  return out;
}

Complex defect_boundary_formula(const Eigenfunction& u, const Eigenfunction& v,
                                const RobinTuple& h) {
  Complex sum{0.0, 0.0};
  for (int i = 0; i < h.edge_count(); ++i)
    sum += (std::conj(h[i]) - h[i]) * std::conj(u.value(i, 0.0)) * v.value(i, 0.0);
  return sum;
}

Complex defect_bilinear(const Eigenfunction& u, const Eigenfunction& v,
                        const RobinTuple& h) {
  if (u.edge_count() != h.edge_count() || v.edge_count() != h.edge_count())
    throw std::invalid_argument("defect_bilinear: edge count mismatch");
  const VertexResiduals ru = vertex_residuals(u, h), rv = vertex_residuals(v, h);
  const double worst = std::max({ru.continuity, ru.derivative_sum, ru.robin,
                                 rv.continuity, rv.derivative_sum, rv.robin});
  if (worst > 1e-6)
    throw std::invalid_argument("defect_bilinear: inputs violate vertex conditions");

  // <L u, v> - <u, L v> with L u = z_u^2 u on each edge:
  // integrand_i(x) = conj(z_u^2 u_i) v_i - conj(u_i) z_v^2 v_i.
  const Complex lu_conj = std::conj(u.z * u.z);
  const Complex lv = v.z * v.z;
  Complex total{0.0, 0.0};
  for (int i = 0; i < h.edge_count(); ++i) {
    auto f = [&](double x) -> Complex {
      const Complex cu = std::conj(u.value(i, x));
      return (lu_conj - lv) * cu * v.value(i, x);
    };
    const auto res = integrate_adaptive(f, 0.0, 1.0, 1e-13, 1e-13, 30, 2048);
    if (!res.converged)
      throw SolverError("defect_bilinear: quadrature failed to converge");
    total += res.value;
  }
  if (std::abs(total - defect_boundary_formula(u, v, h)) > 1e-8)
    throw SolverError("defect_bilinear: boundary identity violated beyond 1e-8");
  return total;
}

}  // namespace starspec
