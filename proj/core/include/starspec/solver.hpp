#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "starspec/complex_tuple.hpp"
#include "starspec/secular.hpp"

namespace starspec {

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis-aligned search rectangle in the z-plane.
struct SearchRegion {
  double re_min = 0.0;
  double re_max = 0.0;
  double im_min = 0.0;
  double im_max = 0.0;

  void validate() const {
    if (!(re_min < re_max) || !(im_min < im_max))
      throw std::invalid_argument("SearchRegion: need re_min < re_max and im_min < im_max");
  }
  double width() const { return re_max - re_min; }
  double height() const { return im_max - im_min; }
  double diameter() const { return std::hypot(width(), height()); }
  Complex center() const { return {0.5 * (re_min + re_max), 0.5 * (im_min + im_max)}; }
  bool contains(Complex z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min &&
           z.imag() <= im_max;
  }
};

/// One located root of the secular function. `lambda` = z^2; `residual` is
/// |D_h(z)| / max(1, |z|^N); `multiplicity` is the winding count of a small
/// circle around z (`enclosure_radius`).
struct SpectralPoint {
  Complex z;
  Complex lambda;
  int multiplicity = 1;
  double residual = 0.0;
  double enclosure_radius = 0.0;
};

struct RegionFailure {
  SearchRegion region;
  std::string reason;
};

struct SolverOptions {
  double tol = 1e-12;
  bool parallel = true;
  int max_depth = 64;
};

/// The z = 0 root of the sin/cos parametrization is an artifact, not an
/// eigenvalue; the solver clips the square enclosing this disk out of every
/// search region. lambda = 0 is handled by zero_eigenvalue_test instead.
inline constexpr double kOriginExclusionRadius = 0.1;

/// Zeros of D_h inside `region`, counted with multiplicity by the argument
/// principle (adaptive Gauss-Kronrod quadrature of D'/D over the boundary,
/// snapped to the nearest integer; distance > 0.25 or non-convergence triggers
/// boundary perturbation up to 1e-6 before giving up).
int count_zeros(const RobinTuple& h, const SearchRegion& region);

struct RootSearchResult {
  std::vector<SpectralPoint> points;
  std::vector<RegionFailure> failures;
  bool complete() const { return failures.empty(); }
  int total_multiplicity() const {
    int m = 0;
    for (const auto& p : points) m += p.multiplicity;
    return m;
  }
};

/// All zeros of D_h in `region` (origin square clipped out): recursive
/// quadrisection by winding count until each subregion holds one cluster,
/// Newton refinement with the analytic derivative, multiplicity by
/// small-circle winding. Results are sorted by Re z, then Im z, and are
/// identical for any scheduling of the parallel strip searches.
/// Subregions that fail to converge are reported, never silently dropped.
RootSearchResult find_roots(const RobinTuple& h, const SearchRegion& region, double tol);
RootSearchResult find_roots(const RobinTuple& h, const SearchRegion& region,
                            const SolverOptions& options);

/// find_roots output canonicalized to Re z >= 0 (the secular function is
/// even/odd in z, so -z duplicates carry no information), deduplicated, with
/// lambda = z^2 filled in and lambda = 0 appended when zero_eigenvalue_test
/// passes.
RootSearchResult spectrum(const RobinTuple& h, const SearchRegion& region, double tol);
RootSearchResult spectrum(const RobinTuple& h, const SearchRegion& region,
                          const SolverOptions& options);

struct ZeroModeResult {
  bool exists = false;
  int multiplicity = 0;
};

/// Decides whether lambda = 0 is an eigenvalue from the linear ansatz
/// u_i = A_i + B_i x with B_i = h_i A_i: if no h_i = -1 the eigenvalue exists
/// iff sum h_i/(1+h_i) = 0 (multiplicity 1); with k >= 1 entries equal to -1
/// it exists iff k >= 2, with multiplicity k-1.
ZeroModeResult zero_eigenvalue_test(const RobinTuple& h);

/// Edge-wise eigenfunction u_i(x) = A_i cos(z x) + B_i sin(z x), with
/// B_i = h_i A_i / z so the Robin condition holds by construction.
struct Eigenfunction {
  ComplexTuple A;
  ComplexTuple B;
  Complex z;

  int edge_count() const { return A.size(); }
  Complex value(int edge, double x) const;
  Complex derivative(int edge, double x) const;
};

/// Null vector of the secular matrix at a root z (elimination with full
/// pivoting), normalized so the largest-modulus amplitude is exactly 1.
/// Throws if z is not a root to tolerance or the numerical nullity is
/// impossible for the system.
Eigenfunction reconstruct_eigenfunction(const RobinTuple& h, Complex z);

struct VertexResiduals {
  double continuity = 0.0;      // max pairwise |u_i(1) - u_j(1)| (0 when N = 1)
  double derivative_sum = 0.0;  // |sum_i u_i'(1)|
  double robin = 0.0;           // max_i |u_i'(0) - h_i u_i(0)|
};

VertexResiduals vertex_residuals(const Eigenfunction& u, const RobinTuple& h);

/// <L u, v> - <u, L v> by adaptive quadrature of the defining integrals.
/// The result is checked against the boundary formula
/// sum_i (conj(h_i) - h_i) conj(u_i(0)) v_i(0) to 1e-8 absolute.
Complex defect_bilinear(const Eigenfunction& u, const Eigenfunction& v,
                        const RobinTuple& h);

/// The boundary side of the defect identity (closed form, no quadrature).
Complex defect_boundary_formula(const Eigenfunction& u, const Eigenfunction& v,
                                const RobinTuple& h);

}  // namespace starspec
