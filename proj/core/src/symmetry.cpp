#include "starspec/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "starspec/symmetric_poly.hpp"

namespace starspec {

std::vector<int> PairingPermutation::map(int n) const {
  std::vector<int> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = i;
  for (const auto& [i, j] : pairs) {
    out[static_cast<std::size_t>(i)] = j;
    out[static_cast<std::size_t>(j)] = i;
  }
  return out;
}

ComplexTuple PairingPermutation::apply(const ComplexTuple& c) const {
  const std::vector<int> perm = map(c.size());
  std::vector<Complex> out(static_cast<std::size_t>(c.size()));
  for (int i = 0; i < c.size(); ++i)
    out[static_cast<std::size_t>(i)] = c[perm[static_cast<std::size_t>(i)]];
  return ComplexTuple(std::move(out));
}

std::optional<PairingPermutation> conjugation_pairing(const RobinTuple& h, double tol) {
  if (!(tol >= 0.0)) throw std::invalid_argument("conjugation_pairing: tol must be >= 0");
  const int n = h.edge_count();
  std::vector<bool> matched(static_cast<std::size_t>(n), false);
  PairingPermutation perm;
  for (int i = 0; i < n; ++i) {
    if (matched[static_cast<std::size_t>(i)]) continue;
    const Complex hi = h[i];
    const double scale = std::max(1.0, std::abs(hi));
    if (std::abs(hi.imag()) <= tol * scale) {
      perm.fixed_points.push_back(i);
      matched[static_cast<std::size_t>(i)] = true;
      continue;
    }
    int best = -1;
    double best_dist = 0.0;
    for (int j = i + 1; j < n; ++j) {
      if (matched[static_cast<std::size_t>(j)]) continue;
      const double dist = std::abs(h[j] - std::conj(hi));
      if (best < 0 || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best < 0 || best_dist > tol * scale) return std::nullopt;
    perm.pairs.emplace_back(i, best);
    matched[static_cast<std::size_t>(i)] = true;
    matched[static_cast<std::size_t>(best)] = true;
  }
  return perm;
}

ReflectionCheck spectrum_reflection_check(const std::vector<SpectralPoint>& points,
                                          double tol) {
  if (!(tol >= 0.0))
    throw std::invalid_argument("spectrum_reflection_check: tol must be >= 0");
  const std::size_t n = points.size();
  std::vector<bool> matched(n, false);
  ReflectionCheck out;
  for (std::size_t i = 0; i < n; ++i) {
    if (matched[i]) continue;
    const Complex li = points[i].lambda;
    const double scale = std::max(1.0, std::abs(li));
    if (std::abs(li.imag()) <= tol * scale) {
      matched[i] = true;  // real eigenvalue pairs with itself
      continue;
    }
    std::size_t best = n;
    double best_dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || matched[j]) continue;
      if (points[j].multiplicity != points[i].multiplicity) continue;
      const double dist = std::abs(points[j].lambda - std::conj(li));
      if (best == n || dist < best_dist) {
        best = j;
        best_dist = dist;
      }
    }
    if (best == n || best_dist > tol * scale) {
      matched[i] = true;
      out.unpaired.push_back(points[i]);
      continue;
    }
    matched[i] = true;
    matched[best] = true;
  }
  out.symmetric = out.unpaired.empty();
  return out;
}

const char* to_string(PtVerdict v) {
  switch (v) {
    case PtVerdict::kPtSymmetric: return "PT_SYMMETRIC";
    case PtVerdict::kNotPtSymmetric: return "NOT_PT_SYMMETRIC";
    case PtVerdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

SymmetryReport pt_verdict(const RobinTuple& h, const SearchRegion& region,
                          const SymmetryOptions& options) {
  SymmetryReport report;
  report.pairing = conjugation_pairing(h, options.pair_tol);
  report.h_invariant = report.pairing.has_value();
  // Cross-validation via the reality criterion: the pairing exists exactly
  // when every s_m(h) is real.
  const bool sm_real = all_sm_real(h.h(), options.pair_tol);
  report.lemma_agrees = (sm_real == report.h_invariant);

  RootSearchResult spec = spectrum(h, region, options.solver);
  report.solver_failures = spec.failures;
  int counted = 0;
  for (const SpectralPoint& p : spec.points)
    if (p.z != Complex{0.0, 0.0}) counted += p.multiplicity;
  report.roots_counted = counted;

  const ReflectionCheck check =
      spectrum_reflection_check(spec.points, options.spectrum_tol);
  report.spectrum_symmetric = check.symmetric;
  report.unpaired_roots = check.unpaired;

  if (!report.lemma_agrees || !spec.failures.empty() || counted < 10) {
    report.verdict = PtVerdict::kInconclusive;
  } else if (report.h_invariant && report.spectrum_symmetric) {
    report.verdict = PtVerdict::kPtSymmetric;
  } else if (!report.h_invariant && !report.spectrum_symmetric) {
    report.verdict = PtVerdict::kNotPtSymmetric;
  } else {
    // Parameter-side and spectrum-side answers must agree in exact
    // arithmetic; a mismatch is a numerical tolerance failure, never
    // something to silently override.
    report.verdict = PtVerdict::kInconclusive;
  }
  return report;
}

}  // namespace starspec
