#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "starspec/secular.hpp"
#include "starspec/solver.hpp"

namespace starspec {

/// Involution on edge indices (0-based) pairing conjugate Robin parameters;
/// fixed points are the (near-)real entries. Composing this permutation with
/// entrywise conjugation maps h to itself, which is the whole finite shadow
/// of the PT action needed here.
struct PairingPermutation {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> fixed_points;

  /// Full index map (its own inverse).
  std::vector<int> map(int n) const;
  ComplexTuple apply(const ComplexTuple& c) const;
};

inline constexpr double kPairingTol = 1e-9;
inline constexpr double kSpectrumTol = 1e-8;

/// Greedy multiset matching: near-real entries become fixed points, each
/// remaining entry is matched to the nearest unmatched conjugate within
/// tol * max(1, |h_i|). Absent when any entry stays unmatched.
std::optional<PairingPermutation> conjugation_pairing(const RobinTuple& h,
                                                      double tol = kPairingTol);

struct ReflectionCheck {
  bool symmetric = false;
  std::vector<SpectralPoint> unpaired;
};

/// True iff the multiset {lambda} is closed under conjugation within tol,
/// with matching multiplicities. Input must be deduplicated/canonicalized
/// (spectrum() output). Every violator is named in `unpaired`.
ReflectionCheck spectrum_reflection_check(const std::vector<SpectralPoint>& points,
                                          double tol = kSpectrumTol);

enum class PtVerdict {
  kPtSymmetric,
  kNotPtSymmetric,
  kInconclusive,
};

const char* to_string(PtVerdict v);

struct SymmetryReport {
  bool h_invariant = false;
  std::optional<PairingPermutation> pairing;
  bool spectrum_symmetric = false;
  std::vector<SpectralPoint> unpaired_roots;
  PtVerdict verdict = PtVerdict::kInconclusive;
  // Diagnostics.
  bool lemma_agrees = true;  // pairing existence vs all s_m(h) real
  int roots_counted = 0;     // total multiplicity of nonzero roots examined
  std::vector<RegionFailure> solver_failures;
};

struct SymmetryOptions {
  double pair_tol = kPairingTol;
  double spectrum_tol = kSpectrumTol;
  SolverOptions solver{};
};

/// Runs conjugation_pairing, computes the spectrum over `region`, runs
/// spectrum_reflection_check, and cross-validates the pairing against the
/// reality of the symmetric polynomials. Parameter-side and spectrum-side
/// answers must agree (they are equivalent exactly); any numerical
/// disagreement, solver failure, or window holding fewer than 10 roots
/// yields kInconclusive rather than trusting either side.
SymmetryReport pt_verdict(const RobinTuple& h, const SearchRegion& region,
                          const SymmetryOptions& options = {});

}  // namespace starspec
