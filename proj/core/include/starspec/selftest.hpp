#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace starspec {

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  double max_error = 0.0;
};

/// Randomized cross-validation suites over the library's algebraic
/// identities: symmetric-polynomial recursion/sum-rule/product/homogeneity/
/// conjugation, pairing criterion both ways, three-form secular agreement,
/// conjugation identity, parity, the closed form at n*pi, the rescaled
/// near-n*pi reduction and its odd symmetry, the detour bound, and the
/// zero-eigenvalue closed form against a rank oracle.
std::vector<SuiteResult> run_verification(std::uint64_t seed, int trials_per_suite = 1000);

}  // namespace starspec
