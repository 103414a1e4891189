#pragma once

#include <string>
#include <vector>

#include "lk/algebra.hpp"

namespace lk {

/// The non-positive generators L_0, L_{-1}, ..., L_{-depth} as momenta-linear
/// functionals on the truncated phase space.  gen(m) carries trust n - m:
/// slots above that would need coefficients past the truncation.
struct LoweringGenerators {
  int n = 0;
  std::vector<CovariantFunctional> gens;  // gens[m] is L_{-m}

  const CovariantFunctional& gen(int m) const { return gens.at(static_cast<size_t>(m)); }
  int depth() const { return static_cast<int>(gens.size()) - 1; }
};

/// Builds L_0, L_{-1}, L_{-2} by subtracting the non-conserved momentum
/// corrections from the non-negative Laurent part of f' psibar, then extends
/// to depth by the bracket recursion L_{-m} = {L_{-m+1}, L_{-1}}/(m-2).
/// Requires depth <= n - 1 so every leading coefficient is representable.
LoweringGenerators build_L_nonpositive(int n, int depth);

/// The function-level images z f' - f, f' - 2 c1 f - 1, f'/z - 1/f - 3 c1 +
/// (c1^2 - 4 c2) f for k = 0, -1, -2 as symbolic series sum_j a_j z^{j+1}.
TruncatedTaylor<CoeffPolynomial> lowering_action_series(int k, int n);

struct ActionCheckResult {
  int k = 0;
  int slots_checked = 0;
  bool ok = false;
  std::string detail;
};

/// Verifies that the covariant functional L_k from build_L_nonpositive,
/// read as a vector field through z^{j+1} <-> d/dc_j, matches the printed
/// function-level action on a symbolic normalized map.  k in {0, -1, -2}.
ActionCheckResult kirillov_action_check(int k, int n);

}  // namespace lk
