#pragma once

#include <optional>
#include <vector>

#include "tameforge/autochain.hpp"

namespace tameforge {

/// {alpha_j e_1} in C^n; first_coords pairwise distinct.
struct AxisSet {
  int n = 2;
  std::vector<Complex> first_coords;
};

/// z_j += f_j(z_1) for j = 2..n, mapping first_coords[i] e_1 to targets[i].
/// Throws LengthMismatch, DimensionMismatch, FirstCoordinateMismatch, NodeCollision.
AutoChain line_to_targets(const AxisSet& b, const std::vector<CxVector>& targets);

/// Three volume shears of C^2 mapping (alpha_j, 0) to (beta_j, 0):
/// y += p(x), p(alpha_j) = j; x += q(y), q(j) = beta_j - alpha_j; y += r(x), r(beta_j) = -j.
AutoChain c2_relabel(const std::vector<Complex>& alpha, const std::vector<Complex>& beta);

struct Normalization {
  AutoChain chain{2};
  std::vector<CxVector> points;
  /// images[i] = (i + 1, 0)
  std::vector<CxVector> images;
  /// c of the preliminary shear x += c y, when one was needed.
  std::optional<Complex> preliminary;
};

/// Volume-preserving chain mapping S[i] to (i + 1, 0). When x-coordinates
/// repeat, a preliminary x += c y with small seeded c is tried up to 8 times
/// (GenericityFailure otherwise, which happens for repeated points).
Normalization very_tame_normalize(const std::vector<CxVector>& S, std::uint64_t seed = 1);

}  // namespace tameforge
