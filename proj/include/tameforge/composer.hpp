#pragma once

#include <cstdint>
#include <vector>

#include "tameforge/autochain.hpp"

namespace tameforge {

/// Closed polydisc of the given radius in C^2.
struct CompactBox {
  double radius = 1.0;
};

struct StageLog {
  int k = 0;
  double epsilon_target = 0.0;
  /// max_deviation of the stage map against the identity on the previous box.
  double measured_deviation = 0.0;
  int matched_pairs = 0;
  /// Damping zeros per shear in the accepted round; 0 when nothing moved.
  int damping_nodes_used = 0;
  double box_radius = 0.0;
};

struct MoveStats {
  int damping_nodes_used = 0;
  double deviation = 0.0;
};

inline constexpr int kDampingRounds = 6;

/// Volume shears of C^2 mapping a to b, fixing every point of `fixed`
/// (their coordinates are interpolation zero-nodes) and moving the box by at
/// most eps in grid-measured sup norm. Each shear is evaluated at a
/// coordinate outside the box, so damping zeros inside the box pull its
/// polynomial down there; their count doubles for up to kDampingRounds.
/// Throws InvalidArgument for points inside the box or eps <= 0,
/// GenericityFailure when every route hits a fixed coordinate,
/// DampingExhausted when the last round is still above eps.
AutoChain move_point_fixing(const CxVector& a, const CxVector& b,
                            const std::vector<CxVector>& fixed, const CompactBox& box, double eps,
                            const ToleranceConfig& cfg = {}, std::uint64_t seed = 1,
                            MoveStats* stats = nullptr);

struct EquivalenceResult {
  AutoChain chain{2};
  std::vector<StageLog> stages;
  /// chains[k] is the stage map of stage k + 1.
  std::vector<AutoChain> stage_maps;
  /// Order in which the pairs were matched.
  std::vector<int> order;
};

/// Stage k moves one pending A[i] onto B[i] with a map eps0 growth^-k close
/// to the identity on a polydisc that contains every b matched so far.
/// Radii: r_0 = initial_radius, r_k = max(r_{k-1} + eps_k, max matched |b| + sum eps_j).
/// Throws DuplicatePoints, LengthMismatch, ScheduleInfeasible (no pending
/// pair lies outside the current box), DampingExhausted.
EquivalenceResult equivalence_chain(const std::vector<CxVector>& A, const std::vector<CxVector>& B,
                                    double eps0, double growth, double initial_radius = 1.0,
                                    const ToleranceConfig& cfg = {}, std::uint64_t seed = 1);

/// count pairs (A[i], B[i]) with sup norms in the shell [1.5 + 2i, 2.5 + 2i],
/// so the matching order i = 0, 1, ... is feasible from the unit box.
void shell_instance(int count, std::uint64_t seed, std::vector<CxVector>& A,
                    std::vector<CxVector>& B);

}  // namespace tameforge
