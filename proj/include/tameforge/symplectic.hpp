#pragma once

#include <vector>

#include "tameforge/autochain.hpp"
#include "tameforge/verify.hpp"

namespace tameforge {

/// x_{n,m} for 1 <= n, m <= K, stored row-major; values pairwise more than
/// 1e-9 apart.
class PairLattice {
 public:
  /// Cantor enumeration x_{n,m} = (n+m-1)(n+m-2)/2 + m.
  static PairLattice cantor(int K, double alpha = std::sqrt(2.0));
  /// values[(n-1) K + (m-1)] = x_{n,m}. Throws InvalidArgument or NodeCollision.
  static PairLattice with_values(int K, std::vector<Complex> values, double alpha = std::sqrt(2.0));

  int K() const { return K_; }
  double alpha() const { return alpha_; }
  Complex x(int n, int m) const { return x_[static_cast<std::size_t>((n - 1) * K_ + (m - 1))]; }
  /// s_{n,m} = n + alpha m
  double s(int n, int m) const { return n + alpha_ * m; }

 private:
  int K_ = 0;
  double alpha_ = 0.0;
  std::vector<Complex> x_;
};

enum class FlattenMode { Corrected, Paper };

struct Construction {
  AutoChain chain;
  std::vector<CxVector> points;
  std::vector<CxVector> images;
};

/// sigma_3 o sigma_2 o sigma_1 on C^{2n}: z_{n+1} += z_1, z_1 += f(z_{n+1}),
/// z_{n+1} += g(z_1); maps alpha_j e_1 to beta_j e_1.
Construction axis_relabel(const std::vector<Complex>& alpha, const std::vector<Complex>& beta, int n);

/// 2n-1 Forstneric shears mapping b_i e_1 to targets[i]: directions
/// e_j + e_{n+1} (argument z_1 - z_{n+j}) and e_{n+j} + e_{n+1} (argument
/// z_1 + z_j) for 2 <= j <= n, then e_{n+1} (argument z_1). Values are solved
/// from the current images. Throws StageCollisionError (1-based stage).
Construction fiber_lift_chain(const std::vector<Complex>& b, const std::vector<CxVector>& targets, int n);

/// Maps (n, m, 0, 0) to (x_{n,m}, 0, 0, 0). Paper mode builds the chain as
/// printed, which neither maps the lattice correctly nor is symplectic.
Construction flatten_pairs_c4(const PairLattice& lattice, FlattenMode mode = FlattenMode::Corrected);

/// (F_1(z_a, z_b), F_2(z_a, z_b)) on the pair {0, 2} or {1, 3}, identity on
/// the other coordinates. Throws NotVolumePreserving.
AutoChain symplectic_lift(const AutoChain& F, int first, const ToleranceConfig& cfg = {});

/// Normalises pi_13(A) onto {(i, 0)} and lifts, then the same for pi_24 of
/// the image. images[i] lies in {(i, j, 0, 0)}.
Construction tame_c4_projection(const std::vector<CxVector>& A, std::uint64_t seed = 1);

}  // namespace tameforge
