#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tameforge/autochain.hpp"
#include "tameforge/numerics.hpp"

namespace tameforge {

struct Check {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  /// Diagnostic checks that document a known discrepancy; they are expected
  /// to fail and do not count against the verdict.
  bool expected_fail = false;
};

struct VerificationReport {
  std::string construction_name;
  std::vector<Check> checks;
  std::uint64_t sample_seed = 0;
  ToleranceConfig config;

  Check& add(std::string name, double residual, double tol, bool expected_fail = false);
  VerificationReport& merge(const VerificationReport& other);
  const Check* find(const std::string& name) const;
  /// True iff every check not marked expected_fail passes.
  bool ok() const;
};

/// Where verifiers draw random points from.
struct SampleSpec {
  int count = 50;
  double radius = 2.0;
  std::uint64_t seed = 20240611;
};

std::vector<CxVector> sample_points(int dim, const SampleSpec& spec);

/// max || D^T J D - J ||_inf over the points, D the finite-difference
/// Jacobian of the chain. Passes iff <= cfg.jac_tol.
VerificationReport check_symplectic(const AutoChain& chain, int n, const ToleranceConfig& cfg,
                                    const SampleSpec& samples = {});
VerificationReport check_symplectic(const AutoChain& chain, int n, const ToleranceConfig& cfg,
                                    const std::vector<CxVector>& points);

/// max |det D - 1|. Passes iff <= cfg.jac_tol.
VerificationReport check_volume(const AutoChain& chain, const ToleranceConfig& cfg,
                                const SampleSpec& samples = {});
VerificationReport check_volume(const AutoChain& chain, const ToleranceConfig& cfg,
                                const std::vector<CxVector>& points);

/// max_i || chain(points[i]) - images[i] ||_inf. Passes iff <= cfg.residual_tol.
/// Throws LengthMismatch.
VerificationReport verify_tame_action(const AutoChain& chain, const std::vector<CxVector>& points,
                                      const std::vector<CxVector>& images,
                                      const ToleranceConfig& cfg);

/// max || inverse(chain)(chain(z)) - z ||_inf over the points.
double round_trip_residual(const AutoChain& chain, const std::vector<CxVector>& points);

}  // namespace tameforge
