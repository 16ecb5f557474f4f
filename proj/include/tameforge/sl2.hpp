#pragma once

#include <array>
#include <vector>

#include "tameforge/autochain.hpp"
#include "tameforge/interp.hpp"
#include "tameforge/verify.hpp"

namespace tameforge {

/// [[a, b], [c, d]] with ad - bc = 1. Chains on SL2 act on (a, b, c, d) in C^4.
struct SL2Elem {
  Complex a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  /// Throws InvalidArgument when |ad - bc - 1| >= 1e-9.
  static SL2Elem make(Complex a, Complex b, Complex c, Complex d);
  static SL2Elem from_vector(const CxVector& v);
  static SL2Elem identity() { return {}; }

  CxVector to_vector() const;
  double det_residual() const;
};

/// [[1, k], [0, 1]]
SL2Elem unipotent(Complex k);
/// diag(k, 1/k)
SL2Elem diagonal(Complex k);

SL2Elem flow(Generator gen, Complex t, const SL2Elem& m);

/// Lie bracket [X, Y] at m, computed from the exact (linear) coefficient
/// formulas: [X, Y](p) = (L_Y L_X - L_X L_Y) p.
CxVector bracket(Generator x, Generator y, const SL2Elem& m);

/// || [x, y](m) - coefficient * target(m) ||_inf
double bracket_residual(Generator x, Generator y, Complex coefficient, Generator target,
                        const SL2Elem& m);

/// Residual of the bracket relation [x, y] = c * z listed for this pair:
/// [V, W] = H, [H, V] = 2V, [H, W] = -2W (and their antisymmetric partners).
/// Throws InvalidArgument for pairs without a listed relation.
double bracket_check(Generator x, Generator y, const SL2Elem& m);

/// Interpolating chain together with the data it was built from.
struct SL2Construction {
  AutoChain chain{4};
  std::vector<CxVector> points;
  std::vector<CxVector> images;
  /// Per-stage prescribed values, indexed like `points`.
  std::vector<std::vector<Complex>> stage_values;
};

/// Checks ell[k-1] = l(k) is an injection into the positive integers.
/// Throws InjectivityViolation.
void require_injection(const std::vector<int>& ell);

/// phi_W^G o phi_V^F o phi_W^1 mapping [[1,k],[0,1]] to [[1,l(k)],[0,1]] for
/// k = 1..K. F = f(-c) with f(k) = sqrt(l(k)/k) - 1; G = g(b) with values
/// solved at the actual b-coordinates. stage_values = {f values, g values}.
SL2Construction seq1_chain(const std::vector<int>& ell);

/// H o G o F o phi_B^1 mapping diag(k, 1/k) to diag(l(k), 1/l(k)); F, G, H are
/// time-1 flows of fA, gB, hC with f = f(c), g = g(a), h = h(a), each solved
/// at the actual kernel coordinates. stage_values = {f, g, h values}.
SL2Construction seq2_chain(const std::vector<int>& ell);

/// Random SL2 points with |a| in [0.5, radius] and b, c in the radius disc.
std::vector<SL2Elem> sample_sl2(int count, double radius, std::uint64_t seed);

/// max |det(chart Jacobian) * a / a' - 1| in the chart (a, b, c),
/// d = (1 + bc)/a, where the Haar form has density 1/a. Throws
/// ChartSingularity when a sample or its image has |a| < 1e-6.
double haar_residual(const AutoChain& chain, const ToleranceConfig& cfg,
                     const std::vector<SL2Elem>& samples);
/// Same on random samples; samples whose a or image a is below 1e-6 are
/// redrawn up to 100 times.
double haar_residual(const AutoChain& chain, const ToleranceConfig& cfg, const SampleSpec& spec = {});

/// Primes up to a cutoff, used as the tame set Z = {[[1-k, k], [-k, 1+k]]}.
struct PrimeMask {
  int cutoff = 30;
  std::vector<int> primes;

  static PrimeMask up_to(int cutoff);
};

/// The six complete fields gamma(c) A, delta(d) A, alpha(a) B, beta(b) B,
/// eps(-bc) [A,B], zeta(bd) [A,B] with polynomial coefficients vanishing
/// exactly on the mask nodes.
struct OkaFields {
  Interpolant alpha, beta, gamma, delta, eps, zeta;

  static OkaFields build(const PrimeMask& mask);
  /// 4 x 6 matrix of field values at m; a coefficient counts as zero when
  /// its value is below 1e-8 of its evaluation magnitude.
  CxMatrix values(const SL2Elem& m) const;
};

/// Rank of the span of the six fields at m, singular values thresholded at
/// 1e-8 relative to the largest.
int oka_rank(const SL2Elem& m, const PrimeMask& mask);
int oka_rank(const SL2Elem& m, const OkaFields& fields);

}  // namespace tameforge
