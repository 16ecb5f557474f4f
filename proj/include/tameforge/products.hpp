#pragma once

#include <vector>

#include "tameforge/autochain.hpp"
#include "tameforge/symplectic.hpp"

namespace tameforge {

/// (z, w) in C x C*, |w| > 1e-12.
struct CStarPoint {
  Complex z, w;

  /// Throws InvalidArgument when |w| <= 1e-12.
  static CStarPoint make(Complex z, Complex w);
  CxVector to_vector() const;
};

inline constexpr int kMaxProductK = 12;
inline constexpr double kMaxExponent = 30.0;

/// F_3 o F_2 o F_1 on C x C*: (x, e^x y), (x + f(y), y) with f(e^n) = l(n) - n,
/// (x, e^{g(x)} y) with g(l(n)) = -n. Maps (n, 1) to (l(n), 1).
/// Throws InjectivityViolation, NodeCollision, OverflowGuard (K > 12).
Construction product_chain(const std::vector<int>& ell);

/// F_3 o F_2 o F_1 on the chart C_z x C*_w with GizPhi = w^m d/dz and
/// GizPsi = z^m w d/dw: F_1 = psi^z, F_2 = phi^{g(w)},
/// g(exp(n^{m+1})) = exp(-m n^{m+1}) (l(n) - n), F_3 = psi^{h(z)},
/// h(l(n)) = -n^{m+1} / l(n)^m. Maps (n, 1) to (l(n), 1).
/// Throws OverflowGuard when n^{m+1} > 30.
Construction gizatullin_chain(int m, const std::vector<int>& ell);

/// |x^2 y - a(z) - x b(z)| at p = (x, y, z_0..z_n).
double kr_residual(const CxVector& p, const KRVariety& var);

/// Time-t flow of x^2 d/dz_0 (V) or x^2 d/dz_1 (W) on X_{a,b}; y absorbs the
/// change through an exact polynomial divided difference, so x = 0 needs no
/// special case. Throws OffVariety when kr_residual(p) > 1e-8.
CxVector kr_flow(Generator field, Complex t, const CxVector& p, const KRVariety& var);

/// Random point of the Koras-Russell cubic with |x| drawn log-uniformly from
/// [x_min, x_max]: y, w drawn in the radius disc and z solving the equation.
CxVector kr_cubic_point(Sampler& s, double x_min, double x_max, double radius = 1.0);

/// Point of X_{a,b} with |x| log-uniform in [x_min, x_max] (x_min > 0), z in
/// the radius polydisc and y = (a(z) + x b(z)) / x^2.
CxVector kr_point_solve_y(Sampler& s, const KRVariety& var, double x_min, double x_max,
                          double radius = 1.0);

/// Checks "equation" (residual of V and W flows, tol 1e-7), "commutation"
/// (|V_a W_b p - W_b V_a p|, tol 1e-7) and "group_law" (|V_u V_t p - V_{t+u} p|,
/// tol 1e-8) at the given on-variety points with seeded times |t| <= 1.
VerificationReport kr_battery(const KRVariety& var, const std::vector<CxVector>& points,
                              std::uint64_t seed);

}  // namespace tameforge
