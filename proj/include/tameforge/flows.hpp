#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include "tameforge/numerics.hpp"
#include "tameforge/polynomial.hpp"

namespace tameforge {

/// Complete vector fields whose flows appear as chain primitives.
///
/// SL2 fields act on (a, b, c, d) in C^4:
///   V = c d/da + (d - a) d/db - c d/dd      conjugation by [[1,t],[0,1]]
///   W = -b d/da + (a - d) d/dc + b d/dd     conjugation by [[1,0],[t,1]]
///   H = -2b d/db + 2c d/dc                  conjugation by diag(e^-t, e^t)
///   A = c d/da + d d/db                     left multiplication by [[1,t],[0,1]]
///   B = a d/dc + b d/dd                     left multiplication by [[1,0],[t,1]]
///   C = a d/db + c d/dd                     right multiplication by [[1,t],[0,1]]
/// Product fields act on (x, y) in C x C*: ProductX = d/dx, ProductY = y d/dy.
/// Gizatullin-chart fields act on (z, w): GizPhi = w^m d/dz, GizPsi = z^m w d/dw.
/// KR_V / KR_W act on (x, y, z_0..z_n) of x^2 y = a(z) + x b(z), moving z_0 / z_1.
enum class Generator { V, W, H, A, B, C, ProductX, ProductY, GizPhi, GizPsi, KR_V, KR_W };

std::string_view to_string(Generator g) noexcept;
std::optional<Generator> generator_from_string(std::string_view name) noexcept;
bool is_sl2_generator(Generator g) noexcept;

/// X_{a,b} = { x^2 y = a(z) + x b(z) } in C^{n+3}; points are (x, y, z_0..z_n).
struct KRVariety {
  int n = 1;
  MultiPoly a;
  MultiPoly b;

  /// x^2 y + x + z^2 + w^3 = 0, i.e. a = -(z^2 + w^3), b = -1.
  static KRVariety kr_cubic();

  int point_dim() const { return n + 3; }
};

struct FlowParams {
  int m = 0;
  std::shared_ptr<const KRVariety> variety;
};

int generator_dim(Generator g, const FlowParams& params);

/// Time-t flow of the generator. Closed forms only; no integration.
CxVector flow_point(Generator g, Complex t, const CxVector& p, const FlowParams& params);

/// Value of the vector field itself at p.
CxVector field_value(Generator g, const CxVector& p, const FlowParams& params);

/// The SL2 fields are linear: field(p) = L p for a constant 4x4 matrix L.
Eigen::Matrix4cd sl2_field_matrix(Generator g);

}  // namespace tameforge
