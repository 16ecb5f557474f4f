#include "tameforge/flows.hpp"

#include <array>
#include <string>

#include "tameforge/error.hpp"

namespace tameforge {

namespace {

constexpr std::array<std::pair<Generator, std::string_view>, 12> kNames{{
    {Generator::V, "V"},
    {Generator::W, "W"},
    {Generator::H, "H"},
    {Generator::A, "A"},
    {Generator::B, "B"},
    {Generator::C, "C"},
    {Generator::ProductX, "ProductX"},
    {Generator::ProductY, "ProductY"},
    {Generator::GizPhi, "GizPhi"},
    {Generator::GizPsi, "GizPsi"},
    {Generator::KR_V, "KR_V"},
    {Generator::KR_W, "KR_W"},
}};

// a, b, c, d in extended precision; conjugations cancel terms of size |t|^2 |m|
using LComplex = std::complex<long double>;
using Mat2 = std::array<LComplex, 4>;

Mat2 mul(const Mat2& x, const Mat2& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

CxVector to_vec(const Mat2& m) {
  CxVector v(4);
  for (int i = 0; i < 4; ++i) v[i] = Complex(static_cast<double>(m[i].real()), static_cast<double>(m[i].imag()));
  return v;
}

const KRVariety& require_variety(const FlowParams& params) {
  if (!params.variety) throw Error(ErrorKind::InvalidArgument, "KR flow without a variety");
  return *params.variety;
}

CxVector kr_flow_impl(const KRVariety& var, int target, Complex t, const CxVector& p) {
  if (target > var.n) throw Error(ErrorKind::InvalidArgument, "KR_W needs n >= 1");
  const Complex x = p[0];
  std::vector<Complex> z(p.data() + 2, p.data() + p.size());
  const Complex moved = z[static_cast<std::size_t>(target)] + x * x * t;
  // y absorbs (a(z') - a(z) + x (b(z') - b(z))) / x^2, written as t times a
  // divided difference so the x -> 0 limit needs no special case
  const Complex dy =
      t * (var.a.divided_difference(z, target, moved) + x * var.b.divided_difference(z, target, moved));
  CxVector out = p;
  out[1] = p[1] + dy;
  out[2 + target] = moved;
  return out;
}

}  // namespace

std::string_view to_string(Generator g) noexcept {
  for (const auto& [gen, name] : kNames) {
    if (gen == g) return name;
  }
  return "?";
}

std::optional<Generator> generator_from_string(std::string_view name) noexcept {
  for (const auto& [gen, n] : kNames) {
    if (n == name) return gen;
  }
  return std::nullopt;
}

bool is_sl2_generator(Generator g) noexcept {
  switch (g) {
    case Generator::V:
    case Generator::W:
    case Generator::H:
    case Generator::A:
    case Generator::B:
    case Generator::C:
      return true;
    default:
      return false;
  }
}

KRVariety KRVariety::kr_cubic() {
  KRVariety v;
  v.n = 1;
  v.a = MultiPoly(2, {Monomial{-1.0, {2, 0}}, Monomial{-1.0, {0, 3}}});
  v.b = MultiPoly::constant(2, -1.0);
  return v;
}

int generator_dim(Generator g, const FlowParams& params) {
  if (is_sl2_generator(g)) return 4;
  switch (g) {
    case Generator::KR_V:
    case Generator::KR_W:
      return require_variety(params).point_dim();
    default:
      return 2;
  }
}

CxVector flow_point(Generator g, Complex t, const CxVector& p, const FlowParams& params) {
  if (p.size() != generator_dim(g, params)) {
    throw Error(ErrorKind::DimensionMismatch, std::string("flow ") + std::string(to_string(g)));
  }
  Mat2 m{};
  if (is_sl2_generator(g)) m = {LComplex(p[0]), LComplex(p[1]), LComplex(p[2]), LComplex(p[3])};
  const LComplex T(t);
  switch (g) {
    case Generator::V:
      return to_vec(mul(mul(Mat2{1.0L, T, 0.0L, 1.0L}, m), Mat2{1.0L, -T, 0.0L, 1.0L}));
    case Generator::W:
      return to_vec(mul(mul(Mat2{1.0L, 0.0L, T, 1.0L}, m), Mat2{1.0L, 0.0L, -T, 1.0L}));
    case Generator::H: {
      const LComplex e2 = std::exp(2.0L * T);
      return to_vec(Mat2{m[0], m[1] / e2, m[2] * e2, m[3]});
    }
    case Generator::A:
      return to_vec(mul(Mat2{1.0L, T, 0.0L, 1.0L}, m));
    case Generator::B:
      return to_vec(mul(Mat2{1.0L, 0.0L, T, 1.0L}, m));
    case Generator::C:
      return to_vec(mul(m, Mat2{1.0L, T, 0.0L, 1.0L}));
    case Generator::ProductX: {
      CxVector out = p;
      out[0] += t;
      return out;
    }
    case Generator::ProductY: {
      CxVector out = p;
      out[1] *= std::exp(t);
      return out;
    }
    case Generator::GizPhi: {
      CxVector out = p;
      out[0] += ipow(p[1], params.m) * t;
      return out;
    }
    case Generator::GizPsi: {
      CxVector out = p;
      out[1] *= std::exp(ipow(p[0], params.m) * t);
      return out;
    }
    case Generator::KR_V:
      return kr_flow_impl(require_variety(params), 0, t, p);
    case Generator::KR_W:
      return kr_flow_impl(require_variety(params), 1, t, p);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown generator");
}

Eigen::Matrix4cd sl2_field_matrix(Generator g) {
  Eigen::Matrix4cd L = Eigen::Matrix4cd::Zero();
  // rows: (a', b', c', d'); columns: (a, b, c, d)
  switch (g) {
    case Generator::V:
      L(0, 2) = 1.0;
      L(1, 3) = 1.0;
      L(1, 0) = -1.0;
      L(3, 2) = -1.0;
      break;
    case Generator::W:
      L(0, 1) = -1.0;
      L(2, 0) = 1.0;
      L(2, 3) = -1.0;
      L(3, 1) = 1.0;
      break;
    case Generator::H:
      L(1, 1) = -2.0;
      L(2, 2) = 2.0;
      break;
    case Generator::A:
      L(0, 2) = 1.0;
      L(1, 3) = 1.0;
      break;
    case Generator::B:
      L(2, 0) = 1.0;
      L(3, 1) = 1.0;
      break;
    case Generator::C:
      L(1, 0) = 1.0;
      L(3, 2) = 1.0;
      break;
    default:
      throw Error(ErrorKind::InvalidArgument, "not an SL2 generator");
  }
  return L;
}

CxVector field_value(Generator g, const CxVector& p, const FlowParams& params) {
  if (is_sl2_generator(g)) return sl2_field_matrix(g) * p;
  CxVector out = CxVector::Zero(p.size());
  switch (g) {
    case Generator::ProductX:
      out[0] = 1.0;
      break;
    case Generator::ProductY:
      out[1] = p[1];
      break;
    case Generator::GizPhi:
      out[0] = ipow(p[1], params.m);
      break;
    case Generator::GizPsi:
      out[1] = ipow(p[0], params.m) * p[1];
      break;
    case Generator::KR_V:
    case Generator::KR_W: {
      const auto& var = require_variety(params);
      const int target = g == Generator::KR_V ? 0 : 1;
      const Complex x = p[0];
      std::vector<Complex> z(p.data() + 2, p.data() + p.size());
      out[1] = var.a.partial(target).eval(z) + x * var.b.partial(target).eval(z);
      out[2 + target] = x * x;
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace tameforge
