#include "tameforge/products.hpp"

#include <algorithm>
#include <cmath>

#include "tameforge/error.hpp"
#include "tameforge/sl2.hpp"

namespace tameforge {

namespace {

constexpr double kOnVariety = 1e-8;

CxVector pt(Complex a, Complex b) { return (CxVector(2) << a, b).finished(); }

std::vector<CxVector> apply_all(const Primitive& p, const std::vector<CxVector>& pts) {
  std::vector<CxVector> out;
  for (const auto& z : pts) out.push_back(apply_primitive(p, z));
  return out;
}

Interpolant fit(const std::vector<Complex>& nodes, const std::vector<Complex>& values) {
  return Interpolant::fit(nodes, values);
}

// The construction shared by both charts: psi has time z (first stage) and
// h(z) (last stage), phi has time g(w). Values are solved at the current
// images: phi moves z by w^m g, psi scales w by exp(z^m h).
Construction three_flows(Generator phi, Generator psi, FlowParams params, const std::vector<int>& ell) {
  const int m = params.m;
  Construction c{AutoChain(2), {}, {}};
  for (std::size_t i = 0; i < ell.size(); ++i) {
    c.points.push_back(pt(double(i + 1), 1.0));
    c.images.push_back(pt(double(ell[i]), 1.0));
  }
  const CxVector ez = unit_vector(2, 0), ew = unit_vector(2, 1);
  Primitive f1 = FlowPrimitive(psi, AffineFn::identity(), ez, params);
  std::vector<CxVector> cur = apply_all(f1, c.points);
  c.chain.push(f1);

  std::vector<Complex> gn, gv;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    gn.push_back(cur[i][1]);
    gv.push_back((double(ell[i]) - cur[i][0]) / ipow(cur[i][1], m));
  }
  Primitive f2 = FlowPrimitive(phi, fit(gn, gv), ew, params);
  cur = apply_all(f2, cur);
  c.chain.push(f2);

  std::vector<Complex> hn, hv;
  for (std::size_t i = 0; i < ell.size(); ++i) {
    hn.push_back(cur[i][0]);
    hv.push_back(-std::log(cur[i][1]) / ipow(cur[i][0], m));
  }
  c.chain.push(FlowPrimitive(psi, fit(hn, hv), ez, params));
  return c;
}

}  // namespace

CStarPoint CStarPoint::make(Complex z, Complex w) {
  if (!(std::abs(w) > 1e-12)) throw Error(ErrorKind::InvalidArgument, "w must be nonzero");
  return {z, w};
}

CxVector CStarPoint::to_vector() const { return pt(z, w); }

Construction product_chain(const std::vector<int>& ell) {
  require_injection(ell);
  if (ell.size() > static_cast<std::size_t>(kMaxProductK)) {
    throw Error(ErrorKind::OverflowGuard, "K is capped at 12 (nodes e^n)");
  }
  return three_flows(Generator::ProductX, Generator::ProductY, {}, ell);
}

Construction gizatullin_chain(int m, const std::vector<int>& ell) {
  if (m < 0) throw Error(ErrorKind::InvalidArgument, "m must be >= 0");
  require_injection(ell);
  // the stage-2 nodes are exp(n^{m+1}) for n = 1..K
  if (std::pow(double(ell.size()), m + 1) > kMaxExponent) {
    throw Error(ErrorKind::OverflowGuard, "n^(m+1) exceeds 30 for n = K");
  }
  return three_flows(Generator::GizPhi, Generator::GizPsi, {m, nullptr}, ell);
}

double kr_residual(const CxVector& p, const KRVariety& var) {
  if (p.size() != var.point_dim()) throw Error(ErrorKind::DimensionMismatch, "point does not match the variety");
  const std::span<const Complex> z(p.data() + 2, static_cast<std::size_t>(p.size() - 2));
  return std::abs(p[0] * p[0] * p[1] - var.a.eval(z) - p[0] * var.b.eval(z));
}

CxVector kr_flow(Generator field, Complex t, const CxVector& p, const KRVariety& var) {
  if (field != Generator::KR_V && field != Generator::KR_W) {
    throw Error(ErrorKind::InvalidArgument, "kr_flow takes KR_V or KR_W");
  }
  const double r = kr_residual(p, var);
  if (!(r <= kOnVariety)) throw Error(ErrorKind::OffVariety, "defining-equation residual " + std::to_string(r));
  FlowParams params{0, std::make_shared<const KRVariety>(var)};
  return flow_point(field, t, p, params);
}

CxVector kr_cubic_point(Sampler& s, double x_min, double x_max, double radius) {
  const double mag = std::exp(s.uniform(std::log(x_min), std::log(x_max)));
  const Complex x = std::polar(mag, s.uniform(0.0, 2.0 * M_PI));
  const Complex y = s.in_disc(radius);
  const Complex w = s.in_disc(radius);
  // x^2 y + x + z^2 + w^3 = 0
  const Complex z = std::sqrt(-(x * x * y + x + w * w * w));
  return (CxVector(4) << x, y, z, w).finished();
}

CxVector kr_point_solve_y(Sampler& s, const KRVariety& var, double x_min, double x_max,
                          double radius) {
  if (!(x_min > 0.0) || !(x_max >= x_min)) throw Error(ErrorKind::InvalidArgument, "need 0 < x_min <= x_max");
  const double mag = std::exp(s.uniform(std::log(x_min), std::log(x_max)));
  const Complex x = std::polar(mag, s.uniform(0.0, 2.0 * M_PI));
  std::vector<Complex> z(static_cast<std::size_t>(var.n + 1));
  for (Complex& zi : z) zi = s.in_disc(radius);
  CxVector p(var.point_dim());
  p[0] = x;
  p[1] = (var.a.eval(z) + x * var.b.eval(z)) / (x * x);
  for (int i = 0; i <= var.n; ++i) p[2 + i] = z[static_cast<std::size_t>(i)];
  return p;
}

VerificationReport kr_battery(const KRVariety& var, const std::vector<CxVector>& points,
                              std::uint64_t seed) {
  Sampler s(seed);
  const FlowParams params{0, std::make_shared<const KRVariety>(var)};
  double eq = 0.0, comm = 0.0, group = 0.0;
  for (const CxVector& p : points) {
    const Complex t = s.in_disc(1.0), u = s.in_disc(1.0);
    const CxVector vt = kr_flow(Generator::KR_V, t, p, var);
    eq = std::max({eq, kr_residual(vt, var), kr_residual(kr_flow(Generator::KR_W, t, p, var), var)});
    const Complex a = 0.5 * t, b = 0.5 * u;
    const CxVector vw = kr_flow(Generator::KR_V, a, kr_flow(Generator::KR_W, b, p, var), var);
    const CxVector wv = kr_flow(Generator::KR_W, b, kr_flow(Generator::KR_V, a, p, var), var);
    comm = std::max(comm, sup_norm(vw - wv));
    const CxVector two = flow_point(Generator::KR_V, u, vt, params);
    group = std::max(group, sup_norm(two - kr_flow(Generator::KR_V, t + u, p, var)));
  }
  VerificationReport rep;
  rep.construction_name = "kr-flow";
  rep.sample_seed = seed;
  rep.add("equation", eq, 1e-7);
  rep.add("commutation", comm, 1e-7);
  rep.add("group_law", group, 1e-8);
  return rep;
}

}  // namespace tameforge
