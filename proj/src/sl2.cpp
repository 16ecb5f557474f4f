#include "tameforge/sl2.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <Eigen/SVD>

#include "tameforge/error.hpp"

namespace tameforge {

namespace {

constexpr double kChartFloor = 1e-6;
constexpr int kChartRetries = 100;
constexpr double kOkaVanishing = 1e-8;
constexpr double kRankThreshold = 1e-8;

CxVector vec4(Complex a, Complex b, Complex c, Complex d) {
  CxVector v(4);
  v << a, b, c, d;
  return v;
}

Interpolant fit(const std::vector<Complex>& nodes, const std::vector<Complex>& values) {
  return Interpolant::fit(nodes, values);
}

std::vector<CxVector> apply_all(const Primitive& p, const std::vector<CxVector>& pts) {
  std::vector<CxVector> out;
  out.reserve(pts.size());
  for (const auto& z : pts) {
    CxVector w = apply_primitive(p, z);
    require_finite(w, "SL2 stage image");
    out.push_back(std::move(w));
  }
  return out;
}

CxVector kernel(int index, Complex scale) {
  CxVector l = CxVector::Zero(4);
  l[index] = scale;
  return l;
}

}  // namespace

SL2Elem SL2Elem::make(Complex a, Complex b, Complex c, Complex d) {
  SL2Elem m{a, b, c, d};
  if (!(m.det_residual() < 1e-9)) throw Error(ErrorKind::InvalidArgument, "ad - bc != 1");
  return m;
}

SL2Elem SL2Elem::from_vector(const CxVector& v) {
  if (v.size() != 4) throw Error(ErrorKind::DimensionMismatch, "SL2 point needs 4 coordinates");
  return {v[0], v[1], v[2], v[3]};
}

CxVector SL2Elem::to_vector() const { return vec4(a, b, c, d); }

double SL2Elem::det_residual() const { return std::abs(a * d - b * c - 1.0); }

SL2Elem unipotent(Complex k) { return {1.0, k, 0.0, 1.0}; }
SL2Elem diagonal(Complex k) { return {k, 0.0, 0.0, 1.0 / k}; }

SL2Elem flow(Generator gen, Complex t, const SL2Elem& m) {
  if (!is_sl2_generator(gen)) throw Error(ErrorKind::InvalidArgument, "not an SL2 generator");
  return SL2Elem::from_vector(flow_point(gen, t, m.to_vector(), {}));
}

CxVector bracket(Generator x, Generator y, const SL2Elem& m) {
  const Eigen::Matrix4cd lx = sl2_field_matrix(x);
  const Eigen::Matrix4cd ly = sl2_field_matrix(y);
  return (ly * lx - lx * ly) * m.to_vector();
}

double bracket_residual(Generator x, Generator y, Complex coefficient, Generator target,
                        const SL2Elem& m) {
  const CxVector diff = bracket(x, y, m) - coefficient * (sl2_field_matrix(target) * m.to_vector());
  return sup_norm(diff);
}

double bracket_check(Generator x, Generator y, const SL2Elem& m) {
  struct Relation {
    Generator x, y;
    double coefficient;
    Generator target;
  };
  static constexpr Relation kTable[] = {
      {Generator::V, Generator::W, 1.0, Generator::H},
      {Generator::H, Generator::V, 2.0, Generator::V},
      {Generator::H, Generator::W, -2.0, Generator::W},
  };
  for (const auto& r : kTable) {
    if (r.x == x && r.y == y) return bracket_residual(x, y, r.coefficient, r.target, m);
    if (r.x == y && r.y == x) return bracket_residual(x, y, -r.coefficient, r.target, m);
  }
  throw Error(ErrorKind::InvalidArgument, "no bracket relation for this pair");
}

void require_injection(const std::vector<int>& ell) {
  if (ell.empty()) throw Error(ErrorKind::InvalidArgument, "empty injection");
  std::set<int> seen;
  for (int v : ell) {
    if (v < 1) throw Error(ErrorKind::InjectivityViolation, "injection values must be >= 1");
    if (!seen.insert(v).second)
      throw Error(ErrorKind::InjectivityViolation, "value " + std::to_string(v) + " repeated");
  }
}

SL2Construction seq1_chain(const std::vector<int>& ell) {
  require_injection(ell);
  const std::size_t K = ell.size();
  SL2Construction out;
  for (std::size_t i = 0; i < K; ++i) {
    out.points.push_back(unipotent(static_cast<double>(i + 1)).to_vector());
  }

  Primitive s0 = FlowPrimitive(Generator::W, 1.0);
  std::vector<CxVector> cur = apply_all(s0, out.points);
  out.chain.push(s0);

  // c is V-invariant, so f(-c) is a valid V time
  std::vector<Complex> nodes, fvals;
  for (std::size_t i = 0; i < K; ++i) {
    const double k = static_cast<double>(i + 1);
    nodes.push_back(-cur[i][2]);
    fvals.push_back(std::sqrt(static_cast<double>(ell[i]) / k) - 1.0);
  }
  Primitive s1 = FlowPrimitive(Generator::V, fit(nodes, fvals), kernel(2, -1.0));
  cur = apply_all(s1, cur);
  out.chain.push(s1);

  // G = g(b): after phi_W^s, a' = a - s b, so a' = 1 needs s = (a - 1)/b
  std::vector<Complex> gnodes, gvals;
  for (std::size_t i = 0; i < K; ++i) {
    gnodes.push_back(cur[i][1]);
    gvals.push_back((cur[i][0] - 1.0) / cur[i][1]);
  }
  Primitive s2 = FlowPrimitive(Generator::W, fit(gnodes, gvals), kernel(1, 1.0));
  out.chain.push(s2);

  for (std::size_t i = 0; i < K; ++i) {
    out.images.push_back(unipotent(static_cast<double>(ell[i])).to_vector());
  }
  out.stage_values = {fvals, gvals};
  return out;
}

SL2Construction seq2_chain(const std::vector<int>& ell) {
  require_injection(ell);
  const std::size_t K = ell.size();
  SL2Construction out;
  for (std::size_t i = 0; i < K; ++i) {
    out.points.push_back(diagonal(static_cast<double>(i + 1)).to_vector());
  }

  Primitive s0 = FlowPrimitive(Generator::B, 1.0);
  std::vector<CxVector> cur = apply_all(s0, out.points);
  out.chain.push(s0);

  // A-flow adds t c to a: a' = l(k) needs t = (l - a)/c, time f(c)
  std::vector<Complex> fn, fv;
  for (std::size_t i = 0; i < K; ++i) {
    fn.push_back(cur[i][2]);
    fv.push_back((static_cast<double>(ell[i]) - cur[i][0]) / cur[i][2]);
  }
  Primitive s1 = FlowPrimitive(Generator::A, fit(fn, fv), kernel(2, 1.0));
  cur = apply_all(s1, cur);
  out.chain.push(s1);

  // B-flow adds s a to c: c' = 0 needs s = -c/a, time g(a)
  std::vector<Complex> gn, gv;
  for (std::size_t i = 0; i < K; ++i) {
    gn.push_back(cur[i][0]);
    gv.push_back(-cur[i][2] / cur[i][0]);
  }
  Primitive s2 = FlowPrimitive(Generator::B, fit(gn, gv), kernel(0, 1.0));
  cur = apply_all(s2, cur);
  out.chain.push(s2);

  // C-flow adds u a to b: b' = 0 needs u = -b/a, time h(a)
  std::vector<Complex> hn, hv;
  for (std::size_t i = 0; i < K; ++i) {
    hn.push_back(cur[i][0]);
    hv.push_back(-cur[i][1] / cur[i][0]);
  }
  Primitive s3 = FlowPrimitive(Generator::C, fit(hn, hv), kernel(0, 1.0));
  out.chain.push(s3);

  for (std::size_t i = 0; i < K; ++i) {
    out.images.push_back(diagonal(static_cast<double>(ell[i])).to_vector());
  }
  out.stage_values = {fv, gv, hv};
  return out;
}

std::vector<SL2Elem> sample_sl2(int count, double radius, std::uint64_t seed) {
  Sampler s(seed);
  std::vector<SL2Elem> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    const Complex a = std::polar(s.uniform(0.5, radius), s.uniform(0.0, 2.0 * M_PI));
    const Complex b = s.in_disc(radius);
    const Complex c = s.in_disc(radius);
    out.push_back({a, b, c, (1.0 + b * c) / a});
  }
  return out;
}

namespace {

double haar_at(const AutoChain& chain, const ToleranceConfig& cfg, const SL2Elem& m) {
  const CxVector img = chain.apply(m.to_vector());
  if (std::abs(img[0]) < kChartFloor) throw Error(ErrorKind::ChartSingularity, "image has |a| < 1e-6");
  PointMap chart = [&chain](const CxVector& abc) {
    const CxVector full = vec4(abc[0], abc[1], abc[2], (1.0 + abc[1] * abc[2]) / abc[0]);
    return CxVector(chain.apply(full).head(3));
  };
  const CxVector abc = m.to_vector().head(3);
  const Complex det = jacobian(chart, abc, cfg).determinant();
  return std::abs(det * m.a / img[0] - 1.0);
}

}  // namespace

double haar_residual(const AutoChain& chain, const ToleranceConfig& cfg,
                     const std::vector<SL2Elem>& samples) {
  if (chain.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "Haar check needs an SL2 chain");
  double worst = 0.0;
  for (const auto& m : samples) {
    if (std::abs(m.a) < kChartFloor) throw Error(ErrorKind::ChartSingularity, "sample has |a| < 1e-6");
    worst = std::max(worst, haar_at(chain, cfg, m));
  }
  return worst;
}

double haar_residual(const AutoChain& chain, const ToleranceConfig& cfg, const SampleSpec& spec) {
  if (chain.dim() != 4) throw Error(ErrorKind::DimensionMismatch, "Haar check needs an SL2 chain");
  Sampler s(spec.seed);
  double worst = 0.0;
  for (int i = 0; i < spec.count; ++i) {
    bool done = false;
    for (int attempt = 0; attempt < kChartRetries && !done; ++attempt) {
      const Complex a = s.in_disc(spec.radius);
      const Complex b = s.in_disc(spec.radius);
      const Complex c = s.in_disc(spec.radius);
      if (std::abs(a) < kChartFloor) continue;
      const SL2Elem m{a, b, c, (1.0 + b * c) / a};
      try {
        worst = std::max(worst, haar_at(chain, cfg, m));
        done = true;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ChartSingularity) throw;
      }
    }
    if (!done) throw Error(ErrorKind::ChartSingularity, "no chart sample after 100 retries");
  }
  return worst;
}

PrimeMask PrimeMask::up_to(int cutoff) {
  if (cutoff < 2) throw Error(ErrorKind::InvalidArgument, "prime cutoff must be >= 2");
  PrimeMask m;
  m.cutoff = cutoff;
  std::vector<bool> composite(static_cast<std::size_t>(cutoff) + 1, false);
  for (int p = 2; p <= cutoff; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    m.primes.push_back(p);
    for (int q = p * p; q <= cutoff; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return m;
}

OkaFields OkaFields::build(const PrimeMask& mask) {
  // normalised to 1 at a point off every zero set
  const std::vector<Complex> norm_node{Complex(0.5, 0.5)};
  const std::vector<Complex> norm_value{1.0};
  auto vanish = [&](auto node_of) {
    std::vector<Complex> zeros;
    for (int k : mask.primes) zeros.push_back(node_of(static_cast<double>(k)));
    return Interpolant::fit_damped(norm_node, norm_value, zeros);
  };
  return OkaFields{
      vanish([](double k) { return Complex(1.0 - k); }),
      vanish([](double k) { return Complex(k); }),
      vanish([](double k) { return Complex(-k); }),
      vanish([](double k) { return Complex(1.0 + k); }),
      vanish([](double k) { return Complex(k * k); }),
      vanish([](double k) { return Complex(k * (1.0 + k)); }),
  };
}

CxMatrix OkaFields::values(const SL2Elem& m) const {
  auto coeff = [](const Interpolant& f, Complex s) {
    const BoundedValue v = f.eval_bounded(s);
    return std::abs(v.value) <= kOkaVanishing * v.magnitude ? Complex(0.0) : v.value;
  };
  const CxVector p = m.to_vector();
  const CxVector fa = sl2_field_matrix(Generator::A) * p;
  const CxVector fb = sl2_field_matrix(Generator::B) * p;
  const CxVector fab = bracket(Generator::A, Generator::B, m);
  CxMatrix out(4, 6);
  out.col(0) = coeff(gamma, m.c) * fa;
  out.col(1) = coeff(delta, m.d) * fa;
  out.col(2) = coeff(alpha, m.a) * fb;
  out.col(3) = coeff(beta, m.b) * fb;
  out.col(4) = coeff(eps, -m.b * m.c) * fab;
  out.col(5) = coeff(zeta, m.b * m.d) * fab;
  return out;
}

int oka_rank(const SL2Elem& m, const OkaFields& fields) {
  const CxMatrix vals = fields.values(m);
  const Eigen::JacobiSVD<CxMatrix> svd(vals);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > kRankThreshold * sv[0]) ++rank;
  }
  return rank;
}

int oka_rank(const SL2Elem& m, const PrimeMask& mask) { return oka_rank(m, OkaFields::build(mask)); }

}  // namespace tameforge
