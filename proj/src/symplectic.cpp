#include "tameforge/symplectic.hpp"

#include <algorithm>
#include <cmath>

#include "tameforge/error.hpp"
#include "tameforge/euclid.hpp"

namespace tameforge {

namespace {

constexpr double kLatticeGap = 1e-9;

Complex bilinear(const CxVector& a, const CxVector& b) { return (a.transpose() * b)(0, 0); }

void check_gap(const std::vector<Complex>& xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (std::abs(xs[i] - xs[j]) <= kLatticeGap) {
        throw Error(ErrorKind::NodeCollision, std::string(what) + " values " + std::to_string(i) + " and " +
                                                  std::to_string(j) + " coincide");
      }
    }
  }
}

// Appends a shear and advances the tracked images.
void push(Construction& c, std::vector<CxVector>& cur, ShearPrimitive s) {
  for (auto& z : cur) z = s.apply(z);
  c.chain.push(std::move(s));
}

// Forstneric shear along v whose increments take coordinate `coord` of
// the current images to `want`; the function is fitted at the actual
// argument values. Colliding arguments throw StageCollisionError.
void solve_stage(Construction& c, std::vector<CxVector>& cur, const CxVector& v, int n, int coord,
                 const std::vector<Complex>& want) {
  const CxVector lambda = symplectic_j(n) * v;
  std::vector<Complex> args, inc;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    args.push_back(bilinear(lambda, cur[i]));
    inc.push_back((want[i] - cur[i][coord]) / v[coord]);
  }
  Interpolant f = [&] {
    try {
      return Interpolant::fit(args, inc);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NodeCollision) throw StageCollisionError(static_cast<int>(c.chain.size()) + 1, e.what());
      throw;
    }
  }();
  push(c, cur, make_forstneric_shear(v, std::move(f), n));
}

bool certified_volume(const Primitive& p) {
  if (std::holds_alternative<ShearPrimitive>(p)) return true;  // lambda . v = 0
  if (const auto* f = std::get_if<FlowPrimitive>(&p)) {
    switch (f->generator()) {
      case Generator::ProductX:
      case Generator::GizPhi:
        return f->constant_time();
      default:
        return false;
    }
  }
  return false;
}

}  // namespace

PairLattice PairLattice::cantor(int K, double alpha) {
  std::vector<Complex> values;
  for (int n = 1; n <= K; ++n) {
    for (int m = 1; m <= K; ++m) values.push_back((n + m - 1) * (n + m - 2) / 2.0 + m);
  }
  return with_values(K, std::move(values), alpha);
}

PairLattice PairLattice::with_values(int K, std::vector<Complex> values, double alpha) {
  if (K < 1) throw Error(ErrorKind::InvalidArgument, "K must be >= 1");
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error(ErrorKind::InvalidArgument, "alpha must be positive");
  if (values.size() != static_cast<std::size_t>(K * K)) {
    throw Error(ErrorKind::LengthMismatch, "lattice needs K^2 values");
  }
  check_gap(values, "lattice");
  PairLattice p;
  p.K_ = K;
  p.alpha_ = alpha;
  p.x_ = std::move(values);
  return p;
}

Construction axis_relabel(const std::vector<Complex>& alpha, const std::vector<Complex>& beta, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (alpha.size() != beta.size()) throw Error(ErrorKind::LengthMismatch, "alpha and beta differ in length");
  const int dim = 2 * n;
  Construction c{AutoChain(dim), {}, {}};
  for (std::size_t j = 0; j < alpha.size(); ++j) {
    c.points.push_back(alpha[j] * unit_vector(dim, 0));
    c.images.push_back(beta[j] * unit_vector(dim, 0));
  }
  std::vector<CxVector> cur = c.points;
  const CxVector e1 = unit_vector(dim, 0), en1 = unit_vector(dim, n);
  // z_{n+1} += z_1
  push(c, cur, make_forstneric_shear(en1, AffineFn::identity(), n));
  // z_1 += f(z_{n+1}); the shear reads -z_{n+1}, so nodes are -alpha_j
  solve_stage(c, cur, e1, n, 0, beta);
  // z_{n+1} += g(z_1) with g(beta_j) = -alpha_j
  solve_stage(c, cur, en1, n, n, std::vector<Complex>(alpha.size(), 0.0));
  return c;
}

Construction fiber_lift_chain(const std::vector<Complex>& b, const std::vector<CxVector>& targets, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (b.size() != targets.size()) throw Error(ErrorKind::LengthMismatch, "b and targets differ in length");
  const int dim = 2 * n;
  Construction c{AutoChain(dim), {}, targets};
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (targets[i].size() != dim) throw Error(ErrorKind::DimensionMismatch, "target has wrong dimension");
    if (std::abs(targets[i][0] - b[i]) > 1e-12) {
      throw Error(ErrorKind::FirstCoordinateMismatch, "target " + std::to_string(i) + " leaves the fiber");
    }
    c.points.push_back(b[i] * unit_vector(dim, 0));
  }
  std::vector<CxVector> cur = c.points;
  auto want = [&](int coord) {
    std::vector<Complex> w;
    for (const auto& t : targets) w.push_back(t[coord]);
    return w;
  };
  const CxVector en1 = unit_vector(dim, n);
  for (int j = 1; j < n; ++j) solve_stage(c, cur, unit_vector(dim, j) + en1, n, j, want(j));
  for (int j = 1; j < n; ++j) solve_stage(c, cur, unit_vector(dim, n + j) + en1, n, n + j, want(n + j));
  solve_stage(c, cur, en1, n, n, want(n));
  return c;
}

Construction flatten_pairs_c4(const PairLattice& lattice, FlattenMode mode) {
  const int K = lattice.K();
  const double a = lattice.alpha();
  Construction c{AutoChain(4), {}, {}};
  std::vector<Complex> s_vals, x_vals;
  for (int n = 1; n <= K; ++n) {
    for (int m = 1; m <= K; ++m) {
      c.points.push_back((CxVector(4) << double(n), double(m), 0.0, 0.0).finished());
      c.images.push_back((CxVector(4) << lattice.x(n, m), 0.0, 0.0, 0.0).finished());
      s_vals.push_back(lattice.s(n, m));
      x_vals.push_back(lattice.x(n, m));
    }
  }
  check_gap(s_vals, "n + alpha m");
  std::vector<CxVector> cur = c.points;
  const CxVector e1 = unit_vector(4, 0), e2 = unit_vector(4, 1);
  const CxVector v34 = (CxVector(4) << 0.0, 0.0, 1.0, a).finished();

  if (mode == FlattenMode::Paper) {
    const CxVector v24 = (CxVector(4) << 0.0, 1.0, 0.0, a).finished();
    const CxVector l13 = (CxVector(4) << 1.0, 0.0, a, 0.0).finished();
    const CxVector l12 = (CxVector(4) << 1.0, a, 0.0, 0.0).finished();
    std::vector<Complex> ax, neg_x, g_vals, h_vals;
    for (int n = 1; n <= K; ++n) {
      for (int m = 1; m <= K; ++m) {
        const Complex x = lattice.x(n, m);
        ax.push_back(a * x);
        neg_x.push_back(-x);
        g_vals.push_back(x - double(n));
        h_vals.push_back(double(-m));
      }
    }
    // sigma_1 = z + f(z_1 + a z_3)(e_2 + a e_4), f(n + a m) = x_{n,m}
    push(c, cur, ShearPrimitive(v24, l13, Interpolant::fit(s_vals, x_vals)));
    // sigma_2 = z + g(z_3) e_1 + h(z_4) e_2
    push(c, cur, ShearPrimitive(e1, unit_vector(4, 2), Interpolant::fit(x_vals, g_vals)));
    push(c, cur, ShearPrimitive(e2, unit_vector(4, 3), Interpolant::fit(ax, h_vals)));
    // sigma_3 = z + b(z_1 + a z_2)(e_3 + a e_4), b(x) = -x
    push(c, cur, ShearPrimitive(v34, l12, Interpolant::fit(x_vals, neg_x)));
    return c;
  }

  const std::vector<Complex> zeros(c.points.size(), 0.0);
  // (z_3, z_4) += (z_1 + a z_2)(1, a)
  push(c, cur, make_forstneric_shear(v34, AffineFn::identity(), 2));
  solve_stage(c, cur, e1, 2, 0, x_vals);  // z_1 += g(-z_3)
  solve_stage(c, cur, e2, 2, 1, zeros);   // z_2 += h(-z_4)
  solve_stage(c, cur, v34, 2, 2, zeros);  // (z_3, z_4) += f_4(z_1 + a z_2)(1, a)
  return c;
}

AutoChain symplectic_lift(const AutoChain& F, int first, const ToleranceConfig& cfg) {
  if (F.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "lift needs a chain on C^2");
  if (first != 0 && first != 1) throw Error(ErrorKind::InvalidArgument, "pair must be (1,3) or (2,4)");
  const bool certified = std::all_of(F.primitives().begin(), F.primitives().end(), certified_volume);
  if (!certified && !check_volume(F, cfg).ok()) {
    throw Error(ErrorKind::NotVolumePreserving, "chain does not preserve volume");
  }
  AutoChain out(4);
  out.push(LiftPrimitive(4, {first, first + 2}, F));
  return out;
}

Construction tame_c4_projection(const std::vector<CxVector>& A, std::uint64_t seed) {
  if (A.empty()) throw Error(ErrorKind::InvalidArgument, "empty set");
  Construction c{AutoChain(4), A, {}};
  std::vector<CxVector> cur = A;
  for (int first : {0, 1}) {
    std::vector<CxVector> proj;
    for (const auto& z : cur) {
      const CxVector p = (CxVector(2) << z[first], z[first + 2]).finished();
      const bool seen = std::any_of(proj.begin(), proj.end(), [&](const CxVector& q) { return q == p; });
      if (!seen) proj.push_back(p);
    }
    const Normalization norm = very_tame_normalize(proj, seed);
    const AutoChain lift = symplectic_lift(norm.chain, first);
    for (auto& z : cur) z = lift.apply(z);
    c.chain.then(lift);
  }
  c.images = cur;
  return c;
}

}  // namespace tameforge
