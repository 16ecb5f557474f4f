#include "tameforge/composer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "tameforge/error.hpp"

namespace tameforge {

namespace {

// interpolation nodes closer than this are treated as colliding
constexpr double kSeparation = 1e-6;
constexpr int kPhaseRetries = 8;

// One shear moving coordinate `moved` to `target`; the node is the other
// coordinate of the point at that moment.
struct Step {
  int moved;
  Complex target;
};

using Route = std::vector<Step>;

struct Built {
  AutoChain chain{2};
  int shears = 0;
};

bool near_any(Complex z, const std::vector<Complex>& zs, double tol) {
  return std::any_of(zs.begin(), zs.end(), [&](Complex w) { return std::abs(z - w) < tol; });
}

std::vector<Complex> dedupe(std::vector<Complex> zs) {
  std::vector<Complex> out;
  for (Complex z : zs) {
    if (!near_any(z, out, kNodeCollisionDistance)) out.push_back(z);
  }
  return out;
}

// zeros[axis] holds the deduplicated coordinate `axis` of the fixed points.
// Returns false when a non-trivial step would be evaluated inside the box or
// on a fixed coordinate.
bool route_valid(const Route& route, CxVector cur, const std::vector<Complex> (&zeros)[2],
                 double radius) {
  for (const Step& s : route) {
    const int node_axis = 1 - s.moved;
    if (s.target == cur[s.moved]) continue;
    const Complex node = cur[node_axis];
    if (std::abs(node) <= radius) return false;
    if (near_any(node, zeros[node_axis], kSeparation)) return false;
    cur[s.moved] = s.target;
  }
  return true;
}

// N zeros on the circle of radius radius / 2, rotated by a random phase and
// kept away from the fixed coordinates.
std::vector<Complex> damping_zeros(int N, double radius, const std::vector<Complex>& avoid,
                                   Sampler& rng) {
  std::vector<Complex> out;
  for (int attempt = 0; attempt < kPhaseRetries; ++attempt) {
    out.clear();
    const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    bool ok = true;
    for (int j = 0; j < N && ok; ++j) {
      const Complex z = std::polar(0.5 * radius, phase + 2.0 * std::numbers::pi * j / N);
      ok = !near_any(z, avoid, kSeparation);
      out.push_back(z);
    }
    if (ok) return out;
  }
  throw Error(ErrorKind::GenericityFailure, "damping zeros keep hitting fixed coordinates");
}

Built build(const Route& route, CxVector cur, const std::vector<Complex> (&zeros)[2], int N,
            double radius, Sampler& rng) {
  Built out;
  for (const Step& s : route) {
    const int node_axis = 1 - s.moved;
    const Complex delta = s.target - cur[s.moved];
    if (delta == Complex(0.0)) continue;
    std::vector<Complex> z = zeros[node_axis];
    const std::vector<Complex> damp = damping_zeros(N, radius, z, rng);
    z.insert(z.end(), damp.begin(), damp.end());
    const Complex node = cur[node_axis];
    const std::vector<Complex> nodes{node};
    const std::vector<Complex> values{delta};
    ShearPrimitive sh(unit_vector(2, s.moved), unit_vector(2, node_axis),
                      Interpolant::fit_damped(nodes, values, z));
    cur = sh.apply(cur);
    out.chain.push(std::move(sh));
    ++out.shears;
  }
  return out;
}

double sup_dist(const CxVector& a, const CxVector& b) { return sup_norm(a - b); }

void require_c2(const CxVector& z, const char* what) {
  if (z.size() != 2) throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must lie in C^2");
  require_finite(z, what);
}

}  // namespace

AutoChain move_point_fixing(const CxVector& a, const CxVector& b,
                            const std::vector<CxVector>& fixed, const CompactBox& box, double eps,
                            const ToleranceConfig& cfg, std::uint64_t seed, MoveStats* stats) {
  require_c2(a, "a");
  require_c2(b, "b");
  for (const CxVector& f : fixed) require_c2(f, "fixed point");
  if (!(box.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "box radius must be positive");
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "eps must be positive");
  if (stats) *stats = {};
  if (a == b) return AutoChain(2);
  const double r = box.radius;
  if (sup_norm(a) <= r || sup_norm(b) <= r) {
    throw Error(ErrorKind::InvalidArgument, "a and b must lie outside the box");
  }
  for (const CxVector& f : fixed) {
    if (sup_dist(f, a) < kSeparation || sup_dist(f, b) < kSeparation) {
      throw Error(ErrorKind::InvalidArgument, "a or b coincides with a fixed point");
    }
  }

  std::vector<Complex> zeros[2];
  for (int axis = 0; axis < 2; ++axis) {
    std::vector<Complex> zs;
    for (const CxVector& f : fixed) zs.push_back(f[axis]);
    zeros[axis] = dedupe(std::move(zs));
  }

  Sampler rng(seed);
  std::vector<Route> routes{
      {{1, b[1]}, {0, b[0]}},
      {{0, b[0]}, {1, b[1]}},
  };
  // Three-shear routes pass through a far intermediate value c.
  const double far = std::max({sup_norm(a), sup_norm(b), r}) + 1.0;
  for (int attempt = 0; attempt < kPhaseRetries; ++attempt) {
    const Complex c = std::polar(far, rng.uniform(0.0, 2.0 * std::numbers::pi));
    routes.push_back({{1, c}, {0, b[0]}, {1, b[1]}});
    routes.push_back({{0, c}, {1, b[1]}, {0, b[0]}});
  }

  const std::size_t used = 1 + std::max(zeros[0].size(), zeros[1].size());
  if (used >= kMaxInterpolationNodes) {
    throw Error(ErrorKind::TooManyNodes, "too many fixed points for one interpolant");
  }
  const int cap = static_cast<int>(kMaxInterpolationNodes - used);

  const PointMap id = [](const CxVector& z) { return z; };
  bool any_valid = false;
  double best = std::numeric_limits<double>::infinity();
  for (const Route& route : routes) {
    if (!route_valid(route, a, zeros, r)) continue;
    any_valid = true;
    for (int round = 0; round < kDampingRounds; ++round) {
      const int N = std::min(2 << round, cap);
      Built built = build(route, a, zeros, N, r, rng);
      const double dev = max_deviation(built.chain.as_map(), id, r, 2, cfg);
      if (std::isfinite(dev) && dev <= eps) {
        if (stats) *stats = {built.shears > 0 ? N : 0, dev};
        return std::move(built.chain);
      }
      if (std::isfinite(dev)) best = std::min(best, dev);
      if (N == cap) break;
    }
  }
  if (!any_valid) {
    throw Error(ErrorKind::GenericityFailure, "every route meets a fixed coordinate or the box");
  }
  throw DampingExhaustedError(best, eps);
}

EquivalenceResult equivalence_chain(const std::vector<CxVector>& A, const std::vector<CxVector>& B,
                                    double eps0, double growth, double initial_radius,
                                    const ToleranceConfig& cfg, std::uint64_t seed) {
  if (A.size() != B.size()) throw Error(ErrorKind::LengthMismatch, "A and B differ in length");
  if (!(eps0 > 0.0) || !(growth > 1.0) || !(initial_radius > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "need eps0 > 0, growth > 1, initial_radius > 0");
  }
  for (const auto* set : {&A, &B}) {
    for (std::size_t i = 0; i < set->size(); ++i) {
      require_c2((*set)[i], "point");
      for (std::size_t j = 0; j < i; ++j) {
        if (sup_dist((*set)[i], (*set)[j]) < kSeparation) {
          throw Error(ErrorKind::DuplicatePoints,
                      "points " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
        }
      }
    }
  }

  EquivalenceResult out;
  const std::size_t n = A.size();
  std::vector<CxVector> cur = A;
  std::vector<bool> matched(n, false);
  double r = initial_radius;
  double spent = 0.0;
  double matched_norm = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double eps = eps0 * std::pow(growth, -static_cast<double>(k));
    int pick = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (matched[i]) continue;
      const bool trivial = sup_dist(cur[i], B[i]) == 0.0;
      const bool outside = sup_norm(cur[i]) > r && sup_norm(B[i]) > r;
      if (!trivial && !outside) continue;
      if (pick < 0 || sup_norm(B[i]) < sup_norm(B[pick])) pick = static_cast<int>(i);
    }
    if (pick < 0) {
      throw Error(ErrorKind::ScheduleInfeasible,
                  "stage " + std::to_string(k) + ": no pending pair outside radius " +
                      std::to_string(r));
    }
    std::vector<CxVector> fixed;
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(j) != pick) fixed.push_back(cur[j]);
    }
    MoveStats stats;
    AutoChain phi = move_point_fixing(cur[pick], B[pick], fixed, CompactBox{r}, eps, cfg,
                                      seed + k, &stats);
    for (CxVector& z : cur) z = phi.apply(z);
    matched[pick] = true;
    out.order.push_back(pick);
    out.stages.push_back({static_cast<int>(k), eps, stats.deviation, static_cast<int>(k),
                          stats.damping_nodes_used, r});
    out.chain.then(phi);
    out.stage_maps.push_back(std::move(phi));

    spent += eps;
    matched_norm = std::max(matched_norm, sup_norm(B[pick]));
    r = std::max(r + eps, matched_norm + spent);
  }
  return out;
}

void shell_instance(int count, std::uint64_t seed, std::vector<CxVector>& A,
                    std::vector<CxVector>& B) {
  if (count < 0) throw Error(ErrorKind::InvalidArgument, "count must be >= 0");
  Sampler rng(seed);
  auto point = [&](int i) {
    const double m = rng.uniform(1.5 + 2.0 * i, 2.5 + 2.0 * i);
    const int big = rng.integer(0, 1);
    CxVector z(2);
    z[big] = std::polar(m, rng.uniform(0.0, 2.0 * std::numbers::pi));
    z[1 - big] = rng.in_disc(m);
    return z;
  };
  A.clear();
  B.clear();
  for (int i = 0; i < count; ++i) {
    A.push_back(point(i));
    B.push_back(point(i));
  }
}

}  // namespace tameforge
