#include "tameforge/euclid.hpp"

#include <cmath>

#include "tameforge/error.hpp"

namespace tameforge {

namespace {

constexpr double kFirstCoordTol = 1e-12;
// x-coordinates closer than this count as colliding for the preliminary shear
constexpr double kSeparation = 1e-6;
constexpr int kGenericRetries = 8;

CxVector e(int i) { return unit_vector(2, i); }

ShearPrimitive graph(int from, int to, std::vector<Complex> nodes, std::vector<Complex> values) {
  return ShearPrimitive(e(to), e(from), Interpolant::fit(nodes, values));
}

bool separated(const std::vector<Complex>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (std::abs(xs[i] - xs[j]) < kSeparation) return false;
    }
  }
  return true;
}

// y += p(x) sending y_j to j, x += q(y) sending x_j to targets_j, y += r(x)
// sending j back to 0.
AutoChain three_shears(const std::vector<Complex>& xs, const std::vector<Complex>& ys,
                       const std::vector<Complex>& targets) {
  const std::size_t K = xs.size();
  std::vector<Complex> label(K), p(K), q(K), r(K);
  for (std::size_t i = 0; i < K; ++i) {
    label[i] = static_cast<double>(i + 1);
    p[i] = label[i] - ys[i];
    q[i] = targets[i] - xs[i];
    r[i] = -label[i];
  }
  AutoChain chain(2);
  chain.push(graph(0, 1, xs, p));
  chain.push(graph(1, 0, label, q));
  chain.push(graph(0, 1, targets, r));
  return chain;
}

}  // namespace

AutoChain line_to_targets(const AxisSet& b, const std::vector<CxVector>& targets) {
  if (b.n < 1) throw Error(ErrorKind::InvalidArgument, "n must be >= 1");
  if (targets.size() != b.first_coords.size()) {
    throw Error(ErrorKind::LengthMismatch, "targets and first coordinates differ in length");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].size() != b.n) throw Error(ErrorKind::DimensionMismatch, "target has wrong dimension");
    if (std::abs(targets[i][0] - b.first_coords[i]) > kFirstCoordTol) {
      throw Error(ErrorKind::FirstCoordinateMismatch, "target " + std::to_string(i) + " leaves the fiber");
    }
  }
  AutoChain chain(b.n);
  for (int j = 1; j < b.n; ++j) {
    std::vector<Complex> values;
    for (const auto& t : targets) values.push_back(t[j]);
    chain.push(ShearPrimitive(unit_vector(b.n, j), unit_vector(b.n, 0), Interpolant::fit(b.first_coords, values)));
  }
  return chain;
}

AutoChain c2_relabel(const std::vector<Complex>& alpha, const std::vector<Complex>& beta) {
  if (alpha.size() != beta.size()) throw Error(ErrorKind::LengthMismatch, "alpha and beta differ in length");
  return three_shears(alpha, std::vector<Complex>(alpha.size(), 0.0), beta);
}

Normalization very_tame_normalize(const std::vector<CxVector>& S, std::uint64_t seed) {
  if (S.empty()) throw Error(ErrorKind::InvalidArgument, "empty set");
  Normalization out;
  std::vector<Complex> xs, ys, targets;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i].size() != 2) throw Error(ErrorKind::DimensionMismatch, "points must lie in C^2");
    out.points.push_back(S[i]);
    xs.push_back(S[i][0]);
    ys.push_back(S[i][1]);
    targets.push_back(static_cast<double>(i + 1));
    out.images.push_back((CxVector(2) << targets.back(), 0.0).finished());
  }
  if (!separated(xs)) {
    Sampler rng(seed);
    for (int attempt = 0; attempt < kGenericRetries && !out.preliminary; ++attempt) {
      const Complex c = std::polar(rng.uniform(0.1, 0.5), rng.uniform(0.0, 2.0 * M_PI));
      std::vector<Complex> moved(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) moved[i] = xs[i] + c * ys[i];
      if (separated(moved)) {
        out.preliminary = c;
        xs = moved;
      }
    }
    if (!out.preliminary) throw Error(ErrorKind::GenericityFailure, "x-coordinates never separated");
    out.chain.push(ShearPrimitive(e(0), e(1), AffineFn{*out.preliminary, 0.0}));
  }
  out.chain.then(three_shears(xs, ys, targets));
  return out;
}

}  // namespace tameforge
