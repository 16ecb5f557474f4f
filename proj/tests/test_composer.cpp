#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <chrono>
#include <cmath>

#include "oracle.hpp"
#include "support.hpp"
#include "tameforge/composer.hpp"
#include "tameforge/verify.hpp"

using namespace tameforge;
using tftest::dist;
using tftest::kind_of;
using tftest::vec;

namespace {

const ToleranceConfig kCfg;

// Replays the chain shear by shear with the long-double Lagrange oracle.
CxVector replay(const AutoChain& chain, CxVector z) {
  for (const Primitive& p : chain.primitives()) {
    const auto& sh = std::get<ShearPrimitive>(p);
    const int moved = sh.direction()[0] != 0.0 ? 0 : 1;
    REQUIRE(sh.functional()[1 - moved] == Complex(1.0));
    const Interpolant& f = *sh.fn().interpolant();
    z[moved] += tftest::lagrange(f.nodes(), f.values(), z[1 - moved]);
  }
  return z;
}

// Independent grid: 9 points per real axis on the closed polydisc.
double grid_deviation(const PointMap& f, const PointMap& g, double radius) {
  double worst = 0.0;
  const int n = 9;
  std::vector<Complex> disc;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Complex z(-radius + 2.0 * radius * i / (n - 1), -radius + 2.0 * radius * j / (n - 1));
      if (std::abs(z) <= radius) disc.push_back(z);
    }
  }
  for (Complex x : disc) {
    for (Complex y : disc) {
      const CxVector z = vec({x, y});
      worst = std::max(worst, dist(f(z), g(z)));
    }
  }
  return worst;
}

const PointMap kId = [](const CxVector& z) { return z; };

}  // namespace

TEST_CASE("a = b gives the empty chain") {
  MoveStats stats;
  const AutoChain c =
      move_point_fixing(vec({3.0, 1.0}), vec({3.0, 1.0}), {vec({4.0, 1.0})}, {1.0}, 0.1, kCfg, 1, &stats);
  CHECK(c.empty());
  CHECK(stats.deviation == 0.0);
}

TEST_CASE("move (3,0) to (3,2) fixing (4,1) inside eps on the unit box") {
  const CxVector a = vec({3.0, 0.0}), b = vec({3.0, 2.0}), f = vec({4.0, 1.0});
  MoveStats stats;
  const AutoChain c = move_point_fixing(a, b, {f}, {1.0}, 0.1, kCfg, 1, &stats);
  CHECK(c.size() == 1);
  CHECK(dist(c.apply(a), b) < 1e-12);
  CHECK(dist(c.apply(f), f) < 1e-12);
  CHECK(stats.deviation <= 0.1);
  CHECK(grid_deviation(c.as_map(), kId, 1.0) <= 0.1);
  CHECK(dist(replay(c, a), c.apply(a)) < 1e-10);
}

TEST_CASE("full move (5,0) to (0,5) with two fixed points matches the stepwise oracle") {
  const CxVector a = vec({5.0, 0.0}), b = vec({0.0, 5.0});
  const std::vector<CxVector> fixed{vec({-4.0, 2.0}), vec({0.5, {0.0, 6.0}})};
  MoveStats stats;
  const AutoChain c = move_point_fixing(a, b, fixed, {1.0}, 0.05, kCfg, 3, &stats);
  CHECK(c.size() == 2);
  CHECK(dist(c.apply(a), b) < 1e-8);
  CHECK(dist(replay(c, a), b) < 1e-8);
  for (const CxVector& f : fixed) CHECK(dist(c.apply(f), f) < 1e-9);
  CHECK(grid_deviation(c.as_map(), kId, 1.0) <= 0.05);
  CHECK(stats.damping_nodes_used > 0);
}

TEST_CASE("same-axis move uses a far intermediate") {
  // a and b are both outside only in x: y must travel through a far value.
  const CxVector a = vec({3.0, 0.2}), b = vec({-3.0, 0.5});
  const AutoChain c = move_point_fixing(a, b, {vec({2.0, 0.0})}, {1.0}, 0.1);
  CHECK(c.size() == 3);
  CHECK(dist(c.apply(a), b) < 1e-8);
  CHECK(dist(c.apply(vec({2.0, 0.0})), vec({2.0, 0.0})) < 1e-9);
}

TEST_CASE("move_point_fixing errors") {
  CHECK(kind_of([] { move_point_fixing(vec({0.5, 0.0}), vec({3.0, 0.0}), {}, {1.0}, 0.1); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { move_point_fixing(vec({3.0, 0.0}), vec({3.0, 2.0}), {}, {1.0}, 0.0); }) ==
        ErrorKind::InvalidArgument);
  // Every route would be evaluated at x = 3 or y = 2, both taken by fixed points.
  CHECK(kind_of([] {
          move_point_fixing(vec({3.0, 0.0}), vec({3.0, 2.0}), {vec({3.0, 5.0}), vec({0.0, 0.0})},
                            {1.0}, 0.1);
        }) == ErrorKind::GenericityFailure);
  // A target of 1e-30 is far below what 64 nodes can damp a unit move to.
  CHECK(kind_of([] { move_point_fixing(vec({1.1, 0.0}), vec({1.1, 5.0}), {}, {1.0}, 1e-30); }) ==
        ErrorKind::DampingExhausted);
}

TEST_CASE("equivalence with A = B is trivial") {
  std::vector<CxVector> A, B;
  shell_instance(3, 5, A, B);
  const EquivalenceResult r = equivalence_chain(A, A, 0.5, 2.0);
  CHECK(r.chain.empty());
  REQUIRE(r.stages.size() == 3);
  for (const StageLog& s : r.stages) CHECK(s.measured_deviation == 0.0);
}

TEST_CASE("equivalence errors") {
  std::vector<CxVector> A{vec({3.0, 0.0}), vec({3.0, 0.0})}, B{vec({4.0, 0.0}), vec({5.0, 0.0})};
  CHECK(kind_of([&] { equivalence_chain(A, B, 0.5, 2.0); }) == ErrorKind::DuplicatePoints);
  CHECK(kind_of([&] { equivalence_chain(B, A, 0.5, 2.0); }) == ErrorKind::DuplicatePoints);
  CHECK(kind_of([&] { equivalence_chain({vec({0.2, 0.0})}, {vec({3.0, 0.0})}, 0.5, 2.0); }) ==
        ErrorKind::ScheduleInfeasible);
  CHECK(kind_of([&] { equivalence_chain({vec({3.0, 0.0})}, B, 0.5, 2.0); }) ==
        ErrorKind::LengthMismatch);
}

TEST_CASE("equivalence on seeded shell instances") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CAPTURE(seed);
    std::vector<CxVector> A, B;
    shell_instance(4, seed, A, B);
    const auto t0 = std::chrono::steady_clock::now();
    const EquivalenceResult r = equivalence_chain(A, B, 0.5, 2.0);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(secs < 10.0);
    for (std::size_t i = 0; i < A.size(); ++i) CHECK(dist(r.chain.apply(A[i]), B[i]) < 1e-8);

    REQUIRE(r.stages.size() == 4);
    double prev = 0.0;
    for (std::size_t k = 0; k < r.stages.size(); ++k) {
      const StageLog& s = r.stages[k];
      CHECK(s.epsilon_target == doctest::Approx(0.5 * std::pow(2.0, -double(k + 1))));
      CHECK(s.measured_deviation <= s.epsilon_target);
      CHECK(s.box_radius > prev);
      prev = s.box_radius;
      // the stage log agrees with an independent grid
      CHECK(grid_deviation(r.stage_maps[k].as_map(), kId, s.box_radius) <=
            s.epsilon_target * 1.5);
    }

    // matched b's are fixed by every later stage
    for (std::size_t k = 0; k < r.order.size(); ++k) {
      const CxVector& b = B[r.order[k]];
      for (std::size_t j = k + 1; j < r.stage_maps.size(); ++j) {
        CHECK(dist(r.stage_maps[j].apply(b), b) < 1e-9);
      }
    }

    // every primitive is a volume shear: lambda . v = 0
    for (const Primitive& p : r.chain.primitives()) {
      const auto& sh = std::get<ShearPrimitive>(p);
      CHECK(std::abs(sh.functional().cwiseProduct(sh.direction()).sum()) == 0.0);
    }
  }
}

TEST_CASE("telescoping: later stages move box k by at most the remaining budget") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    std::vector<CxVector> A, B;
    shell_instance(4, seed, A, B);
    const EquivalenceResult r = equivalence_chain(A, B, 0.5, 2.0);
    for (std::size_t k = 1; k < r.stages.size(); ++k) {
      // tail = phi_n o ... o phi_{k+1}; stages[k].box_radius is r_k
      AutoChain tail(2);
      double budget = 0.0;
      for (std::size_t j = k; j < r.stage_maps.size(); ++j) {
        tail.then(r.stage_maps[j]);
        budget += r.stages[j].epsilon_target;
      }
      const double radius = r.stages[k].box_radius;
      CAPTURE(seed);
      CAPTURE(k);
      CHECK(max_deviation(tail.as_map(), kId, radius, 2, kCfg) <= budget);
      CHECK(max_deviation(r.stage_maps[k].as_map(), kId, radius, 2, kCfg) <=
            r.stages[k].epsilon_target);
    }
  }
}

TEST_CASE("composed chain passes the volume check on the first box") {
  std::vector<CxVector> A, B;
  shell_instance(3, 4, A, B);
  const EquivalenceResult r = equivalence_chain(A, B, 0.5, 2.0);
  const VerificationReport rep = check_volume(r.chain, kCfg, SampleSpec{20, 1.0, 9});
  CHECK(rep.checks[0].residual < 1e-6);
}
