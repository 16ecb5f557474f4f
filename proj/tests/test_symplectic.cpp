#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle.hpp"
#include "support.hpp"
#include "tameforge/euclid.hpp"
#include "tameforge/symplectic.hpp"

using namespace tameforge;
using tftest::dist;
using tftest::kind_of;
using tftest::vec;

namespace {

const ToleranceConfig kCfg;
const double kSqrt2 = std::sqrt(2.0);

double mapping(const Construction& c) {
  return verify_tame_action(c.chain, c.points, c.images, kCfg).checks[0].residual;
}

double sympl(const AutoChain& chain, int n, std::uint64_t seed = 17) {
  return check_symplectic(chain, n, kCfg, SampleSpec{50, 2.0, seed}).checks[0].residual;
}

std::vector<Complex> distinct_disc(Sampler& s, int count, double r) {
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex z = s.in_disc(r);
    bool ok = true;
    for (auto w : out) ok = ok && std::abs(z - w) > 0.3;
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace

TEST_CASE("axis_relabel examples") {
  SUBCASE("alpha = beta fixes the set") {
    const std::vector<Complex> a{1.0, Complex(0, 2), -3.0};
    CHECK(mapping(axis_relabel(a, a, 2)) < 1e-9);
  }
  SUBCASE("2 e1 goes to 9 e1") {
    const std::vector<Complex> a{1.0, 2.0, 3.0}, b{4.0, 9.0, 16.0};
    const auto c = axis_relabel(a, b, 2);
    CHECK(c.chain.size() == 3);
    // stepwise oracle
    std::vector<Complex> f_vals, g_vals;
    for (int j = 0; j < 3; ++j) {
      f_vals.push_back(b[j] - a[j]);
      g_vals.push_back(-a[j]);
    }
    CxVector z = vec({2, 0, 0, 0});
    z[2] += z[0];
    z[0] += tftest::lagrange(a, f_vals, z[2]);
    z[2] += tftest::lagrange(b, g_vals, z[0]);
    CHECK(dist(z, vec({9, 0, 0, 0})) < 1e-12);
    CHECK(dist(c.chain.apply(vec({2, 0, 0, 0})), z) < 1e-9);
    for (const auto& p : c.chain.primitives()) CHECK(std::get<ShearPrimitive>(p).forstneric());
  }
  CHECK(kind_of([] { axis_relabel({1.0, 1.0}, {2.0, 3.0}, 1); }) == ErrorKind::StageCollision);
}

TEST_CASE("axis_relabel on random lists") {
  Sampler s(303);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = distinct_disc(s, 8, 3.0), b = distinct_disc(s, 8, 3.0);
      const auto c = axis_relabel(a, b, n);
      CHECK(mapping(c) < 1e-8);
    }
  }
}

TEST_CASE("fiber_lift_chain") {
  SUBCASE("targets on the axis") {
    const std::vector<Complex> b{1.0, 2.0, -1.0};
    std::vector<CxVector> t;
    for (auto x : b) t.push_back(x * unit_vector(4, 0));
    const auto c = fiber_lift_chain(b, t, 2);
    CHECK(c.chain.size() == 3);
    CHECK(mapping(c) < 1e-12);
  }
  SUBCASE("n = 2 example") {
    const auto c = fiber_lift_chain({1.0, 2.0}, {vec({1, 3, 5, 7}), vec({2, -1, 0, 4})}, 2);
    CHECK(mapping(c) < 1e-8);
    CHECK(sympl(c.chain, 2) < 1e-6);
    // direct composition: z_2 += f(z_1 - z_3) and z_3 too, then z_4 and z_3
    // += h(z_1 + z_2), then z_3 += k(z_1)
    CxVector z = vec({1, 0, 0, 0});
    z[1] += 3.0, z[2] += 3.0;  // f(1) = 3
    z[3] += 7.0, z[2] += 7.0;  // h(1 + 3) = 7
    z[2] += 5.0 - z[2];        // k(1) = 5 - 10
    CHECK(dist(c.chain.apply(vec({1, 0, 0, 0})), z) < 1e-9);
  }
  SUBCASE("n = 1 is a single shear") {
    const auto c = fiber_lift_chain({1.0, 2.0}, {vec({1, 3}), vec({2, 5})}, 1);
    CHECK(c.chain.size() == 1);
    CHECK(mapping(c) < 1e-12);
  }
  SUBCASE("colliding arguments name the stage") {
    try {
      fiber_lift_chain({1.0, 2.0}, {vec({1, 3, 0, 1}), vec({2, 2, 0, 2})}, 2);
      FAIL("expected a collision");
    } catch (const StageCollisionError& e) {
      CHECK(e.stage() == 2);
      CHECK(e.kind() == ErrorKind::StageCollision);
    }
  }
  SUBCASE("random targets") {
    Sampler s(55);
    for (int trial = 0; trial < 10; ++trial) {
      const auto b = distinct_disc(s, 6, 2.0);
      std::vector<CxVector> t;
      for (auto x : b) {
        CxVector z = s.in_polydisc(4, 2.0);
        z[0] = x;
        t.push_back(z);
      }
      CHECK(mapping(fiber_lift_chain(b, t, 2)) < 1e-8);
    }
  }
}

TEST_CASE("flatten_pairs_c4 corrected") {
  SUBCASE("single point") {
    const auto c = flatten_pairs_c4(PairLattice::with_values(1, {7.0}));
    const double s = 1.0 + kSqrt2;
    const CxVector p = vec({1, 1, 0, 0});
    CHECK(dist(c.chain.apply_prefix(p, 1), vec({1, 1, s, kSqrt2 * s})) < 1e-12);
    CHECK(dist(c.chain.apply_prefix(p, 2), vec({7, 1, s, kSqrt2 * s})) < 1e-12);
    CHECK(dist(c.chain.apply_prefix(p, 3), vec({7, 0, s, kSqrt2 * s})) < 1e-12);
    CHECK(dist(c.chain.apply(p), vec({7, 0, 0, 0})) < 1e-9);
  }
  SUBCASE("Cantor K = 4") {
    const auto c = flatten_pairs_c4(PairLattice::cantor(4));
    CHECK(mapping(c) < 1e-8);
    for (const auto& p : c.chain.primitives()) CHECK(std::get<ShearPrimitive>(p).forstneric());
  }
  SUBCASE("stage arguments stay distinct up to K = 6") {
    for (int K = 1; K <= 6; ++K) {
      const auto lat = PairLattice::cantor(K);
      std::vector<double> s;
      for (int n = 1; n <= K; ++n)
        for (int m = 1; m <= K; ++m) s.push_back(lat.s(n, m));
      std::sort(s.begin(), s.end());
      for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] - s[i - 1] > 1e-9);
      CHECK_NOTHROW(flatten_pairs_c4(lat));
    }
  }
  CHECK(kind_of([] { PairLattice::with_values(2, {1.0, 2.0, 3.0, 1.0}); }) == ErrorKind::NodeCollision);
}

TEST_CASE("flatten_pairs_c4 paper mode misses the lattice") {
  const auto c = flatten_pairs_c4(PairLattice::cantor(2), FlattenMode::Paper);
  CHECK(mapping(c) >= 1.0);
  // the first shear reads z_1 + a z_3, which is n on the lattice
  const auto& s1 = std::get<ShearPrimitive>(c.chain.primitives()[0]);
  CHECK_FALSE(s1.forstneric());
  CHECK(std::abs(tftest::vec({2, 1, 0, 0}).cwiseProduct(s1.functional()).sum() - 2.0) == 0.0);
  AutoChain first(4);
  first.push(s1);
  CHECK(sympl(first, 2) > 1e-3);
  CHECK(sympl(c.chain, 2) > 1e-3);
}

TEST_CASE("symplectic_lift") {
  CHECK(dist(symplectic_lift(AutoChain(2), 0).apply(vec({1, 2, 3, 4})), vec({1, 2, 3, 4})) == 0.0);
  AutoChain sq(2);
  sq.push(ShearPrimitive(vec({0, 1}), vec({1, 0}),
                         Interpolant::fit(std::vector<Complex>{0.0, 1.0, -1.0}, std::vector<Complex>{0.0, 1.0, 1.0})));
  const AutoChain lifted = symplectic_lift(sq, 0);
  CHECK(dist(lifted.apply(vec({1, 5, 2, 7})), vec({1, 5, 3, 7})) < 1e-14);
  CHECK(sympl(lifted, 2) < 1e-6);
  AutoChain scale(2);
  scale.push(FlowPrimitive(Generator::ProductY, 0.5));
  CHECK(kind_of([&] { symplectic_lift(scale, 1); }) == ErrorKind::NotVolumePreserving);
  AutoChain wrong(3);
  CHECK(kind_of([&] { symplectic_lift(wrong, 0); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("lifted normalisation of four points is symplectic") {
  const auto S = std::vector<CxVector>{vec({1, 0}), vec({-1, 1}), vec({Complex(0, 2), -1}), vec({Complex(0, -2), 2})};
  const auto n = very_tame_normalize(S);
  CHECK(sympl(symplectic_lift(n.chain, 1), 2) < 1e-6);
}

TEST_CASE("tame_c4_projection") {
  SUBCASE("grid points stay on the grid") {
    const std::vector<CxVector> A{vec({1, 1, 0, 0}), vec({1, 2, 0, 0}), vec({2, 1, 0, 0})};
    const auto c = tame_c4_projection(A);
    CHECK(mapping(c) < 1e-8);
    for (const auto& z : c.images) {
      CHECK(std::abs(z[2]) + std::abs(z[3]) < 1e-8);
      CHECK(std::abs(z[0] - std::round(z[0].real())) < 1e-8);
      CHECK(std::abs(z[1] - std::round(z[1].real())) < 1e-8);
    }
  }
  SUBCASE("random points land on the grid") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto A = sample_points(4, SampleSpec{4, 1.0, seed});
      const auto c = tame_c4_projection(A);
      for (std::size_t i = 0; i < A.size(); ++i) {
        const CxVector z = c.chain.apply(A[i]);
        CHECK(dist(z, c.images[i]) < 1e-8);
        CHECK(std::abs(z[2]) < 1e-8);
        CHECK(std::abs(z[3]) < 1e-8);
        CHECK(std::abs(z[0] - std::round(z[0].real())) < 1e-8);
        CHECK(std::abs(z[1] - std::round(z[1].real())) < 1e-8);
      }
      for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = i + 1; j < A.size(); ++j) CHECK(dist(c.images[i], c.images[j]) > 0.5);
    }
  }
}

TEST_CASE("two Forstneric shears compose symplectically") {
  // cubic f with coefficients in the 0.15 disc, unit direction
  Sampler s(808);
  const std::vector<Complex> nodes{0.0, 1.0, -1.0, Complex(0, 1)};
  for (int trial = 0; trial < 20; ++trial) {
    AutoChain chain(4);
    for (int k = 0; k < 2; ++k) {
      Complex c[4];
      for (auto& x : c) x = s.in_disc(0.15);
      std::vector<Complex> values;
      for (auto z : nodes) values.push_back(c[0] + z * (c[1] + z * (c[2] + z * c[3])));
      CxVector v = s.in_polydisc(4, 1.0);
      v /= sup_norm(v);
      chain.push(make_forstneric_shear(v, Interpolant::fit(nodes, values), 2));
    }
    CHECK(check_symplectic(chain, 2, kCfg, SampleSpec{50, 1.0, 3}).checks[0].residual < 1e-6);
  }
}
