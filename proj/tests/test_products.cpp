#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle.hpp"
#include "support.hpp"
#include "tameforge/products.hpp"

using namespace tameforge;
using tftest::dist;
using tftest::kind_of;
using tftest::vec;

namespace {

const ToleranceConfig kCfg;
const KRVariety kKR = KRVariety::kr_cubic();

double mapping(const Construction& c) {
  return verify_tame_action(c.chain, c.points, c.images, kCfg).checks[0].residual;
}

const Interpolant& stage_fn(const Construction& c, int i) {
  return *std::get<FlowPrimitive>(c.chain.primitives()[i]).time().interpolant();
}

}  // namespace

TEST_CASE("CStarPoint rejects w = 0") {
  CHECK(kind_of([] { CStarPoint::make(1.0, 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(dist(CStarPoint::make(1.0, 2.0).to_vector(), vec({1, 2})) == 0.0);
}

TEST_CASE("product_chain") {
  CHECK(mapping(product_chain({1, 2, 3, 4, 5})) < 1e-8);
  const std::vector<int> ell{2, 4, 6, 8, 10};
  const auto c = product_chain(ell);
  CHECK(mapping(c) < 1e-8);
  // hand trace of (3, 1): (3, e^3) -> (3 + f(e^3), e^3) -> (6, e^3 e^{g(6)})
  std::vector<Complex> en, f, l, g;
  for (int n = 1; n <= 5; ++n) {
    en.push_back(std::exp(double(n)));
    f.push_back(double(ell[n - 1] - n));
    l.push_back(double(ell[n - 1]));
    g.push_back(double(-n));
  }
  const Complex x = 3.0 + tftest::lagrange(en, f, std::exp(3.0));
  const Complex y = std::exp(3.0) * std::exp(tftest::lagrange(l, g, x));
  CHECK(dist(vec({x, y}), vec({6, 1})) < 1e-9);
  CHECK(dist(c.chain.apply(vec({3, 1})), vec({6, 1})) < 1e-8);
  // solved stage values reproduce the closed forms
  for (int n = 1; n <= 5; ++n) {
    CHECK(std::abs(stage_fn(c, 1)(std::exp(double(n))) - f[n - 1]) < 1e-9);
    CHECK(std::abs(stage_fn(c, 2)(l[n - 1]) - g[n - 1]) < 1e-9);
  }
  CHECK(kind_of([] { product_chain(random_injection(13, 40, 1)); }) == ErrorKind::OverflowGuard);
  CHECK(kind_of([] { product_chain({3, 3}); }) == ErrorKind::InjectivityViolation);
}

TEST_CASE("gizatullin_chain") {
  SUBCASE("identity leaves the set fixed") {
    for (int m = 0; m <= 2; ++m) {
      const auto c = gizatullin_chain(m, {1, 2, 3});
      CHECK(mapping(c) < 1e-8);
      for (auto v : stage_fn(c, 1).values()) CHECK(std::abs(v) < 1e-12);
    }
  }
  SUBCASE("m = 1, l = (2, 3, 1)") {
    const std::vector<int> ell{2, 3, 1};
    const auto c = gizatullin_chain(1, ell);
    CHECK(mapping(c) < 1e-7);
    CHECK(dist(c.chain.apply(vec({1, 1})), vec({2, 1})) < 1e-7);
    CHECK(dist(c.chain.apply(vec({3, 1})), vec({1, 1})) < 1e-7);
    for (int n = 1; n <= 3; ++n) {
      const double e = std::pow(n, 2), l = ell[n - 1];
      // (n, 1) -> (n, e^{n^2}) -> (l, e^{n^2}) -> (l, 1)
      CHECK(dist(c.chain.apply_prefix(vec({double(n), 1}), 1), vec({double(n), std::exp(e)})) <
            1e-12 * std::exp(e));
      CHECK(std::abs(stage_fn(c, 1).values()[n - 1] - std::exp(-e) * (l - n)) < 1e-9);
      CHECK(std::abs(stage_fn(c, 2).values()[n - 1] + e / l) < 1e-9);
    }
  }
  SUBCASE("m = 0 is the product construction") {
    const std::vector<int> ell{4, 1, 3, 2};
    CHECK(mapping(gizatullin_chain(0, ell)) < 1e-8);
    const auto p = product_chain(ell);
    const auto g = gizatullin_chain(0, ell);
    for (int n = 1; n <= 4; ++n) CHECK(dist(p.chain.apply(vec({double(n), 1})), g.chain.apply(vec({double(n), 1}))) < 1e-9);
  }
  CHECK(kind_of([] { gizatullin_chain(2, {1, 2, 3, 4}); }) == ErrorKind::OverflowGuard);
  CHECK(kind_of([] { gizatullin_chain(-1, {1}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("second factor stays nonzero") {
  const auto c = gizatullin_chain(1, {3, 1, 2});
  for (const auto& z : sample_points(2, SampleSpec{50, 1.0, 4})) {
    CxVector p = z;
    if (std::abs(p[1]) < 0.1) p[1] += 0.5;
    CHECK(std::abs(c.chain.apply(p)[1]) > 0.0);
  }
}

TEST_CASE("kr_residual") {
  CHECK(kr_residual(vec({1, -1, 0, 0}), kKR) == 0.0);
  CHECK(kr_residual(vec({1, 0, 0, 0}), kKR) == 1.0);
  CHECK(kind_of([] { kr_residual(vec({1, 0, 0}), kKR); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("kr_flow examples") {
  const CxVector p = vec({1, -1, 0, 0});
  CHECK(dist(kr_flow(Generator::KR_V, 0.0, p, kKR), p) == 0.0);
  for (Complex t : {Complex(0.5), Complex(-1, 0.3), Complex(2, 2)}) {
    const CxVector q = kr_flow(Generator::KR_V, t, p, kKR);
    CHECK(dist(q, vec({1, -1.0 - t * t, t, 0})) < 1e-12);
    CHECK(kr_residual(q, kKR) < 1e-10);
  }
  CHECK(kind_of([] { kr_flow(Generator::KR_V, 1.0, vec({1, 0, 0, 0}), kKR); }) == ErrorKind::OffVariety);
  CHECK(kind_of([] { kr_flow(Generator::V, 1.0, vec({1, -1, 0, 0}), kKR); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("kr_flow on random cubic points") {
  Sampler s(2718);
  double eq = 0, comm = 0, group = 0;
  for (int i = 0; i < 100; ++i) {
    // a fifth of the points sit on the x ~ 0 branch
    const CxVector p = i % 5 == 0 ? kr_cubic_point(s, 1e-8, 1e-5) : kr_cubic_point(s, 1e-8, 2.0);
    REQUIRE(kr_residual(p, kKR) <= 1e-8);
    const Complex t = s.in_disc(1.0), u = s.in_disc(1.0);
    const CxVector vt = kr_flow(Generator::KR_V, t, p, kKR);
    eq = std::max(eq, kr_residual(vt, kKR));
    eq = std::max(eq, kr_residual(kr_flow(Generator::KR_W, t, p, kKR), kKR));
    const Complex a = 0.5 * t, b = 0.5 * u;
    const CxVector vw = kr_flow(Generator::KR_V, a, kr_flow(Generator::KR_W, b, p, kKR), kKR);
    const CxVector wv = kr_flow(Generator::KR_W, b, kr_flow(Generator::KR_V, a, p, kKR), kKR);
    comm = std::max(comm, dist(vw, wv));
    const CxVector two = flow_point(Generator::KR_V, u, vt, {0, std::make_shared<const KRVariety>(kKR)});
    group = std::max(group, dist(two, kr_flow(Generator::KR_V, t + u, p, kKR)));
  }
  CHECK(eq < 1e-7);
  CHECK(comm < 1e-7);
  CHECK(group < 1e-8);
}

TEST_CASE("kr_flow at x = 0 uses the derivative limit") {
  // x = 0: z stays, y moves by t * da/dz_0 = -2 z_0 t
  const CxVector p = vec({0, 0.7, 0, 0});  // 0 = a(0, 0)
  const CxVector q = kr_flow(Generator::KR_V, 0.4, p, kKR);
  CHECK(dist(q, vec({0, 0.7, 0, 0})) == 0.0);
  const CxVector r = vec({0, 0.7, Complex(0, 1), 1});  // a = -(-1 + 1) = 0
  CHECK(kr_residual(r, kKR) == 0.0);
  CHECK(dist(kr_flow(Generator::KR_V, 0.4, r, kKR), vec({0, 0.7 - 2.0 * Complex(0, 1) * 0.4, Complex(0, 1), 1})) < 1e-15);
}
