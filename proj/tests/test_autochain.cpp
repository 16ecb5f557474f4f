#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "support.hpp"
#include "tameforge/autochain.hpp"
#include "tameforge/verify.hpp"

using namespace tameforge;
using tftest::dist;
using tftest::kind_of;
using tftest::vec;

namespace {

// well separated nodes keep the polynomial coefficients of the order of the values
const std::vector<Complex> kSpread{0.0, 1.0, -1.0, Complex(0, 1), Complex(0, -1)};

Interpolant poly(std::vector<Complex> nodes, std::vector<Complex> values) {
  return Interpolant::fit(nodes, values);
}

// z_2 += f(z_1) on C^2
ShearPrimitive graph_shear(ScalarFn f) { return ShearPrimitive(vec({0, 1}), vec({1, 0}), std::move(f)); }

AutoChain random_chain(std::uint64_t seed) {
  Sampler s(seed);
  AutoChain chain(4);
  for (int i = 0; i < 6; ++i) {
    CxVector v = CxVector::Zero(4);
    v[s.integer(0, 3)] = 1.0;
    v[s.integer(0, 3)] += s.in_disc(1.0);
    std::vector<Complex> values;
    for (int j = 0; j < 3; ++j) values.push_back(s.in_disc(0.3));
    chain.push(make_forstneric_shear(v, poly({-1.0, 1.0, Complex(0, 1)}, values), 2));
  }
  return chain;
}

}  // namespace

TEST_CASE("empty chain is the identity") {
  AutoChain chain(3);
  const CxVector z = vec({1, Complex(2, -1), 3});
  CHECK(dist(chain.apply(z), z) == 0.0);
  CHECK(chain.inverse().empty());
}

TEST_CASE("constant shear moves the origin up") {
  AutoChain chain(2);
  chain.push(graph_shear(AffineFn::constant(1.0)));
  CHECK(dist(chain.apply(vec({0, 0})), vec({0, 1})) == 0.0);
}

TEST_CASE("shear inverse negates the function") {
  const auto f = poly({0.0, 1.0, Complex(0, 2)}, {1.0, -2.0, 0.5});
  const ShearPrimitive s = graph_shear(f);
  const ShearPrimitive inv = s.inverse();
  const Complex probe(0.3, -0.7);
  CHECK(std::abs(inv.fn()(probe) + s.fn()(probe)) < 1e-15);
  AutoChain chain(2);
  chain.push(s);
  const CxVector z = vec({Complex(1.5, 0.2), -0.4});
  CHECK(dist(chain.inverse().apply(chain.apply(z)), z) < 1e-12);
}

TEST_CASE("random six-shear chains round-trip") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const AutoChain chain = random_chain(seed);
    CHECK(round_trip_residual(chain, sample_points(4, SampleSpec{20, 2.0, seed})) < 1e-9);
  }
}

TEST_CASE("shears reject a functional that does not annihilate the direction") {
  CHECK(kind_of([] { ShearPrimitive(vec({1, 0}), vec({1, 0}), AffineFn::identity()); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { ShearPrimitive(vec({0, 0}), vec({1, 0}), AffineFn::identity()); }) ==
        ErrorKind::ZeroDirection);
  CHECK(kind_of([] { ShearPrimitive(vec({0, 1, 0}), vec({1, 0}), AffineFn::identity()); }) ==
        ErrorKind::DimensionMismatch);
}

TEST_CASE("Forstneric shears use lambda = J v") {
  SUBCASE("n = 1, v = e2 gives z2 += z1") {
    const auto s = make_forstneric_shear(vec({0, 1}), AffineFn::identity(), 1);
    CHECK(s.forstneric());
    CHECK(dist(s.apply(vec({3, 1})), vec({3, 4})) == 0.0);
  }
  SUBCASE("n = 2, v = e1 reads -z3") {
    const auto s = make_forstneric_shear(vec({1, 0, 0, 0}), AffineFn::identity(), 2);
    CHECK(dist(s.functional(), vec({0, 0, -1, 0})) == 0.0);
  }
  SUBCASE("n = 2, v = e3 + sqrt2 e4 reads z1 + sqrt2 z2") {
    const auto s = make_forstneric_shear(vec({0, 0, 1, std::sqrt(2.0)}), AffineFn::identity(), 2);
    CHECK(dist(s.functional(), vec({1, std::sqrt(2.0), 0, 0})) == 0.0);
  }
  CHECK(kind_of([] { make_forstneric_shear(vec({0, 0}), AffineFn::identity(), 1); }) ==
        ErrorKind::ZeroDirection);
  const ShearPrimitive general(vec({0, 1}), vec({1, 0}), AffineFn::identity());
  CHECK(general.forstneric());  // e1 == J e2
  const ShearPrimitive other(vec({0, 1}), vec({2, 0}), AffineFn::identity());
  CHECK_FALSE(other.forstneric());
}

TEST_CASE("symplectic check") {
  const ToleranceConfig cfg;
  CHECK(check_symplectic(AutoChain(4), 2, cfg).checks[0].residual < 1e-10);
  Sampler s(42);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Complex> values;
    for (int j = 0; j < 5; ++j) values.push_back(s.in_disc(1.0));
    AutoChain chain(4);
    chain.push(make_forstneric_shear(s.in_polydisc(4, 1.0), poly(kSpread, values), 2));
    const auto rep = check_symplectic(chain, 2, cfg, SampleSpec{50, 1.0, 7});
    CHECK(rep.ok());
    CHECK(rep.checks[0].residual < 1e-6);
  }
}

TEST_CASE("volume check") {
  const ToleranceConfig cfg;
  CHECK(check_volume(AutoChain(2), cfg).checks[0].residual < 1e-10);
  const auto p = poly({0.0, 1.0, -1.0, 0.5}, {1.0, 0.0, 2.0, -1.0});
  AutoChain one(2);
  one.push(graph_shear(p));
  CHECK(check_volume(one, cfg).checks[0].residual < 1e-8);

  // three shears of degree 5 alternating the axes
  Sampler s(9);
  AutoChain three(2);
  for (int i = 0; i < 3; ++i) {
    std::vector<Complex> nodes, values;
    for (int j = 0; j < 6; ++j) {
      nodes.push_back(s.in_disc(1.0));
      values.push_back(s.in_disc(0.3));
    }
    const CxVector v = i % 2 == 0 ? vec({0, 1}) : vec({1, 0});
    const CxVector l = i % 2 == 0 ? vec({1, 0}) : vec({0, 1});
    three.push(ShearPrimitive(v, l, poly(nodes, values)));
  }
  CHECK(check_volume(three, cfg, SampleSpec{50, 0.5, 3}).checks[0].residual < 1e-6);

  // (x, y) -> (2x, y) is not volume preserving
  AutoChain scaled(2);
  scaled.push(FlowPrimitive(Generator::ProductY, std::log(2.0)));
  CHECK_FALSE(check_volume(scaled, cfg, SampleSpec{10, 1.0, 3}).ok());
}

TEST_CASE("tame action check") {
  const ToleranceConfig cfg;
  const std::vector<CxVector> pts{vec({1, 2}), vec({3, 4})};
  CHECK(verify_tame_action(AutoChain(2), pts, pts, cfg).checks[0].residual == 0.0);
  const std::vector<CxVector> wrong{vec({1, 2}), vec({3, 5})};
  const auto rep = verify_tame_action(AutoChain(2), pts, wrong, cfg);
  CHECK_FALSE(rep.ok());
  CHECK(rep.checks[0].residual == doctest::Approx(1.0));
  CHECK(kind_of([&] { verify_tame_action(AutoChain(2), pts, {pts[0]}, cfg); }) == ErrorKind::LengthMismatch);
}

TEST_CASE("flows satisfy the group law") {
  auto kr = std::make_shared<const KRVariety>(KRVariety::kr_cubic());
  const std::vector<std::pair<Generator, FlowParams>> cases{
      {Generator::V, {}},          {Generator::W, {}},         {Generator::H, {}},
      {Generator::A, {}},          {Generator::B, {}},         {Generator::C, {}},
      {Generator::ProductX, {}},   {Generator::ProductY, {}},  {Generator::GizPhi, {2, nullptr}},
      {Generator::GizPsi, {2, nullptr}}, {Generator::KR_V, {1, kr}}, {Generator::KR_W, {1, kr}},
  };
  Sampler s(77);
  for (const auto& [gen, params] : cases) {
    CAPTURE(to_string(gen));
    const int dim = generator_dim(gen, params);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
      const CxVector z = s.in_polydisc(dim, 1.0);
      const Complex t = s.in_disc(1.0), u = s.in_disc(1.0);
      const CxVector two = flow_point(gen, u, flow_point(gen, t, z, params), params);
      worst = std::max(worst, dist(two, flow_point(gen, t + u, z, params)));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("function-valued times need a kernel functional") {
  // c is V-invariant, a is not
  const CxVector c = vec({0, 0, 1, 0});
  const CxVector a = vec({1, 0, 0, 0});
  CHECK_NOTHROW(FlowPrimitive(Generator::V, AffineFn::identity(), c));
  CHECK(kind_of([&] { FlowPrimitive(Generator::V, AffineFn::identity(), a); }) ==
        ErrorKind::NotKernelInvariant);
  // time c for V: a -> a + t c, b -> b + t(d - a) - t^2 c, d -> d - t c
  const FlowPrimitive f(Generator::V, AffineFn::identity(), c);
  const CxVector p = vec({1, 2, 3, 7});
  CHECK(dist(f.apply(p), vec({10, 2 + 3.0 * 6 - 27, 3, -2})) < 1e-12);
  CHECK(dist(f.inverse().apply(f.apply(p)), p) < 1e-12);
}

TEST_CASE("lift acts on the selected coordinates") {
  AutoChain inner(2);
  inner.push(graph_shear(AffineFn::identity()));
  const LiftPrimitive lift(4, {1, 3}, inner);
  CHECK(dist(lift.apply(vec({1, 2, 3, 4})), vec({1, 2, 3, 6})) == 0.0);
  CHECK(dist(lift.inverse().apply(vec({1, 2, 3, 6})), vec({1, 2, 3, 4})) == 0.0);
}
