/* Apache License, Version 2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gmink/convex.hpp"
#include "test_helpers.hpp"

using namespace gmink;
using namespace gmink::testing;

TEST_CASE("wulff_shape: axis-aligned square") {
  const Polytope sq = make_square(1.0);
  REQUIRE(sq.facet_count() == 4);
  CHECK(sq.redundant_count() == 0);
  CHECK(sq.vertices().size() == 4);
  for (const Facet& f : sq.facets()) CHECK(f.measure == doctest::Approx(2.0));
  // every facet lies on its plane and inside all constraints
  for (std::size_t i = 0; i < 4; ++i)
    for (const Vec3& v : sq.facets()[i].vertices)
      CHECK(std::abs(v.dot(sq.normals()[i]) - 1.0) < 1e-12);
}

TEST_CASE("wulff_shape: dense unit ball, h <= 1 everywhere") {
  const Polytope ball = ball_polytope(2, 1.0, 360);
  CHECK(ball.redundant_count() == 0);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  for (const Vec3& u : g.nodes) {
    CHECK(ball.support(u) >= 1.0 - 1e-12);          // circumscribed
    CHECK(ball.support(u) <= 1.0 / std::cos(kPi / 360) + 1e-12);
  }
}

TEST_CASE("wulff_shape: redundant constraint is flagged, body unchanged") {
  // Square constraints plus a slack diagonal half-plane.
  Polytope body = Polytope::wulff_shape(
      2,
      {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0), Vec3(0, -1, 0),
       dir2(kPi / 4)},
      {1, 1, 1, 1, 3.0});
  REQUIRE(body.facet_count() == 5);
  CHECK(body.redundant_count() == 1);
  CHECK(body.facets()[4].redundant);
  const SphericalGrid g = SphericalGrid::build(2, 720);
  CHECK(hausdorff_distance(body, make_square(1.0), g) < 1e-12);
  // tight diagonal constraint (touches the corner) is also non-facetal
  Polytope touching = Polytope::wulff_shape(
      2,
      {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(-1, 0, 0), Vec3(0, -1, 0),
       dir2(kPi / 4)},
      {1, 1, 1, 1, std::sqrt(2.0)});
  CHECK(touching.facets()[4].redundant);
}

TEST_CASE("wulff_shape rejects hemisphere-confined and nonpositive input") {
  CHECK_THROWS_AS(Polytope::wulff_shape(2,
                                        {dir2(0), dir2(0.5), dir2(1.0), dir2(1.5)},
                                        {1, 1, 1, 1}),
                  std::domain_error);
  CHECK_THROWS_AS(make_square(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Polytope::wulff_shape(2, {Vec3(2, 0, 0), Vec3(0, 1, 0),
                                            Vec3(-1, 0, 0), Vec3(0, -1, 0)},
                                        {1, 1, 1, 1}),
                  std::invalid_argument);
}

TEST_CASE("support function values") {
  const Polytope sq = make_square(1.0);
  CHECK(sq.support(Vec3(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(sq.support(dir2(kPi / 4)) == doctest::Approx(std::sqrt(2.0)));
  const Polytope cube = make_cube(1.0);
  CHECK(cube.support(Vec3(1, 1, 1).normalized()) ==
        doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("radial function values") {
  const Polytope sq = make_square(1.0);
  CHECK(sq.radial(Vec3(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(sq.radial(dir2(kPi / 4)) == doctest::Approx(std::sqrt(2.0)));
  const Polytope ball = ball_polytope(2, 2.5, 720);
  const SphericalGrid g = SphericalGrid::build(2, 97);
  for (const Vec3& u : g.nodes)
    CHECK(ball.radial(u) == doctest::Approx(2.5).epsilon(1e-4));
}

TEST_CASE("subadditivity and homogeneity of support values") {
  SplitMix64 rng(7);
  const Polytope body = random_polygon(rng, 9, 1.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3 u = dir2(rng.range(0, 2 * kPi)) * rng.range(0.1, 2.0);
    const Vec3 v = dir2(rng.range(0, 2 * kPi)) * rng.range(0.1, 2.0);
    const double lambda = rng.range(0.01, 5.0);
    CHECK(body.support(u + v) <= body.support(u) + body.support(v) + 1e-12);
    CHECK(body.support(lambda * u) ==
          doctest::Approx(lambda * body.support(u)).epsilon(1e-12));
  }
}

TEST_CASE("polar body: balls and the square") {
  const SphericalGrid g = SphericalGrid::build(2, 720);
  {
    const Polytope ball = ball_polytope(2, 1.0, 720);
    const Polytope dual = ball.polar();
    CHECK(hausdorff_distance(ball, dual, g) < 1e-4);  // self-polar up to mesh
  }
  {
    const Polytope big = ball_polytope(2, 2.0, 256);
    const Polytope dual = big.polar();
    for (const Vec3& u : g.nodes)
      CHECK(dual.support(u) == doctest::Approx(0.5).epsilon(1e-4));
  }
  {
    // polar of the square is the cross-polytope with vertices +-e1, +-e2
    const Polytope sq = make_square(1.0);
    const Polytope dual = sq.polar();
    CHECK(dual.support(Vec3(1, 0, 0)) == doctest::Approx(1.0));
    CHECK(dual.support(dir2(kPi / 4)) == doctest::Approx(std::sqrt(0.5)));
  }
}

TEST_CASE("duality identities on random polytopes") {
  SplitMix64 rng(11);
  const SphericalGrid g = SphericalGrid::build(2, 360);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope body = random_polygon(rng, 5 + static_cast<int>(rng.uniform() * 7),
                                         0.8, 2.2, false);
    const Polytope dual = body.polar();
    for (const Vec3& u : g.nodes)
      CHECK(body.support(u) * dual.radial(u) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(hausdorff_distance(body, dual.polar(), g) < 1e-8);
  }
}

TEST_CASE("wulff round-trip reproduces the body") {
  SplitMix64 rng(23);
  const SphericalGrid g = SphericalGrid::build(2, 360);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope body = random_polygon(rng, 6 + static_cast<int>(rng.uniform() * 6),
                                         1.0, 2.0);
    const Polytope again =
        Polytope::wulff_shape(2, body.normals(), body.support_numbers());
    CHECK(hausdorff_distance(body, again, g) < 1e-9);
  }
}

TEST_CASE("hausdorff and radial distances") {
  const SphericalGrid g = SphericalGrid::build(2, 720);
  const Polytope sq = make_square(1.0);
  const Polytope b1 = ball_polytope(2, 1.0, 720);
  const Polytope b2 = ball_polytope(2, 2.0, 720);
  CHECK(hausdorff_distance(sq, sq, g) == 0.0);
  CHECK(hausdorff_distance(b1, b2, g) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(hausdorff_distance(sq, b1, g) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-4));
  CHECK(radial_distance(sq, sq, g) == 0.0);
  CHECK(radial_distance(b1, b2, g) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(radial_distance(sq, b1, g) ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-4));
  CHECK_THROWS_AS(hausdorff_distance(sq, make_cube(1.0), g), std::invalid_argument);
}

TEST_CASE("metric equivalence along a Hausdorff-convergent sequence") {
  const SphericalGrid g = SphericalGrid::build(2, 360);
  const Polytope target = make_square(1.3);
  double prev_r = 1e300;
  for (double eps : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    const Polytope approx = make_square(1.3 + eps);
    const double dr = radial_distance(approx, target, g);
    CHECK(dr < prev_r);
    prev_r = dr;
  }
  CHECK(prev_r < 0.02);
}

TEST_CASE("lp_combination identities") {
  const SphericalGrid g = SphericalGrid::build(2, 360);
  SplitMix64 rng(3);
  const Polytope K = random_polygon(rng, 7, 1.0, 2.0);
  const Polytope L = ball_polytope(2, 1.0, 360);

  // identity combination returns K
  const Polytope same = lp_combination(2.0, 1.0, K, 0.0, L, g);
  CHECK(hausdorff_distance(K, same, g) < 1e-10);

  // 1.B + 1.B = 2B (p = 1)
  const Polytope sum = lp_combination(1.0, 1.0, L, 1.0, L, g);
  CHECK(hausdorff_distance(sum, ball_polytope(2, 2.0, 360), g) < 1e-9);

  // p = 2: (1 + 3)^{1/2} = 2
  const Polytope comb = lp_combination(2.0, 1.0, L, 3.0, L, g);
  CHECK(hausdorff_distance(comb, ball_polytope(2, 2.0, 360), g) < 1e-9);

  CHECK_THROWS_AS(lp_combination(1.0, 1.0, K, -10.0, L, g), std::domain_error);
}

TEST_CASE("max_radial") {
  CHECK(ball_polytope(2, 1.0, 720).max_radial().first ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK(ball_polytope(2, 3.0, 720).max_radial().first ==
        doctest::Approx(3.0).epsilon(1e-4));
  const auto [r, u] = make_square(1.0).max_radial();
  CHECK(r == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(std::abs(u.x()) - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(std::abs(u.y()) - std::sqrt(0.5)) < 1e-12);
}

TEST_CASE("n=3 wulff: cube geometry") {
  const Polytope cube = make_cube(1.0);
  REQUIRE(cube.facet_count() == 6);
  CHECK(cube.redundant_count() == 0);
  CHECK(cube.vertices().size() == 8);
  for (const Facet& f : cube.facets()) {
    CHECK_FALSE(f.redundant);
    CHECK(f.measure == doctest::Approx(4.0));
    CHECK(f.vertices.size() == 4);
  }
  CHECK(cube.radial(Vec3(1, 1, 1).normalized()) == doctest::Approx(std::sqrt(3.0)));
  // redundant extra plane
  auto normals = cube.normals();
  auto values = cube.support_numbers();
  normals.push_back(Vec3(1, 1, 1).normalized());
  values.push_back(5.0);
  const Polytope extra = Polytope::wulff_shape(3, normals, values);
  CHECK(extra.redundant_count() == 1);
}

TEST_CASE("n=3 polar of the cube") {
  const Polytope cube = make_cube(1.0);
  const Polytope dual = cube.polar();  // octahedron |x|+|y|+|z| <= 1
  CHECK(dual.support(Vec3(1, 0, 0)) == doctest::Approx(1.0));
  CHECK(dual.support(Vec3(1, 1, 1).normalized()) ==
        doctest::Approx(1.0 / std::sqrt(3.0)));
  const SphericalGrid g = SphericalGrid::build(3, 500);
  for (const Vec3& u : g.nodes)
    CHECK(cube.support(u) * dual.radial(u) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("SupportFunction round-trip validation") {
  const SphericalGrid g = SphericalGrid::build(2, 180);
  std::vector<double> hsq(g.size());
  for (std::size_t k = 0; k < g.size(); ++k)
    hsq[k] = std::abs(g.nodes[k].x()) + std::abs(g.nodes[k].y());
  const SupportFunction ok = SupportFunction::create(g, hsq);
  CHECK(ok.wulff_defect < 1e-10);

  // random positive values are not a support function
  SplitMix64 rng(5);
  std::vector<double> bad(g.size());
  for (double& v : bad) v = rng.range(0.5, 1.5);
  CHECK_THROWS_AS(SupportFunction::create(g, bad), std::invalid_argument);
}

TEST_CASE("RadialFunction samples lie on the body boundary") {
  const SphericalGrid g = SphericalGrid::build(2, 90);
  SplitMix64 rng(9);
  const Polytope body = random_polygon(rng, 8, 1.0, 2.0);
  const RadialFunction rho = RadialFunction::of(body, g);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(rho.values[k] > 0.0);
    const Vec3 x = rho.values[k] * g.nodes[k];
    CHECK(body.support(x.normalized()) >= x.norm() - 1e-10);  // inside
    // on the boundary: scaling up exits the body
    bool outside = false;
    const Vec3 y = x * (1.0 + 1e-9);
    for (std::size_t i = 0; i < body.facet_count(); ++i)
      if (y.dot(body.normals()[i]) > body.support_numbers()[i]) outside = true;
    CHECK(outside);
  }
}
