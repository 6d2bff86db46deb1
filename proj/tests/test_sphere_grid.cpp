/* Apache License, Version 2.0 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "gmink/sphere_grid.hpp"
#include "test_helpers.hpp"

using namespace gmink;
using namespace gmink::testing;

TEST_CASE("build_grid n=2 uniform partition") {
  const SphericalGrid g = SphericalGrid::build(2, 4);
  REQUIRE(g.size() == 4);
  CHECK(g.nodes[0].isApprox(Vec3(1, 0, 0), 1e-15));
  CHECK(g.nodes[1].isApprox(Vec3(0, 1, 0), 1e-15));
  CHECK(g.nodes[2].isApprox(Vec3(-1, 0, 0), 1e-12));
  CHECK(g.nodes[3].isApprox(Vec3(0, -1, 0), 1e-12));
  for (double w : g.weights) CHECK(w == doctest::Approx(kPi / 2).epsilon(1e-15));
  g.validate();
}

TEST_CASE("weight sums match the sphere measure") {
  {
    const SphericalGrid g = SphericalGrid::build(2, 360);
    double sum = 0;
    for (double w : g.weights) sum += w;
    CHECK(std::abs(sum - 2 * kPi) < 1e-12);
  }
  {
    const SphericalGrid g = SphericalGrid::build(3, 500);
    double sum = 0;
    for (double w : g.weights) sum += w;
    CHECK(std::abs(sum - 4 * kPi) < 1e-6);
    g.validate();
  }
}

TEST_CASE("build_grid rejects bad arguments") {
  CHECK_THROWS_AS(SphericalGrid::build(4, 100), std::invalid_argument);
  CHECK_THROWS_AS(SphericalGrid::build(1, 100), std::invalid_argument);
  CHECK_THROWS_AS(SphericalGrid::build(2, 3), std::invalid_argument);
}

TEST_CASE("integrate: constants, hinges, odd functions") {
  const SphericalGrid g2 = SphericalGrid::build(2, 720);
  CHECK(integrate(g2, [](const Vec3&) { return 1.0; }) ==
        doctest::Approx(2 * kPi).epsilon(1e-14));

  // integral of (e.u)_+ over S^1 is 2
  const Vec3 e = dir2(0.3);
  CHECK(integrate(g2, [&](const Vec3& u) { return std::max(0.0, e.dot(u)); }) ==
        doctest::Approx(2.0).epsilon(1e-4));

  // odd integrand vanishes on the symmetric grid
  CHECK(std::abs(integrate(g2, [&](const Vec3& u) { return u.dot(e); })) < 1e-9);

  const SphericalGrid g3 = SphericalGrid::build(3, 2000);
  CHECK(integrate(g3, [](const Vec3&) { return 1.0; }) ==
        doctest::Approx(4 * kPi).epsilon(1e-14));
  CHECK(std::abs(integrate(g3, [](const Vec3& u) { return u.z(); })) < 1e-9);
}

TEST_CASE("integrate rejects non-finite integrands") {
  const SphericalGrid g = SphericalGrid::build(2, 8);
  CHECK_THROWS_AS(
      integrate(g, [](const Vec3& u) { return 1.0 / (u.x() - 1.0); }),
      std::domain_error);
}

TEST_CASE("refinement convergence for a kinked integrand") {
  // (e.u)_+ has a kink; the rectangle rule converges at second order.
  const Vec3 e = dir2(0.17);
  auto f = [&](const Vec3& u) { return std::max(0.0, e.dot(u)); };
  double prev = 1e300;
  for (int n : {16, 32, 64, 128, 256}) {
    const SphericalGrid g = SphericalGrid::build(2, n);
    const double err = std::abs(integrate(g, f) - 2.0);
    CHECK(err < prev);
    prev = err;
  }
}

TEST_CASE("refinement convergence on S^2") {
  auto f = [](const Vec3& u) { return std::exp(u.z()); };
  const double exact = 4 * kPi * std::sinh(1.0);
  const SphericalGrid coarse = SphericalGrid::build(3, 250);
  const SphericalGrid mid = SphericalGrid::build(3, 1000);
  const SphericalGrid fine = SphericalGrid::build(3, 4000);
  const double e0 = std::abs(integrate(coarse, f) - exact);
  const double e1 = std::abs(integrate(mid, f) - exact);
  const double e2 = std::abs(integrate(fine, f) - exact);
  CHECK(e1 < e0);
  CHECK(e2 < e1);
}

TEST_CASE("hemisphere detection") {
  // Half circle only: contained.
  std::vector<Vec3> half;
  for (int k = 0; k < 10; ++k) half.push_back(dir2(0.1 + k * 0.3));
  CHECK(in_closed_hemisphere(2, half));

  const SphericalGrid g2 = SphericalGrid::build(2, 16);
  CHECK_FALSE(in_closed_hemisphere(2, g2.nodes));

  std::vector<Vec3> cap;
  const SphericalGrid g3 = SphericalGrid::build(3, 64);
  for (const Vec3& u : g3.nodes)
    if (u.z() > 0.1) cap.push_back(u);
  CHECK(in_closed_hemisphere(3, cap));
  CHECK_FALSE(in_closed_hemisphere(3, g3.nodes));
}

TEST_CASE("parallel and serial integrate agree") {
  const SphericalGrid g = SphericalGrid::build(3, 3333);
  auto f = [](const Vec3& u) { return std::exp(u.x() - 0.5 * u.y()) + u.z() * u.z(); };
  const double a = integrate(g, f);
  const double b = reference::integrate(g, f);
  CHECK(a == doctest::Approx(b).epsilon(1e-13));
}
