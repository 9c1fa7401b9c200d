#include "cloudsig/error.hpp"
#include "cloudsig/shapes.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <set>

using namespace cloudsig;

namespace {

bool near(const Vec& p, double x, double y) {
  return std::abs(p(0) - x) < 1e-15 && std::abs(p(1) - y) < 1e-15;
}

}  // namespace

TEST_CASE("circle") {
  const Shape four = gen_circle(4);
  CHECK(four.closed);
  CHECK(near(four.cloud.point(0), 1, 0));
  CHECK(near(four.cloud.point(1), 0, 1));
  CHECK(near(four.cloud.point(2), -1, 0));
  CHECK(near(four.cloud.point(3), 0, -1));

  CHECK(max_consecutive_gap(gen_circle(30)) ==
        doctest::Approx(2.0 * std::sin(std::numbers::pi / 30.0)));
  CHECK(max_consecutive_gap(gen_circle(30)) == doctest::Approx(0.20906).epsilon(1e-4));

  const Shape tri = gen_circle(3);
  const double side = std::sqrt(3.0);
  CHECK((tri.cloud.point(0) - tri.cloud.point(1)).norm() == doctest::Approx(side));
  CHECK((tri.cloud.point(1) - tri.cloud.point(2)).norm() == doctest::Approx(side));
  CHECK((tri.cloud.point(2) - tri.cloud.point(0)).norm() == doctest::Approx(side));

  Vec c(2);
  c << 3.0, -1.0;
  const Shape moved = gen_circle(8, 2.0, c);
  CHECK(near(moved.cloud.point(0), 5.0, -1.0));
  CHECK_THROWS_AS(gen_circle(2), InvalidCount);
}

TEST_CASE("square") {
  const Shape corners = gen_square(4);
  CHECK(near(corners.cloud.point(0), -1, -1));
  CHECK(near(corners.cloud.point(1), 1, -1));
  CHECK(near(corners.cloud.point(2), 1, 1));
  CHECK(near(corners.cloud.point(3), -1, 1));

  const Shape eight = gen_square(8);
  CHECK(near(eight.cloud.point(1), 0, -1));
  CHECK(near(eight.cloud.point(3), 1, 0));
  CHECK(near(eight.cloud.point(5), 0, 1));
  CHECK(near(eight.cloud.point(7), -1, 0));

  const Shape s48 = gen_square(48);
  CHECK(s48.cloud.size() == 48);
  for (Eigen::Index i = 0; i < 48; ++i) {
    const double gap = (s48.cloud.point((i + 1) % 48) - s48.cloud.point(i)).norm();
    CHECK(gap == doctest::Approx(8.0 / 48.0));
  }
  CHECK_THROWS_AS(gen_square(10), InvalidCount);
  CHECK_THROWS_AS(gen_square(0), InvalidCount);
}

TEST_CASE("sector") {
  const double a = std::numbers::pi / 16.0;
  const Shape two = gen_sector(2);
  CHECK_FALSE(two.closed);
  CHECK(std::atan2(two.cloud.point(0)(1), two.cloud.point(0)(0)) == doctest::Approx(-a / 2));
  CHECK(std::atan2(two.cloud.point(1)(1), two.cloud.point(1)(0)) == doctest::Approx(a / 2));
  CHECK_FALSE(two.mask[0]);
  CHECK_FALSE(two.mask[1]);

  const Shape s33 = gen_sector(33);
  CHECK(s33.mask[16]);
  CHECK(near(s33.cloud.point(16), 1.0, 0.0));

  const Shape s128 = gen_sector(128);
  int count = 0;
  for (Eigen::Index k = 0; k < 128; ++k) {
    const double t = std::atan2(s128.cloud.point(k)(1), s128.cloud.point(k)(0));
    const bool inside = std::abs(t) <= std::numbers::pi / 128.0 + 1e-12;
    CHECK(s128.mask[static_cast<std::size_t>(k)] == inside);
    count += inside ? 1 : 0;
  }
  CHECK(count >= 31);
  CHECK(count <= 33);
  CHECK_THROWS_AS(gen_sector(1), InvalidCount);
}

TEST_CASE("graph") {
  const Shape g = gen_graph();
  CHECK(g.cloud.size() == 51);
  CHECK_FALSE(g.closed);
  CHECK(near(g.cloud.point(25), 0.0, -1.0));
  CHECK(near(g.cloud.point(50), 0.25, -0.90625));
  for (Eigen::Index k = 0; k + 1 < 51; ++k) {
    CHECK(g.cloud.point(k + 1)(0) > g.cloud.point(k)(0));
  }
}

TEST_CASE("sphere sample") {
  const Shape s = gen_sphere_sample(80, 7);
  for (Eigen::Index k = 0; k < 80; ++k) {
    CHECK(std::abs(s.cloud.point(k).norm() - 1.0) <= 1e-15);
  }
  CHECK(gen_sphere_sample(80, 7).cloud.points() == s.cloud.points());
  CHECK(gen_sphere_sample(80, 8).cloud.points() != s.cloud.points());

  const Shape big = gen_sphere_sample(10000, 123);
  CHECK(std::abs(big.cloud.points().row(2).mean()) <= 0.03);
}

TEST_CASE("folded curve") {
  CHECK(folded_curve_length() == doctest::Approx(8.0 + 1.5 * std::numbers::pi));
  CHECK(folded_curve_length() == doctest::Approx(12.7124).epsilon(1e-5));

  const Shape c = gen_folded_curve(54);
  CHECK(c.closed);
  CHECK(c.cloud.dim() == 3);
  CHECK(c.cloud.points().row(1).cwiseAbs().maxCoeff() == 0.0);
  const double gap = folded_curve_length() / 54.0;
  // chords never exceed the arc-length spacing; the closing edge included
  CHECK(max_consecutive_gap(c) <= gap + 1e-12);
  CHECK((c.cloud.point(53) - c.cloud.point(0)).norm() <= gap + 1e-12);
  // straight pieces keep the full spacing
  CHECK((c.cloud.point(1) - c.cloud.point(0)).norm() == doctest::Approx(gap));

  const Shape planar = gen_folded_curve_planar(54);
  CHECK(planar.cloud.dim() == 2);
  CHECK(planar.cloud.points().row(1) == c.cloud.points().row(2));

  for (int n : {16, 36, 54, 100, 200}) CHECK_NOTHROW(gen_folded_curve(n));
}

TEST_CASE("extruded surface") {
  const Shape s = gen_extruded_surface(54, 7);
  CHECK(s.cloud.size() == 54 * 7);
  std::set<double> ys;
  for (Eigen::Index k = 0; k < s.cloud.size(); ++k) ys.insert(s.cloud.point(k)(1));
  CHECK(ys.size() == 7);
  CHECK(*ys.begin() == -0.5);
  CHECK(*ys.rbegin() == 0.5);
  CHECK(ys.count(0.0) == 1);

  const Shape c = gen_folded_curve(54);
  // the middle copy is the curve itself
  CHECK(s.cloud.points().middleCols(3 * 54, 54) == c.cloud.points());
}

TEST_CASE("noise model") {
  const Shape clean = gen_circle(30);
  CHECK(add_noise(clean, {0.0, 5}).cloud.points() == clean.cloud.points());

  const double h = max_consecutive_gap(clean);
  const Shape noisy = add_noise(clean, {0.05, 5});
  for (Eigen::Index k = 0; k < 30; ++k) {
    CHECK((noisy.cloud.point(k) - clean.cloud.point(k)).norm() <= 0.05 * h + 1e-15);
  }
  CHECK(add_noise(clean, {0.05, 5}).cloud.points() == noisy.cloud.points());
  CHECK(add_noise(clean, {0.05, 6}).cloud.points() != noisy.cloud.points());
  CHECK(noisy.closed);

  // open shapes measure without the closing edge
  const Shape graph = gen_graph(51);
  CHECK(max_consecutive_gap(graph) < (graph.cloud.point(50) - graph.cloud.point(0)).norm());
  CHECK_THROWS_AS(add_noise(clean, {-0.1, 1}), InvalidSpec);
}

TEST_CASE("generators produce distinct points") {
  for (int n : {3, 10, 30, 100}) CHECK(gen_circle(n).cloud.min_pairwise_distance() > 0.0);
  for (int n : {4, 8, 48, 96}) CHECK(gen_square(n).cloud.min_pairwise_distance() > 0.0);
  for (int n : {16, 54, 200}) CHECK(gen_folded_curve(n).cloud.min_pairwise_distance() > 0.0);
}
