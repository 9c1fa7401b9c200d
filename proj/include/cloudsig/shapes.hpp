#pragma once

#include "cloudsig/point_cloud.hpp"

#include <cstdint>
#include <vector>

namespace cloudsig {

// A generated, ordered sample. `closed` says whether the last point connects
// back to the first; `mask` is only filled by the sector generator.
struct Shape {
  PointCloud cloud;
  bool closed = false;
  std::vector<bool> mask;
};

struct NoiseSpec {
  double percent = 0.0;  // fraction of the largest consecutive gap
  std::uint64_t seed = 0;
};

// Largest distance between consecutive points, closing edge included for
// closed shapes.
double max_consecutive_gap(const Shape& shape);

// n >= 3 points at angles 2 pi k / n.
Shape gen_circle(int n, double radius = 1.0, const Vec& center = Vec());

// n points (n divisible by 4) equally spaced along the boundary of an
// axis-aligned square, starting at the lower-left corner, counterclockwise.
Shape gen_square(int n, double side = 2.0, const Vec& center = Vec());

// Arc of the circle centered at angle 0. mask marks the middle quarter of
// the aperture.
Shape gen_sector(int n, double aperture = 3.14159265358979323846 / 16.0, double radius = 1.0);

// y = -1 + x^2 + |x|^2.5 sampled at n equispaced x in [-0.25, 0.25].
Shape gen_graph(int n = 51);

// m points on the unit sphere in R^3: x3 uniform in [-1, 1], azimuth
// uniform in [0, 2 pi).
Shape gen_sphere_sample(int m, std::uint64_t seed);

// Closed paperclip-like curve of segments and semicircles sampled at n
// points equally spaced by arc length. The planar version lives in R^2; the
// default embeds it in the xz-plane of R^3.
Shape gen_folded_curve(int n);
Shape gen_folded_curve_planar(int n);
double folded_curve_length();

// n_y copies of the embedded folded curve at y equispaced in [-0.5, 0.5].
Shape gen_extruded_surface(int n_curve, int n_y = 7);

// Displaces every point by rho * w with rho uniform in
// [0, percent * max_consecutive_gap] and w uniform on the unit sphere.
Shape add_noise(const Shape& shape, const NoiseSpec& spec);

}  // namespace cloudsig
