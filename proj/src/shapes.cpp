#include "cloudsig/shapes.hpp"

#include "cloudsig/error.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace cloudsig {

namespace {

constexpr double kPi = std::numbers::pi;

Vec center_or_origin(const Vec& center, Eigen::Index d) {
  if (center.size() == 0) return Vec::Zero(d);
  if (center.size() != d) throw InvalidSpec("center has the wrong dimension");
  return center;
}

}  // namespace

double max_consecutive_gap(const Shape& shape) {
  const PointCloud& c = shape.cloud;
  double gap = 0.0;
  for (Eigen::Index i = 0; i + 1 < c.size(); ++i) {
    gap = std::max(gap, (c.point(i + 1) - c.point(i)).norm());
  }
  if (shape.closed && c.size() > 1) {
    gap = std::max(gap, (c.point(0) - c.point(c.size() - 1)).norm());
  }
  return gap;
}

Shape gen_circle(int n, double radius, const Vec& center) {
  if (n < 3) throw InvalidCount("circle needs at least 3 points");
  if (!(radius > 0.0)) throw InvalidSpec("radius must be positive");
  const Vec c = center_or_origin(center, 2);
  Mat pts(2, n);
  for (int k = 0; k < n; ++k) {
    const double t = 2.0 * kPi * k / n;
    pts(0, k) = c(0) + radius * std::cos(t);
    pts(1, k) = c(1) + radius * std::sin(t);
  }
  return {PointCloud(std::move(pts)), true, {}};
}

Shape gen_square(int n, double side, const Vec& center) {
  if (n < 4 || n % 4 != 0) throw InvalidCount("square needs a positive multiple of 4 points");
  if (!(side > 0.0)) throw InvalidSpec("side must be positive");
  const Vec c = center_or_origin(center, 2);
  const int per_side = n / 4;
  const double h = side / 2.0;
  const std::array<std::array<double, 2>, 4> corners{{{-h, -h}, {h, -h}, {h, h}, {-h, h}}};
  Mat pts(2, n);
  for (int s = 0; s < 4; ++s) {
    const auto& a = corners[static_cast<std::size_t>(s)];
    const auto& b = corners[static_cast<std::size_t>((s + 1) % 4)];
    for (int k = 0; k < per_side; ++k) {
      const double t = static_cast<double>(k) / per_side;
      pts(0, s * per_side + k) = c(0) + a[0] + t * (b[0] - a[0]);
      pts(1, s * per_side + k) = c(1) + a[1] + t * (b[1] - a[1]);
    }
  }
  return {PointCloud(std::move(pts)), true, {}};
}

Shape gen_sector(int n, double aperture, double radius) {
  if (n < 2) throw InvalidCount("sector needs at least 2 points");
  if (!(aperture > 0.0) || !(radius > 0.0)) throw InvalidSpec("aperture and radius must be positive");
  Mat pts(2, n);
  std::vector<bool> mask(static_cast<std::size_t>(n));
  const double quarter = aperture / 8.0;
  for (int k = 0; k < n; ++k) {
    const double t = -aperture / 2.0 + k * aperture / (n - 1);
    pts(0, k) = radius * std::cos(t);
    pts(1, k) = radius * std::sin(t);
    mask[static_cast<std::size_t>(k)] = std::abs(t) <= quarter * (1.0 + 1e-12);
  }
  return {PointCloud(std::move(pts)), false, std::move(mask)};
}

Shape gen_graph(int n) {
  if (n < 2) throw InvalidCount("graph needs at least 2 points");
  Mat pts(2, n);
  for (int k = 0; k < n; ++k) {
    // exact zero at the middle sample when n is odd
    const double x = 0.25 * (2.0 * k - (n - 1)) / (n - 1);
    pts(0, k) = x;
    pts(1, k) = -1.0 + x * x + std::pow(std::abs(x), 2.5);
  }
  return {PointCloud(std::move(pts)), false, {}};
}

Shape gen_sphere_sample(int m, std::uint64_t seed) {
  if (m < 1) throw InvalidCount("sphere sample needs at least one point");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> height(-1.0, 1.0);
  std::uniform_real_distribution<double> azimuth(0.0, 2.0 * kPi);
  Mat pts(3, m);
  for (int k = 0; k < m; ++k) {
    const double z = height(rng);
    const double t = azimuth(rng);
    const double rho = std::sqrt(1.0 - z * z);
    pts(0, k) = rho * std::cos(t);
    pts(1, k) = rho * std::sin(t);
    pts(2, k) = z;
  }
  return {PointCloud(std::move(pts)), false, {}};
}

namespace {

// Pieces of the folded curve in the (x, z) plane.
struct Piece {
  bool arc;
  double ax, az, bx, bz;           // segment endpoints
  double cx, cz, rad, t0, t1;      // arc center, radius, angle range
  double length() const {
    return arc ? rad * std::abs(t1 - t0) : std::hypot(bx - ax, bz - az);
  }
  std::array<double, 2> at(double s) const {  // s in [0, length]
    const double f = s / length();
    if (!arc) return {ax + f * (bx - ax), az + f * (bz - az)};
    const double t = t0 + f * (t1 - t0);
    return {cx + rad * std::cos(t), cz + rad * std::sin(t)};
  }
};

Piece segment(double ax, double az, double bx, double bz) {
  return {false, ax, az, bx, bz, 0, 0, 0, 0, 0};
}
Piece semicircle(double cx, double cz, double rad, double t0, double t1) {
  return {true, 0, 0, 0, 0, cx, cz, rad, t0, t1};
}

const std::array<Piece, 8>& folded_pieces() {
  static const std::array<Piece, 8> pieces{{
      segment(0.0, 0.0, 2.0, 0.0),
      semicircle(2.0, 0.25, 0.25, -kPi / 2, kPi / 2),
      segment(2.0, 0.5, 0.0, 0.5),
      semicircle(0.0, 0.75, 0.25, -kPi / 2, -3 * kPi / 2),
      segment(0.0, 1.0, 2.0, 1.0),
      semicircle(2.0, 0.25, 0.75, kPi / 2, -kPi / 2),
      segment(2.0, -0.5, 0.0, -0.5),
      semicircle(0.0, -0.25, 0.25, -kPi / 2, -3 * kPi / 2),
  }};
  return pieces;
}

std::vector<std::array<double, 2>> folded_samples(int n) {
  if (n < 3) throw InvalidCount("folded curve needs at least 3 points");
  const double total = folded_curve_length();
  std::vector<std::array<double, 2>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double s = k * total / n;
    for (const Piece& p : folded_pieces()) {
      if (s <= p.length()) {
        out.push_back(p.at(s));
        break;
      }
      s -= p.length();
    }
  }
  return out;
}

}  // namespace

double folded_curve_length() {
  double total = 0.0;
  for (const Piece& p : folded_pieces()) total += p.length();
  return total;
}

Shape gen_folded_curve_planar(int n) {
  const auto xz = folded_samples(n);
  Mat pts(2, n);
  for (int k = 0; k < n; ++k) {
    pts(0, k) = xz[static_cast<std::size_t>(k)][0];
    pts(1, k) = xz[static_cast<std::size_t>(k)][1];
  }
  return {PointCloud(std::move(pts)), true, {}};
}

Shape gen_folded_curve(int n) {
  const auto xz = folded_samples(n);
  Mat pts(3, n);
  for (int k = 0; k < n; ++k) {
    pts(0, k) = xz[static_cast<std::size_t>(k)][0];
    pts(1, k) = 0.0;
    pts(2, k) = xz[static_cast<std::size_t>(k)][1];
  }
  return {PointCloud(std::move(pts)), true, {}};
}

Shape gen_extruded_surface(int n_curve, int n_y) {
  if (n_y < 1) throw InvalidCount("surface needs at least one copy of the curve");
  const auto xz = folded_samples(n_curve);
  Mat pts(3, static_cast<Eigen::Index>(n_curve) * n_y);
  Eigen::Index col = 0;
  for (int j = 0; j < n_y; ++j) {
    // exact zero on the middle copy when n_y is odd
    const double y = n_y == 1 ? 0.0 : 0.5 * (2.0 * j - (n_y - 1)) / (n_y - 1);
    for (int k = 0; k < n_curve; ++k, ++col) {
      pts(0, col) = xz[static_cast<std::size_t>(k)][0];
      pts(1, col) = y;
      pts(2, col) = xz[static_cast<std::size_t>(k)][1];
    }
  }
  return {PointCloud(std::move(pts)), false, {}};
}

Shape add_noise(const Shape& shape, const NoiseSpec& spec) {
  if (!(spec.percent >= 0.0)) throw InvalidSpec("noise percent must be nonnegative");
  if (spec.percent == 0.0) return shape;
  const double bound = spec.percent * max_consecutive_gap(shape);
  const PointCloud& c = shape.cloud;
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Mat pts = c.points();
  Vec dir(c.dim());
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    do {
      for (Eigen::Index i = 0; i < dir.size(); ++i) dir(i) = gauss(rng);
    } while (dir.norm() == 0.0);
    dir.normalize();
    pts.col(k) += (bound * unit(rng)) * dir;
  }
  return {PointCloud(std::move(pts)), shape.closed, shape.mask};
}

}  // namespace cloudsig
